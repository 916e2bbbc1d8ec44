#pragma once

#include "rotorlin/vehicle_params.hpp"

namespace rotorlin {

/// Air-relative body velocity at a rotor hub, m/s.
struct AirVelocity {
    double u = 0, v = 0, w = 0;
};

/// Disc properties needed by the momentum/blade-element solve.
struct RotorDisc {
    double radius = 0;
    double omega = 0;
    double solidity = 0;
    double lift_slope = 0;
    double cd0 = 0;
    double rho = 0;
    double eta_w = 1;
    double blockage = 1;  // thrust multiplier (tail fin shadow)

    double tip_speed() const { return omega * radius; }
    double area() const;
};

RotorDisc main_rotor_disc(const VehicleParams& p);
RotorDisc tail_rotor_disc(const VehicleParams& p);

struct RotorSolution {
    double thrust = 0;  // N, includes blockage
    double torque = 0;  // N m
    double ct = 0, cq = 0;
    double induced_velocity = 0;  // m/s
    double lambda0 = 0, mu = 0, mu_z = 0;
    int iterations = 0;
    double residual = 0;
    double blockage = 1;
    AirVelocity air;  // in rotor axes: (in-plane, in-plane, axial)
};

struct InflowOptions {
    int max_iterations = 100;
    double tolerance = 1e-14;
    double relaxation = 0.5;
};

/// Thrust coefficient from blade-element theory at given inflow.
double thrust_coefficient(double lambda0, double mu, double mu_z, double collective,
                          const RotorDisc& d);

/// Momentum-theory inflow residual lambda0 - C_T / (2 eta sqrt(mu^2 + (lambda0 - mu_z)^2)).
double inflow_residual(double lambda0, double mu, double mu_z, double collective,
                       const RotorDisc& d);

/// Solves the coupled thrust/inflow relations. Air is given in rotor axes where
/// (u, v) lie in the disc plane and w is along the thrust-opposite axis.
RotorSolution solve_rotor_inflow(const AirVelocity& air, double collective, const RotorDisc& d,
                                 const InflowOptions& opt = {});

/// Fills cq and torque of a converged solution.
double rotor_torque(RotorSolution& sol, const RotorDisc& d);

/// Wake factor applied to the main-rotor downwash at the tail.
double wake_factor(const RotorSolution& main_sol, const VehicleParams& p);

/// Tail rotor; air is the body-axis velocity at the tail hub.
RotorSolution solve_tail_rotor(const AirVelocity& air, const RotorSolution& main_sol,
                               double pedal_collective, const VehicleParams& p,
                               const InflowOptions& opt = {});

struct FlappingState {
    double a1s = 0, b1s = 0;
};

struct FlappingRates {
    double a1s_dot = 0, b1s_dot = 0;
};

FlappingRates flapping_rates(const FlappingState& flap, const AirVelocity& air, double p,
                             double q, double d_lat, double d_long, const VehicleParams& params);

FlappingState flapping_steady(const AirVelocity& air, double p, double q, double d_lat,
                              double d_long, const VehicleParams& params);

}  // namespace rotorlin
