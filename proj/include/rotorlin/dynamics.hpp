#pragma once

#include <Eigen/Dense>

#include "rotorlin/airframe.hpp"
#include "rotorlin/state.hpp"
#include "rotorlin/vehicle_params.hpp"

namespace rotorlin {

/// Accelerations from body forces/moments (gravity already included in fm).
FlightState rigid_body_rates(const FlightState& s, const ForceMoment& fm, const VehicleParams& p);

/// Euler-angle rates; throws KinematicSingularity when |theta| >= pi/2.
void euler_kinematics(const FlightState& s, double& phi_dot, double& theta_dot, double& psi_dot);

/// Full nonlinear state derivative. For the quasi-steady variant the a1s/b1s
/// components of the result are zero.
FlightState state_derivative(const FlightState& s, const ControlInput& c, const VehicleParams& p,
                             const ForceOptions& opt = {});

Eigen::VectorXd state_derivative(const Eigen::VectorXd& x, const Eigen::Vector4d& u,
                                 const VehicleParams& p, ModelVariant variant);

}  // namespace rotorlin
