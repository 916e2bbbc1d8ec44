#pragma once

#include "rotorlin/rotor.hpp"
#include "rotorlin/state.hpp"
#include "rotorlin/vehicle_params.hpp"

namespace rotorlin {

/// Selects contributors; used by tests to isolate terms.
struct ForceOptions {
    bool main_rotor = true;
    bool tail_rotor = true;
    bool airframe = true;  // fuselage and fins
    bool gravity = true;
    bool small_angle_flapping = false;  // sin(a) -> a, cos(a) -> 1
    ModelVariant variant = ModelVariant::QuasiSteady;
};

/// Everything evaluated on the way to the totals.
struct ForceBreakdown {
    ForceMoment total;
    ForceMoment main_rotor, tail_rotor, airframe, gravity;
    RotorSolution main_sol, tail_sol;
    FlappingState flap;
};

/// Velocity of the tail hub (and fins) in body axes; main-rotor wake not included.
AirVelocity tail_air_velocity(const FlightState& s, const VehicleParams& p);

ForceMoment main_rotor_forces(const RotorSolution& sol, const FlappingState& flap,
                              const VehicleParams& p, bool small_angle = false);
ForceMoment tail_rotor_forces(const RotorSolution& sol, const VehicleParams& p);

/// Fuselage drag along the relative wind plus vertical and horizontal fin plates.
ForceMoment fuselage_fin_forces(const FlightState& s, const RotorSolution& main_sol,
                                const VehicleParams& p);

ForceMoment gravity_forces(const FlightState& s, const VehicleParams& p);

ForceBreakdown evaluate_forces(const FlightState& s, const ControlInput& c,
                               const VehicleParams& p, const ForceOptions& opt = {});

ForceMoment total_forces_moments(const FlightState& s, const ControlInput& c,
                                 const VehicleParams& p, const ForceOptions& opt = {});

}  // namespace rotorlin
