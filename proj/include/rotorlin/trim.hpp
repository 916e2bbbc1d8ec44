#pragma once

#include <string>
#include <vector>

#include "rotorlin/rotor.hpp"
#include "rotorlin/state.hpp"
#include "rotorlin/vehicle_params.hpp"

namespace rotorlin {

struct FlightCondition {
    double u = 0, v = 0, w = 0;
    bool hover() const { return u == 0 && v == 0 && w == 0; }
    std::string label() const;
};

struct TrimPoint {
    FlightState state;  // a1s/b1s hold the steady flapping
    ControlInput controls;
    RotorSolution main_sol, tail_sol;
    double residual_norm = 0;  // 2-norm of (u', v', w', p', q', r')
    FlightCondition condition;
    std::vector<double> residual_history;
};

struct TrimOptions {
    double tolerance = 1e-8;
    double target = 1e-12;  // keep iterating below tolerance while progress is made
    int max_iterations = 50;
    int stagnation_window = 10;
    double mu_limit = 0.15;
};

TrimPoint trim_hover(const VehicleParams& p, const TrimOptions& opt = {});
TrimPoint trim_forward(const VehicleParams& p, const FlightCondition& velocity,
                       const TrimOptions& opt = {});

/// Closed-form starting controls: momentum-theory collective and yaw-balance pedal.
ControlInput trim_initial_guess(const VehicleParams& p);

}  // namespace rotorlin
