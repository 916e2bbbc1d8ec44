#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "rotorlin/linearize.hpp"
#include "rotorlin/state.hpp"
#include "rotorlin/vehicle_params.hpp"

namespace rotorlin {

/// Classical fourth-order Runge-Kutta step for x' = f(t, x).
template <class F, class Vec>
Vec rk4_step(F&& f, double t, const Vec& x, double dt) {
    const Vec k1 = f(t, x);
    const Vec k2 = f(t + 0.5 * dt, Vec(x + 0.5 * dt * k1));
    const Vec k3 = f(t + 0.5 * dt, Vec(x + 0.5 * dt * k2));
    const Vec k4 = f(t + dt, Vec(x + dt * k3));
    return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Control increments over the trim. Each line is `t channel value [ramp]`; a plain
/// entry holds value from t on, a ramp entry interpolates linearly from the previous
/// breakpoint of the same channel and reaches value at t.
class InputScript {
public:
    struct Event {
        double t = 0;
        int channel = 0;
        double value = 0;
        bool ramp = false;
    };

    static InputScript parse(const std::string& text);
    static InputScript doublet(const std::string& channel, double amplitude, double half_period,
                               double start = 0.0);

    void add(const Event& e);
    Eigen::Vector4d at(double t) const;
    const std::vector<Event>& events() const { return events_; }

private:
    std::vector<Event> events_;  // sorted by time, stable
};

struct Trajectory {
    std::vector<double> times;
    std::vector<FlightState> states;
    std::vector<ControlInput> controls;
    std::string model_tag;
    double dt = 0;
    std::string halt_reason;  // empty when the run completed
};

struct SimOptions {
    double t_end = 5.0;
    double dt = 1e-3;
    ModelVariant variant = ModelVariant::Augmented;
};

/// Nonlinear model from an absolute initial state. Inputs are applied as a
/// zero-order hold over each step.
Trajectory integrate(const VehicleParams& p, const FlightState& x0, const ControlInput& trim_controls,
                     const InputScript& script, const SimOptions& opt);

/// Linear model; integrates the perturbation about model.trim and reports absolute states.
Trajectory integrate(const LinearModel& model, const FlightState& x0, const InputScript& script,
                     const SimOptions& opt);

struct StateDivergence {
    std::string label;
    double rms = 0;
    double peak = 0;               // max |a - b|
    double reference_peak = 0;     // max |a - a(0)|
    std::optional<double> t_diverge;  // first t with |a - b| > 10% of reference_peak
};

struct DivergenceReport {
    std::vector<StateDivergence> states;
    double horizon = 0;
};

/// Throws GridError unless both trajectories share the time grid.
DivergenceReport compare(const Trajectory& a, const Trajectory& b);

std::string trajectory_csv(const Trajectory& t, const std::string& manifest_hash = {});
Trajectory parse_trajectory_csv(const std::string& text);

}  // namespace rotorlin
