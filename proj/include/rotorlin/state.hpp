#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace rotorlin {

/// Body velocities (m/s), rates (rad/s), Euler angles and flapping (rad).
struct FlightState {
    double u = 0, v = 0, w = 0;
    double p = 0, q = 0, r = 0;
    double phi = 0, theta = 0, psi = 0;
    double a1s = 0, b1s = 0;

    bool operator==(const FlightState&) const = default;
};

/// Blade-pitch commands, rad.
struct ControlInput {
    double d_coll = 0, d_ped = 0, d_lat = 0, d_long = 0;

    bool operator==(const ControlInput&) const = default;
};

struct ForceMoment {
    double X = 0, Y = 0, Z = 0;
    double L = 0, M = 0, N = 0;

    ForceMoment& operator+=(const ForceMoment& o) {
        X += o.X; Y += o.Y; Z += o.Z;
        L += o.L; M += o.M; N += o.N;
        return *this;
    }
    friend ForceMoment operator+(ForceMoment a, const ForceMoment& b) { return a += b; }
    Eigen::Matrix<double, 6, 1> vec() const { return {X, Y, Z, L, M, N}; }
};

enum class ModelVariant {
    QuasiSteady,  // 9 states, flapping solved algebraically
    Augmented,    // 11 states, flapping integrated
};

inline int state_count(ModelVariant v) { return v == ModelVariant::Augmented ? 11 : 9; }

/// State order: u v w p q r phi theta psi [a1s b1s].
const std::vector<std::string>& state_labels(ModelVariant v);
const std::vector<std::string>& state_units(ModelVariant v);
/// Input order: d_coll d_ped d_lat d_long.
const std::vector<std::string>& input_labels();
int state_index(const std::string& label);  // throws LabelError
int input_index(const std::string& label);  // throws LabelError

Eigen::VectorXd to_vector(const FlightState& s, ModelVariant v);
FlightState from_vector(const Eigen::VectorXd& x);
Eigen::Vector4d to_vector(const ControlInput& c);
ControlInput controls_from_vector(const Eigen::Vector4d& u);

}  // namespace rotorlin
