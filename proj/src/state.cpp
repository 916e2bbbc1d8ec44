#include "rotorlin/state.hpp"

#include <algorithm>

#include "rotorlin/errors.hpp"

namespace rotorlin {

namespace {
const std::vector<std::string> kLabels11 = {"u", "v", "w", "p", "q", "r",
                                            "phi", "theta", "psi", "a1s", "b1s"};
const std::vector<std::string> kUnits11 = {"m/s", "m/s", "m/s", "rad/s", "rad/s", "rad/s",
                                           "rad", "rad", "rad", "rad", "rad"};
const std::vector<std::string> kLabels9(kLabels11.begin(), kLabels11.begin() + 9);
const std::vector<std::string> kUnits9(kUnits11.begin(), kUnits11.begin() + 9);
const std::vector<std::string> kInputs = {"d_coll", "d_ped", "d_lat", "d_long"};
}  // namespace

const std::vector<std::string>& state_labels(ModelVariant v) {
    return v == ModelVariant::Augmented ? kLabels11 : kLabels9;
}

const std::vector<std::string>& state_units(ModelVariant v) {
    return v == ModelVariant::Augmented ? kUnits11 : kUnits9;
}

const std::vector<std::string>& input_labels() { return kInputs; }

int state_index(const std::string& label) {
    auto it = std::find(kLabels11.begin(), kLabels11.end(), label);
    if (it == kLabels11.end()) throw LabelError(label);
    return static_cast<int>(it - kLabels11.begin());
}

int input_index(const std::string& label) {
    auto it = std::find(kInputs.begin(), kInputs.end(), label);
    if (it == kInputs.end()) throw LabelError(label);
    return static_cast<int>(it - kInputs.begin());
}

Eigen::VectorXd to_vector(const FlightState& s, ModelVariant v) {
    Eigen::VectorXd x(state_count(v));
    x.head<9>() << s.u, s.v, s.w, s.p, s.q, s.r, s.phi, s.theta, s.psi;
    if (v == ModelVariant::Augmented) x.tail<2>() << s.a1s, s.b1s;
    return x;
}

FlightState from_vector(const Eigen::VectorXd& x) {
    FlightState s;
    s.u = x[0]; s.v = x[1]; s.w = x[2];
    s.p = x[3]; s.q = x[4]; s.r = x[5];
    s.phi = x[6]; s.theta = x[7]; s.psi = x[8];
    if (x.size() >= 11) {
        s.a1s = x[9];
        s.b1s = x[10];
    }
    return s;
}

Eigen::Vector4d to_vector(const ControlInput& c) { return {c.d_coll, c.d_ped, c.d_lat, c.d_long}; }

ControlInput controls_from_vector(const Eigen::Vector4d& u) { return {u[0], u[1], u[2], u[3]}; }

}  // namespace rotorlin
