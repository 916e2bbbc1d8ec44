#include "rotorlin/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rotorlin/dynamics.hpp"
#include "rotorlin/errors.hpp"

namespace rotorlin {

namespace {

const char* kCsvStates[] = {"u", "v", "w", "p", "q", "r", "phi", "theta", "psi", "a1s", "b1s"};

double state_component(const FlightState& s, int i) {
    const double v[11] = {s.u, s.v, s.w, s.p, s.q, s.r, s.phi, s.theta, s.psi, s.a1s, s.b1s};
    return v[i];
}

FlightState with_steady_flap(FlightState s, const ControlInput& c, const VehicleParams& p) {
    const FlappingState f = flapping_steady({s.u, s.v, s.w}, s.p, s.q, c.d_lat, c.d_long, p);
    s.a1s = f.a1s;
    s.b1s = f.b1s;
    return s;
}

std::size_t step_count(const SimOptions& opt) {
    if (!(opt.dt > 0) || !(opt.t_end >= 0)) throw Error(ErrorKind::Input, "need dt > 0 and t_end >= 0");
    return static_cast<std::size_t>(std::llround(opt.t_end / opt.dt));
}

}  // namespace

InputScript InputScript::parse(const std::string& text) {
    InputScript s;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        Event e;
        std::string channel, flag;
        if (!(ls >> e.t)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw Error(ErrorKind::Input, "input script line " + std::to_string(lineno) + ": bad time");
        }
        if (!(ls >> channel >> e.value))
            throw Error(ErrorKind::Input, "input script line " + std::to_string(lineno) +
                                              ": expected `t channel value [ramp]`");
        e.channel = input_index(channel);
        if (ls >> flag) {
            if (flag != "ramp")
                throw Error(ErrorKind::Input, "input script line " + std::to_string(lineno) +
                                                  ": unknown flag '" + flag + "'");
            e.ramp = true;
        }
        s.add(e);
    }
    return s;
}

InputScript InputScript::doublet(const std::string& channel, double amplitude, double half_period,
                                 double start) {
    InputScript s;
    const int c = input_index(channel);
    s.add({start, c, amplitude, false});
    s.add({start + half_period, c, -amplitude, false});
    s.add({start + 2 * half_period, c, 0.0, false});
    return s;
}

void InputScript::add(const Event& e) {
    auto pos = std::upper_bound(events_.begin(), events_.end(), e.t,
                                [](double t, const Event& x) { return t < x.t; });
    events_.insert(pos, e);
}

Eigen::Vector4d InputScript::at(double t) const {
    Eigen::Vector4d u = Eigen::Vector4d::Zero();
    double last_t[4] = {0, 0, 0, 0};
    bool settled[4] = {false, false, false, false};
    for (const auto& e : events_) {
        const int c = e.channel;
        if (settled[c]) continue;
        if (e.t <= t) {
            u[c] = e.value;
            last_t[c] = e.t;
            continue;
        }
        if (e.ramp) {
            const double span = e.t - last_t[c];
            const double frac = span > 0 ? (t - last_t[c]) / span : 1.0;
            u[c] += std::clamp(frac, 0.0, 1.0) * (e.value - u[c]);
        }
        settled[c] = true;  // later breakpoints are not reached yet
    }
    return u;
}

Trajectory integrate(const VehicleParams& p, const FlightState& x0, const ControlInput& trim_controls,
                     const InputScript& script, const SimOptions& opt) {
    Trajectory tr;
    tr.model_tag = "nonlinear";
    tr.dt = opt.dt;
    const std::size_t n = step_count(opt);
    const Eigen::Vector4d u0 = to_vector(trim_controls);
    Eigen::VectorXd x = to_vector(x0, opt.variant);

    auto record = [&](double t, const Eigen::VectorXd& xv, const Eigen::Vector4d& u) {
        tr.times.push_back(t);
        const ControlInput c = controls_from_vector(u);
        FlightState s = from_vector(xv);
        if (opt.variant == ModelVariant::QuasiSteady) s = with_steady_flap(s, c, p);
        tr.states.push_back(s);
        tr.controls.push_back(c);
    };

    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * opt.dt;
        const Eigen::Vector4d u = u0 + script.at(t);
        record(t, x, u);
        if (k == n) break;
        try {
            auto f = [&](double, const Eigen::VectorXd& xx) {
                return state_derivative(xx, u, p, opt.variant);
            };
            Eigen::VectorXd xn = rk4_step(f, t, x, opt.dt);
            if (!xn.allFinite()) {
                tr.halt_reason = "non-finite state";
                break;
            }
            x = std::move(xn);
        } catch (const KinematicSingularity& e) {
            tr.halt_reason = e.what();
            break;
        } catch (const InflowDiverged& e) {
            tr.halt_reason = e.what();
            break;
        }
    }
    return tr;
}

Trajectory integrate(const LinearModel& model, const FlightState& x0, const InputScript& script,
                     const SimOptions& opt) {
    Trajectory tr;
    tr.model_tag = "linear(" + model.trim.condition.label() + ")";
    tr.dt = opt.dt;
    const std::size_t n = step_count(opt);
    const Eigen::VectorXd xt = to_vector(model.trim.state, model.variant);
    const Eigen::Vector4d ut = to_vector(model.trim.controls);
    Eigen::VectorXd dx = to_vector(x0, model.variant) - xt;

    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) * opt.dt;
        const Eigen::Vector4d du = script.at(t);
        tr.times.push_back(t);
        FlightState s = from_vector(Eigen::VectorXd(xt + dx));
        if (model.variant == ModelVariant::QuasiSteady) {
            s.a1s = model.trim.state.a1s;
            s.b1s = model.trim.state.b1s;
        }
        tr.states.push_back(s);
        tr.controls.push_back(controls_from_vector(ut + du));
        if (k == n) break;
        const Eigen::VectorXd bu = model.B * du;
        auto f = [&](double, const Eigen::VectorXd& d) -> Eigen::VectorXd { return model.A * d + bu; };
        dx = rk4_step(f, t, dx, opt.dt);
        if (!dx.allFinite()) {
            tr.halt_reason = "non-finite state";
            break;
        }
    }
    return tr;
}

DivergenceReport compare(const Trajectory& a, const Trajectory& b) {
    if (a.times.size() != b.times.size())
        throw GridError(std::to_string(a.times.size()) + " vs " + std::to_string(b.times.size()) +
                        " samples");
    for (std::size_t k = 0; k < a.times.size(); ++k)
        if (std::abs(a.times[k] - b.times[k]) > 1e-9 * std::max(1.0, std::abs(a.times[k])))
            throw GridError("sample " + std::to_string(k) + " at t=" + std::to_string(a.times[k]) +
                            " vs " + std::to_string(b.times[k]));
    DivergenceReport rep;
    rep.horizon = a.times.empty() ? 0.0 : a.times.back();
    for (int i = 0; i < 11; ++i) {
        StateDivergence d;
        d.label = kCsvStates[i];
        double sum = 0;
        const double a0 = a.states.empty() ? 0.0 : state_component(a.states[0], i);
        for (std::size_t k = 0; k < a.times.size(); ++k) {
            const double ai = state_component(a.states[k], i);
            const double diff = std::abs(ai - state_component(b.states[k], i));
            sum += diff * diff;
            d.peak = std::max(d.peak, diff);
            d.reference_peak = std::max(d.reference_peak, std::abs(ai - a0));
        }
        d.rms = a.times.empty() ? 0.0 : std::sqrt(sum / static_cast<double>(a.times.size()));
        for (std::size_t k = 0; k < a.times.size(); ++k) {
            const double diff = std::abs(state_component(a.states[k], i) - state_component(b.states[k], i));
            if (diff > 0.1 * d.reference_peak && diff > 0) {
                d.t_diverge = a.times[k];
                break;
            }
        }
        rep.states.push_back(d);
    }
    return rep;
}

std::string trajectory_csv(const Trajectory& t, const std::string& manifest_hash) {
    std::ostringstream out;
    if (!manifest_hash.empty()) out << "# manifest " << manifest_hash << "\n";
    out << "# model " << t.model_tag << "\n";
    if (!t.halt_reason.empty()) out << "# halted " << t.halt_reason << "\n";
    out << "t";
    for (const char* s : kCsvStates) out << "," << s;
    for (const auto& s : input_labels()) out << "," << s;
    out << "\n";
    char buf[40];
    for (std::size_t k = 0; k < t.times.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.10g", t.times[k]);
        out << buf;
        for (int i = 0; i < 11; ++i) {
            std::snprintf(buf, sizeof buf, ",%.17g", state_component(t.states[k], i));
            out << buf;
        }
        const Eigen::Vector4d u = to_vector(t.controls[k]);
        for (int i = 0; i < 4; ++i) {
            std::snprintf(buf, sizeof buf, ",%.17g", u[i]);
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

Trajectory parse_trajectory_csv(const std::string& text) {
    Trajectory t;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# model ", 0) == 0) t.model_tag = line.substr(8);
            if (line.rfind("# halted ", 0) == 0) t.halt_reason = line.substr(9);
            continue;
        }
        if (!header) {
            header = true;
            continue;
        }
        std::vector<double> v;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                v.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw Error(ErrorKind::Input, "bad CSV cell '" + cell + "'");
            }
        }
        if (v.size() != 16) throw Error(ErrorKind::Input, "trajectory CSV row needs 16 columns");
        t.times.push_back(v[0]);
        FlightState s;
        s.u = v[1]; s.v = v[2]; s.w = v[3];
        s.p = v[4]; s.q = v[5]; s.r = v[6];
        s.phi = v[7]; s.theta = v[8]; s.psi = v[9];
        s.a1s = v[10]; s.b1s = v[11];
        t.states.push_back(s);
        t.controls.push_back({v[12], v[13], v[14], v[15]});
    }
    if (t.times.size() >= 2) t.dt = t.times[1] - t.times[0];
    return t;
}

}  // namespace rotorlin
