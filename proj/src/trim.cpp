#include "rotorlin/trim.hpp"

#include <cmath>
#include <cstdio>

#include "rotorlin/airframe.hpp"
#include "rotorlin/dynamics.hpp"
#include "rotorlin/errors.hpp"
#include "rotorlin/finite_difference.hpp"

namespace rotorlin {

std::string FlightCondition::label() const {
    if (hover()) return "hover";
    char buf[96];
    std::snprintf(buf, sizeof buf, "forward(%.6g, %.6g, %.6g)", u, v, w);
    return buf;
}

namespace {

FlightState state_at(const FlightCondition& c, const Eigen::VectorXd& z) {
    FlightState s;
    s.u = c.u;
    s.v = c.v;
    s.w = c.w;
    s.phi = z[4];
    s.theta = z[5];
    return s;
}

ControlInput controls_at(const Eigen::VectorXd& z) { return {z[0], z[1], z[2], z[3]}; }

Eigen::VectorXd residual(const VehicleParams& p, const FlightCondition& c, const Eigen::VectorXd& z) {
    const FlightState d = state_derivative(state_at(c, z), controls_at(z), p);
    Eigen::VectorXd r(6);
    r << d.u, d.v, d.w, d.p, d.q, d.r;
    return r;
}

double collective_for(double ct, const RotorDisc& d) {
    const double lam = std::sqrt(std::abs(ct) / (2.0 * d.eta_w));
    return 3.0 * (2.0 * ct / (d.lift_slope * d.solidity) + lam / 2.0);
}

}  // namespace

ControlInput trim_initial_guess(const VehicleParams& p) {
    const RotorDisc mr = main_rotor_disc(p);
    const double tip = mr.tip_speed();
    const double ct = p.m * p.g / (p.rho * tip * tip * mr.area());
    const double lam = std::sqrt(ct / (2.0 * p.eta_w));
    const double cq = mr.solidity / 8.0 * mr.cd0 + lam * ct;
    const double torque = p.rho * tip * tip * mr.area() * mr.radius * cq;

    const RotorDisc tr = tail_rotor_disc(p);
    const double tr_tip = tr.tip_speed();
    const double tr_ct = torque / p.l_tr / (tr.blockage * p.rho * tr_tip * tr_tip * tr.area());
    return {collective_for(ct, mr), collective_for(tr_ct, tr), 0.0, 0.0};
}

TrimPoint trim_forward(const VehicleParams& p, const FlightCondition& cond, const TrimOptions& opt) {
    const double mu = std::hypot(cond.u, cond.v) / p.mr_tip_speed();
    if (mu > opt.mu_limit) throw MuOutOfRange(mu, opt.mu_limit);

    const ControlInput g0 = trim_initial_guess(p);
    Eigen::VectorXd z(6);
    z << g0.d_coll, g0.d_ped, g0.d_lat, g0.d_long, 0.0, 0.0;

    const VectorFn F = [&](const Eigen::VectorXd& zz) { return residual(p, cond, zz); };
    StepPolicy policy{0.0, 1e-5};
    const std::vector<std::string> names = {"d_coll", "d_ped", "d_lat", "d_long", "phi", "theta"};

    std::vector<double> history;
    Eigen::VectorXd r = F(z);
    double norm = r.norm();
    history.push_back(norm);
    double best = norm;
    int since_best = 0;

    for (int it = 0; it < opt.max_iterations && norm > opt.target; ++it) {
        const Eigen::MatrixXd J = jacobian(F, z, policy, names, nullptr, false);
        const Eigen::VectorXd dz = J.fullPivLu().solve(-r);
        if (!dz.allFinite()) break;
        double step = 1.0;
        Eigen::VectorXd z_new;
        Eigen::VectorXd r_new;
        double n_new = norm;
        for (int k = 0; k < 20; ++k) {
            z_new = z + step * dz;
            try {
                r_new = F(z_new);
                n_new = r_new.norm();
            } catch (const InflowDiverged&) {
                n_new = HUGE_VAL;
            }
            if (n_new < norm) break;
            step *= 0.5;
        }
        if (!(n_new < norm)) break;  // round-off floor or a bad direction
        z = z_new;
        r = r_new;
        norm = n_new;
        history.push_back(norm);
        if (norm < best) {
            best = norm;
            since_best = 0;
        } else if (++since_best >= opt.stagnation_window) {
            break;
        }
    }
    if (!(norm <= opt.tolerance)) throw TrimNotConverged(history);

    TrimPoint t;
    t.condition = cond;
    t.state = state_at(cond, z);
    t.controls = controls_at(z);
    const ForceBreakdown b = evaluate_forces(t.state, t.controls, p);
    t.main_sol = b.main_sol;
    t.tail_sol = b.tail_sol;
    t.state.a1s = b.flap.a1s;
    t.state.b1s = b.flap.b1s;
    t.residual_norm = norm;
    t.residual_history = std::move(history);
    return t;
}

TrimPoint trim_hover(const VehicleParams& p, const TrimOptions& opt) {
    return trim_forward(p, FlightCondition{}, opt);
}

}  // namespace rotorlin
