// Acceptance criteria 1-10. One PASS/FAIL line per criterion, details indented below.
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "rotorlin/dynamics.hpp"
#include "rotorlin/linearize.hpp"
#include "rotorlin/modal.hpp"
#include "rotorlin/reference.hpp"
#include "rotorlin/simulate.hpp"
#include "rotorlin/trim.hpp"

using namespace rotorlin;

namespace {

constexpr double kDeg = 180.0 / std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Outcome::check(bool ok, const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + buf);
    pass = pass && ok;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Shared fixtures, computed once.
struct Fixture {
    VehicleParams p;
    TrimPoint hover, fwd;
    LinearModel lin_hover, lin_fwd;
    DecoupledModel hover_bordered, fwd_qs;

    Fixture() {
        p = complete_parameters(xcell60_defaults(), HoverTargets{});
        hover = trim_hover(p);
        fwd = trim_forward(p, {reference::kForwardU, reference::kForwardV, reference::kForwardW});
        lin_hover = assemble_linear_model(hover, p, ModelVariant::Augmented);
        lin_fwd = assemble_linear_model(fwd, p, ModelVariant::Augmented);
        hover_bordered = decouple(lin_hover, DecoupleLayout::Bordered);
        fwd_qs = decouple(lin_fwd, DecoupleLayout::QuasiStatic);
    }
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const VehicleParams p = complete_parameters(xcell60_defaults(), HoverTargets{});
    const TrimPoint t = trim_hover(p);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double th0 = t.controls.d_coll * kDeg;
    o.check(rel(t.main_sol.thrust, 81.616) <= 0.02, "T_MR %.4f N vs 81.616 (%.2f%%, tol 2%%)",
            t.main_sol.thrust, 100 * rel(t.main_sol.thrust, 81.616));
    o.check(std::abs(th0 - 6.001) <= 0.1, "theta0_MR %.4f deg vs 6.001 (tol 0.1 deg)", th0);
    o.check(rel(t.main_sol.induced_velocity, 4.582) <= 0.02, "w_iMR %.4f m/s vs 4.582 (%.2f%%, tol 2%%)",
            t.main_sol.induced_velocity, 100 * rel(t.main_sol.induced_velocity, 4.582));
    o.check(rel(t.main_sol.torque, 6.247) <= 0.02, "Q_MR %.4f N m vs 6.247 (%.2f%%, tol 2%%)",
            t.main_sol.torque, 100 * rel(t.main_sol.torque, 6.247));
    o.check(rel(t.tail_sol.thrust, 6.8656) <= 0.03, "T_TR %.4f N vs 6.8656 (%.2f%%, tol 3%%)",
            t.tail_sol.thrust, 100 * rel(t.tail_sol.thrust, 6.8656));
    o.check(secs < 1.0, "completion + trim runtime %.4f s (limit 1 s)", secs);
    return o;
}

Outcome criterion2() {
    Outcome o;
    const TrimPoint& t = fx().hover;
    const double err = std::abs(t.tail_sol.thrust * fx().p.l_tr - t.main_sol.torque) / t.main_sol.torque;
    o.check(err < 0.005, "|T_TR l_TR - Q_MR| / Q_MR = %.3e (limit 5e-3)", err);
    return o;
}

Outcome criterion3() {
    Outcome o;
    const TrimPoint& t = fx().hover;
    o.check(t.state.phi > 0, "phi sign positive (%.6f rad)", t.state.phi);
    o.check(t.state.theta < 0, "theta sign negative (%.6f rad)", t.state.theta);
    o.check(t.state.a1s > 0, "a1s sign positive (%.6f rad)", t.state.a1s);
    o.check(t.state.b1s > 0, "b1s sign positive (%.6f rad)", t.state.b1s);
    const double phi = t.state.phi * kDeg, b1s = t.state.b1s * kDeg;
    o.check(std::abs(phi - 4.4486) <= 0.5, "phi %.4f deg vs 4.4486 (tol 0.5 deg)", phi);
    o.check(rel(b1s, 0.4290) <= 0.2, "b1s %.4f deg vs 0.4290 (%.1f%%, tol 20%%)", b1s,
            100 * rel(b1s, 0.4290));
    return o;
}

Outcome criterion4() {
    Outcome o;
    const TrimPoint& t = fx().fwd;
    auto item = [&](const char* name, double c, double pub) {
        o.check(rel(c, pub) <= 0.10, "%s %.5g vs %.5g (%.2f%%, tol 10%%)", name, c, pub, 100 * rel(c, pub));
    };
    item("T_MR", t.main_sol.thrust, 82.145);
    item("Q_MR", t.main_sol.torque, 4.660);
    item("theta0_MR", t.controls.d_coll, 0.0622);
    item("T_TR", t.tail_sol.thrust, 5.1032);
    item("w_iMR", t.main_sol.induced_velocity, 1.272);
    return o;
}

Outcome criterion5() {
    Outcome o;
    const SubModel& s = fx().hover_bordered.long_ver;
    auto scan = [&](const char* name, const Eigen::MatrixXd& c, const Eigen::MatrixXd& pub) {
        const int flap_row = static_cast<int>(pub.rows()) - 1;
        for (int i = 0; i < pub.rows(); ++i)
            for (int k = 0; k < pub.cols(); ++k) {
                const double v = pub(i, k), x = c(i, k);
                const std::string row = s.state_labels[i];
                const std::string col = name[0] == 'A' ? s.state_labels[k] : s.input_labels[k];
                if (std::abs(v) < 0.1) continue;
                if (std::abs(v + 9.8066) < 1e-9) {
                    o.check(std::abs(x - v) <= 1e-3, "%s(%s,%s) gravity %.6f vs %.4f (tol 1e-3)", name,
                            row.c_str(), col.c_str(), x, v);
                } else if (i == flap_row) {
                    o.check(rel(x, v) <= 0.01, "%s(%s,%s) flapping %.5f vs %.4f (%.3f%%, tol 1%%)", name,
                            row.c_str(), col.c_str(), x, v, 100 * rel(x, v));
                } else {
                    const bool sign = (x > 0) == (v > 0);
                    o.check(sign && rel(x, v) <= 0.10, "%s(%s,%s) %.5g vs %.5g (%.1f%%, sign %s, tol 10%%)",
                            name, row.c_str(), col.c_str(), x, v, 100 * rel(x, v), sign ? "ok" : "wrong");
                }
            }
    };
    scan("A", s.A, reference::hover_long_A());
    scan("B", s.B, reference::hover_long_B());
    return o;
}

Outcome criterion6() {
    Outcome o;
    const auto& d = fx().hover_bordered;
    const ModalReport lon = eigen_analysis(d.long_ver.A, d.long_ver.state_labels, &fx().p);
    const std::complex<double> ref(-15.8, 8.32);
    const Mode* sp = nullptr;
    for (const auto& m : lon.modes)
        if (m.eigenvalue.imag() > 0 && (!sp || m.frequency > sp->frequency)) sp = &m;
    if (!sp) {
        o.check(false, "no oscillatory longitudinal pair");
    } else {
        o.check(rel(sp->frequency, std::abs(ref)) <= 0.10,
                "short period %.4f %+.4fi, |lambda| %.4f vs %.4f (%.1f%%, tol 10%%)", sp->eigenvalue.real(),
                sp->eigenvalue.imag(), sp->frequency, std::abs(ref), 100 * rel(sp->frequency, std::abs(ref)));
        o.check(std::abs(sp->damping_ratio - 0.884) <= 0.05, "short period zeta %.4f vs 0.884 (tol 0.05)",
                sp->damping_ratio);
    }
    const ModalReport lat = eigen_analysis(d.lat_dir.A, d.lat_dir.state_labels, &fx().p);
    int positive = 0;
    std::string list;
    for (const auto& m : lat.modes) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s%.4g%+.4gi", list.empty() ? "" : ", ", m.eigenvalue.real(),
                      m.eigenvalue.imag());
        list += buf;
        if (m.eigenvalue.real() > 0 && m.eigenvalue.real() <= 0.15) ++positive;
    }
    o.check(positive == 2, "lateral eigenvalues with 0 < Re <= 0.15: %d (need 2) [%s]", positive,
            list.c_str());
    return o;
}

Outcome criterion7() {
    Outcome o;
    const auto& d = fx().fwd_qs;
    auto osc = [&](const SubModel& s, double target_w) -> const Mode* {
        static ModalReport keep[2];
        ModalReport& r = keep[&s == &d.long_ver ? 0 : 1];
        r = eigen_analysis(s.A, s.state_labels, &fx().p);
        const Mode* best = nullptr;
        for (const auto& m : r.modes)
            if (m.eigenvalue.imag() > 0 &&
                (!best || std::abs(m.frequency - target_w) < std::abs(best->frequency - target_w)))
                best = &m;
        return best;
    };
    if (const Mode* m = osc(d.long_ver, 0.388)) {
        o.check(std::abs(m->damping_ratio - 0.30) <= 0.10, "long pair %.4f %+.4fi zeta %.4f vs 0.30 (tol 0.10)",
                m->eigenvalue.real(), m->eigenvalue.imag(), m->damping_ratio);
        o.check(rel(m->frequency, 0.388) <= 0.20, "long pair omega %.4f vs 0.388 (%.1f%%, tol 20%%)",
                m->frequency, 100 * rel(m->frequency, 0.388));
    } else {
        o.check(false, "no oscillatory longitudinal pair");
    }
    if (const Mode* m = osc(d.lat_dir, 6.45)) {
        o.check(rel(m->frequency, 6.45) <= 0.15, "lat pair %.4f %+.4fi omega %.4f vs 6.45 (%.1f%%, tol 15%%)",
                m->eigenvalue.real(), m->eigenvalue.imag(), m->frequency, 100 * rel(m->frequency, 6.45));
        o.check(m->damping_ratio < 0.2, "lat pair zeta %.4f (limit < 0.2)", m->damping_ratio);
    } else {
        o.check(false, "no oscillatory lateral pair");
    }
    return o;
}

Outcome criterion8() {
    Outcome o;
    const Fixture& f = fx();
    SimOptions so;
    so.t_end = 2.0;
    so.dt = 1e-3;
    so.variant = ModelVariant::Augmented;
    const InputScript doublet = InputScript::doublet("d_long", 0.01, 0.5);
    const Trajectory nl = integrate(f.p, f.hover.state, f.hover.controls, doublet, so);
    const Trajectory ln = integrate(f.lin_hover, f.hover.state, doublet, so);
    o.check(nl.halt_reason.empty() && ln.halt_reason.empty(), "both runs complete 2 s (%s%s)",
            nl.halt_reason.c_str(), ln.halt_reason.c_str());
    const DivergenceReport rep = compare(nl, ln);
    for (const auto& s : rep.states) {
        if (s.reference_peak < 1e-9) {
            o.notes.push_back("skip " + s.label + " unexcited");
            continue;
        }
        o.check(s.rms < 0.1 * s.reference_peak, "%-5s rms %.3e vs 10%% of peak %.3e (ratio %.4f)",
                s.label.c_str(), s.rms, s.reference_peak, s.rms / s.reference_peak);
    }
    return o;
}

Outcome criterion9() {
    Outcome o;
    const Fixture& f = fx();

    // inflow sweep
    const RotorDisc disc = main_rotor_disc(f.p);
    const double tip = disc.tip_speed();
    double worst_res = 0;
    int worst_it = 0, n = 0;
    for (int i = 0; i <= 30; ++i)
        for (int k = 0; k <= 20; ++k) {
            const double mu = 0.15 * i / 30.0, muz = -0.05 + 0.1 * k / 20.0;
            const RotorSolution s = solve_rotor_inflow({mu * tip, 0, muz * tip}, f.hover.controls.d_coll, disc);
            worst_res = std::max(worst_res, std::abs(inflow_residual(s.lambda0, s.mu, s.mu_z,
                                                                     f.hover.controls.d_coll, disc)));
            worst_it = std::max(worst_it, s.iterations);
            ++n;
        }
    o.check(worst_res < 1e-10 && worst_it < 50, "inflow sweep %d points: max residual %.2e, max iterations %d",
            n, worst_res, worst_it);

    // step halving
    for (const LinearModel* m : {&f.lin_hover, &f.lin_fwd}) {
        double worst = 0;
        auto scan = [&](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                for (Eigen::Index k = 0; k < a.cols(); ++k)
                    if (std::abs(a(i, k)) > 1e-6) worst = std::max(worst, std::abs(a(i, k) - b(i, k)) / std::abs(a(i, k)));
        };
        scan(m->A, m->A_half_step);
        scan(m->B, m->B_half_step);
        o.check(worst < 1e-3, "%s A/B step-halving max relative change %.2e (limit 1e-3)",
                m->trim.condition.label().c_str(), worst);
    }

    // kinematic rows
    for (const TrimPoint* t : {&f.hover, &f.fwd}) {
        Eigen::MatrixXd A, B;
        numeric_jacobians(*t, f.p, ModelVariant::QuasiSteady, A, B);
        const Eigen::Matrix<double, 3, 9> K = kinematic_partials(t->state);
        const double err = (A.block(6, 0, 3, 9) - K).cwiseAbs().maxCoeff();
        o.check(err < 1e-8, "%s kinematic rows analytic vs numeric max |diff| %.2e (limit 1e-8)",
                t->condition.label().c_str(), err);
    }

    // eigen residuals
    double worst_eig = 0;
    for (const LinearModel* m : {&f.lin_hover, &f.lin_fwd})
        for (DecoupleLayout L : {DecoupleLayout::Bordered, DecoupleLayout::QuasiStatic, DecoupleLayout::Augmented}) {
            const DecoupledModel d = decouple(*m, L);
            for (const Eigen::MatrixXd* A : {&d.long_ver.A, &d.lat_dir.A, &m->A}) {
                const ModalReport r = eigen_analysis(*A);
                for (const auto& md : r.modes) {
                    const Eigen::VectorXcd res = A->cast<std::complex<double>>() * md.eigenvector -
                                                 md.eigenvalue * md.eigenvector;
                    worst_eig = std::max(worst_eig, res.norm() / md.eigenvector.norm());
                }
            }
        }
    o.check(worst_eig < 1e-9, "eigen residual max ||Av - lv||/||v|| %.2e (limit 1e-9)", worst_eig);

    // RK4 order from a perturbed hover state, no inputs
    FlightState x0 = f.hover.state;
    x0.u += 0.5;
    x0.v -= 0.3;
    x0.p += 0.2;
    x0.q -= 0.1;
    SimOptions so;
    so.t_end = 0.5;
    so.variant = ModelVariant::Augmented;
    auto final_state = [&](double dt) {
        so.dt = dt;
        const Trajectory t = integrate(f.p, x0, f.hover.controls, InputScript{}, so);
        return to_vector(t.states.back(), ModelVariant::Augmented);
    };
    const Eigen::VectorXd ref = final_state(0.5 / 1600);
    const double e1 = (final_state(0.5 / 50) - ref).norm();
    const double e2 = (final_state(0.5 / 100) - ref).norm();
    const double e3 = (final_state(0.5 / 200) - ref).norm();
    const double slope = std::log2(e1 / e3) / 2.0;
    o.check(std::abs(slope - 4.0) <= 0.3, "RK4 convergence slope %.3f (errors %.2e %.2e %.2e; need 4 +- 0.3)",
            slope, e1, e2, e3);
    return o;
}

Outcome criterion10() {
    Outcome o;
    const LinearModel& m = fx().lin_hover;
    const int a1s = m.index_of("a1s"), q = m.index_of("q");
    const int dlong = 3;
    const double gain = -m.B(a1s, dlong) / m.A(a1s, a1s);
    const double dq = -m.A(a1s, q) / m.A(a1s, a1s);
    o.check(std::abs(gain - 4.2) <= 1e-6, "steady a1s/d_long gain %.9f vs 4.2 (tol 1e-6)", gain);
    o.check(std::abs(dq + 0.1) <= 1e-6, "steady da1s/dq %.9f s vs -0.1 (tol 1e-6)", dq);
    // also straight from the steady flapping map
    const FlightState& s = m.trim.state;
    const VehicleParams& p = fx().p;
    const double h = 1e-4;
    auto a_at = [&](double qq, double dl) {
        return flapping_steady({s.u, s.v, s.w}, s.p, qq, m.trim.controls.d_lat, dl, p).a1s;
    };
    const double g2 = (a_at(s.q, m.trim.controls.d_long + h) - a_at(s.q, m.trim.controls.d_long - h)) / (2 * h);
    const double q2 = (a_at(s.q + h, m.trim.controls.d_long) - a_at(s.q - h, m.trim.controls.d_long)) / (2 * h);
    o.check(std::abs(g2 - 4.2) <= 1e-6, "flapping map d a1s/d d_long %.9f (tol 1e-6)", g2);
    o.check(std::abs(q2 + 0.1) <= 1e-6, "flapping map d a1s/dq %.9f (tol 1e-6)", q2);
    return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>>& criteria() {
    static const std::vector<std::pair<const char*, std::function<Outcome()>>> c = {
        {"hover trim magnitudes and runtime", criterion1},
        {"hover yaw balance", criterion2},
        {"hover attitudes and flapping", criterion3},
        {"forward-flight trim", criterion4},
        {"hover longitudinal A/B", criterion5},
        {"hover eigenvalues", criterion6},
        {"forward-flight eigenvalues", criterion7},
        {"linear vs nonlinear doublet", criterion8},
        {"numerical hygiene", criterion9},
        {"steady flapping gains", criterion10},
    };
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    bool verbose = true;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--criterion" && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else if (a == "--quiet")
            verbose = false;
        else {
            std::fprintf(stderr, "usage: acceptance [--criterion N] [--quiet]\n");
            return 2;
        }
    }
    if (only < 0 || only > static_cast<int>(criteria().size())) {
        std::fprintf(stderr, "criterion must be 1..%zu\n", criteria().size());
        return 2;
    }
    int failed = 0;
    for (std::size_t i = 0; i < criteria().size(); ++i) {
        if (only && static_cast<int>(i) + 1 != only) continue;
        Outcome o;
        try {
            o = criteria()[i].second();
        } catch (const std::exception& e) {
            o.check(false, "exception: %s", e.what());
        }
        std::printf("criterion %2zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria()[i].first);
        if (verbose)
            for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
        if (!o.pass) ++failed;
    }
    return failed ? 1 : 0;
}
