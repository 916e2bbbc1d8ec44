#include "rotorlin/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotorlin/errors.hpp"

namespace rotorlin {

double RotorDisc::area() const { return std::numbers::pi * radius * radius; }

RotorDisc main_rotor_disc(const VehicleParams& p) {
    RotorDisc d;
    d.radius = p.mr_radius;
    d.omega = p.mr_omega_nom;
    d.solidity = p.mr_solidity();
    d.lift_slope = p.mr_lift_slope;
    d.cd0 = p.mr_cd0;
    d.rho = p.rho;
    d.eta_w = p.eta_w;
    return d;
}

RotorDisc tail_rotor_disc(const VehicleParams& p) {
    RotorDisc d;
    d.radius = p.tr_radius;
    d.omega = p.tr_omega();
    d.solidity = p.tr_solidity();
    d.lift_slope = p.tr_lift_slope;
    d.cd0 = p.tr_cd0;
    d.rho = p.rho;
    d.eta_w = p.eta_w;
    d.blockage = p.fin_blockage();
    return d;
}

double thrust_coefficient(double lambda0, double mu, double mu_z, double collective,
                          const RotorDisc& d) {
    return 0.5 * d.lift_slope * d.solidity *
           (0.5 * (mu_z - lambda0) + (1.0 / 3.0 + 0.5 * mu * mu) * collective);
}

double inflow_residual(double lambda0, double mu, double mu_z, double collective,
                       const RotorDisc& d) {
    const double ct = thrust_coefficient(lambda0, mu, mu_z, collective, d);
    const double s = std::hypot(mu, lambda0 - mu_z);
    if (s == 0.0) return ct == 0.0 ? 0.0 : std::copysign(HUGE_VAL, -ct);
    return lambda0 - ct / (2.0 * d.eta_w * s);
}

namespace {

double residual_slope(double lambda0, double mu, double mu_z, double collective,
                      const RotorDisc& d) {
    const double ct = thrust_coefficient(lambda0, mu, mu_z, collective, d);
    const double dct = -0.25 * d.lift_slope * d.solidity;
    const double s = std::hypot(mu, lambda0 - mu_z);
    const double ds = (lambda0 - mu_z) / s;
    return 1.0 - (dct * s - ct * ds) / (2.0 * d.eta_w * s * s);
}

}  // namespace

RotorSolution solve_rotor_inflow(const AirVelocity& air, double collective, const RotorDisc& d,
                                 const InflowOptions& opt) {
    if (!(d.omega > 0)) throw InvalidParameter("omega", d.omega, "> 0");
    RotorSolution sol;
    sol.air = air;
    sol.blockage = d.blockage;
    const double tip = d.tip_speed();
    const double mu = std::hypot(air.u, air.v) / tip;
    const double mu_z = air.w / tip;
    sol.mu = mu;
    sol.mu_z = mu_z;

    auto F = [&](double l) { return inflow_residual(l, mu, mu_z, collective, d); };

    double lam;
    int it = 0;
    double res;
    if (mu == 0.0 && thrust_coefficient(mu_z, mu, mu_z, collective, d) == 0.0) {
        lam = mu_z;  // zero-thrust point, numerator vanishes
        res = 0.0;
    } else {
        // hover-like start from the closed form
        const double ct0 = thrust_coefficient(mu_z, mu, mu_z, collective, d);
        lam = mu_z + std::copysign(std::sqrt(std::abs(ct0) / (2.0 * d.eta_w)), ct0);
        if (mu > 0) lam = mu_z + ct0 / (2.0 * d.eta_w * std::hypot(mu, lam - mu_z));
        res = F(lam);
        bool newton = false;
        double last_step = 0.0;
        while (std::abs(res) > opt.tolerance && it < opt.max_iterations) {
            ++it;
            double step;
            if (newton) {
                const double slope = residual_slope(lam, mu, mu_z, collective, d);
                step = -res / slope;
                if (!std::isfinite(step)) step = -opt.relaxation * res;
            } else {
                // res = lam - g(lam), so the damped update is -relaxation * res
                step = -opt.relaxation * res;
                if (last_step != 0.0 && step * last_step < 0.0) newton = true;
            }
            double trial = lam + step;
            double trial_res = F(trial);
            for (int k = 0; k < 30 && !(std::abs(trial_res) < std::abs(res)); ++k) {
                step *= 0.5;
                trial = lam + step;
                trial_res = F(trial);
            }
            if (!(std::abs(trial_res) < std::abs(res))) break;  // no further progress possible
            // slow linear contraction also hands over to Newton
            if (!newton && std::abs(trial_res) > 0.5 * std::abs(res)) newton = true;
            last_step = step;
            lam = trial;
            res = trial_res;
        }
        // Accept round-off-limited convergence.
        if (!(std::abs(res) <= std::max(opt.tolerance, 1e-12)))
            throw InflowDiverged(mu, mu_z, std::abs(res));
    }

    sol.lambda0 = lam;
    sol.iterations = it;
    sol.residual = std::abs(res);
    sol.ct = thrust_coefficient(lam, mu, mu_z, collective, d);
    sol.induced_velocity = lam * tip;
    sol.thrust = d.blockage * d.rho * tip * tip * d.area() * sol.ct;
    rotor_torque(sol, d);
    return sol;
}

double rotor_torque(RotorSolution& sol, const RotorDisc& d) {
    const double tip = d.tip_speed();
    sol.cq = d.solidity / 8.0 * (1.0 + 7.0 / 3.0 * sol.mu * sol.mu) * d.cd0 +
             (sol.lambda0 - sol.mu_z) * sol.ct;
    sol.torque = d.rho * tip * tip * d.area() * d.radius * sol.cq;
    return sol.torque;
}

double wake_factor(const RotorSolution& main_sol, const VehicleParams& p) {
    const double denom = main_sol.induced_velocity - main_sol.air.w;
    if (denom == 0.0) return 0.0;
    const double ratio = main_sol.air.u / denom;
    if (ratio < p.wake_ratio_lo() || ratio > p.wake_ratio_hi()) return 0.0;
    return std::clamp(1.5 * ratio - p.wake_ratio_lo(), 0.0, 1.5);
}

RotorSolution solve_tail_rotor(const AirVelocity& air, const RotorSolution& main_sol,
                               double pedal_collective, const VehicleParams& p,
                               const InflowOptions& opt) {
    const double k = wake_factor(main_sol, p);
    // Disc normal is the body y axis; thrust acts along -y.
    const AirVelocity disc{air.u, air.w - k * main_sol.induced_velocity, air.v};
    return solve_rotor_inflow(disc, pedal_collective, tail_rotor_disc(p), opt);
}

FlappingState flapping_steady(const AirVelocity& air, double p, double q, double d_lat,
                              double d_long, const VehicleParams& params) {
    const double tip = params.mr_tip_speed();
    const double tau = params.mr_tau_c;
    FlappingState f;
    f.a1s = params.mr_da1s_dmu * air.u / tip + params.mr_da1s_dmuz * air.w / tip - tau * q +
            params.mr_a_dlong * d_long;
    f.b1s = -params.mr_db1s_dmuv * air.v / tip - tau * p + params.mr_b_dlat * d_lat;
    return f;
}

FlappingRates flapping_rates(const FlappingState& flap, const AirVelocity& air, double p,
                             double q, double d_lat, double d_long, const VehicleParams& params) {
    const FlappingState ss = flapping_steady(air, p, q, d_lat, d_long, params);
    return {(ss.a1s - flap.a1s) / params.mr_tau_c, (ss.b1s - flap.b1s) / params.mr_tau_c};
}

}  // namespace rotorlin
