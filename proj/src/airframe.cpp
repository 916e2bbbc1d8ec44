#include "rotorlin/airframe.hpp"

#include <cmath>

namespace rotorlin {

AirVelocity tail_air_velocity(const FlightState& s, const VehicleParams& p) {
    // omega x r with r = (-l_tr, 0, -h_tr)
    return {s.u - s.q * p.h_tr, s.v - s.r * p.l_tr + s.p * p.h_tr, s.w + s.q * p.l_tr};
}

ForceMoment main_rotor_forces(const RotorSolution& sol, const FlappingState& flap,
                              const VehicleParams& p, bool small_angle) {
    const double T = sol.thrust;
    const double sa = small_angle ? flap.a1s : std::sin(flap.a1s);
    const double sb = small_angle ? flap.b1s : std::sin(flap.b1s);
    const double ca = small_angle ? 1.0 : std::cos(flap.a1s);
    const double cb = small_angle ? 1.0 : std::cos(flap.b1s);
    ForceMoment f;
    f.X = -T * sa;
    f.Y = T * sb;
    f.Z = -T * ca * cb;
    f.L = p.mr_kbeta * flap.b1s + T * p.h_mr * sb;
    f.M = p.mr_kbeta * flap.a1s + T * p.h_mr * sa;
    f.N = -sol.torque;
    return f;
}

ForceMoment tail_rotor_forces(const RotorSolution& sol, const VehicleParams& p) {
    ForceMoment f;
    f.Y = -sol.thrust;
    f.L = -sol.thrust * p.h_tr;
    f.M = -sol.torque;
    f.N = sol.thrust * p.l_tr;
    return f;
}

ForceMoment fuselage_fin_forces(const FlightState& s, const RotorSolution& main_sol,
                                const VehicleParams& p) {
    const double q = 0.5 * p.rho;
    ForceMoment f;

    const double wr = s.w - main_sol.induced_velocity;
    const double V = std::sqrt(s.u * s.u + s.v * s.v + wr * wr);
    f.X = -q * p.s_fus_x * s.u * V;
    f.Y = -q * p.s_fus_y * s.v * V;
    f.Z = -q * p.s_fus_z * wr * V;

    const AirVelocity t = tail_air_velocity(s, p);
    const double Vt = std::sqrt(t.u * t.u + t.v * t.v + t.w * t.w);

    const double y_vf = -q * p.s_vf * t.v * Vt;
    f.Y += y_vf;
    f.L += p.h_tr * y_vf;
    f.N += -p.l_tr * y_vf;

    const double z_hf = -q * p.s_hf * t.w * Vt;
    f.Z += z_hf;
    f.M += p.l_tr * z_hf;
    return f;
}

ForceMoment gravity_forces(const FlightState& s, const VehicleParams& p) {
    const double mg = p.m * p.g;
    ForceMoment f;
    f.X = -mg * std::sin(s.theta);
    f.Y = mg * std::sin(s.phi) * std::cos(s.theta);
    f.Z = mg * std::cos(s.phi) * std::cos(s.theta);
    return f;
}

ForceBreakdown evaluate_forces(const FlightState& s, const ControlInput& c,
                               const VehicleParams& p, const ForceOptions& opt) {
    ForceBreakdown b;
    const AirVelocity cg{s.u, s.v, s.w};
    if (opt.variant == ModelVariant::Augmented)
        b.flap = {s.a1s, s.b1s};
    else
        b.flap = flapping_steady(cg, s.p, s.q, c.d_lat, c.d_long, p);

    if (opt.main_rotor || opt.tail_rotor || opt.airframe)
        b.main_sol = solve_rotor_inflow(cg, c.d_coll, main_rotor_disc(p));
    if (opt.main_rotor) b.main_rotor = main_rotor_forces(b.main_sol, b.flap, p, opt.small_angle_flapping);
    if (opt.tail_rotor) {
        b.tail_sol = solve_tail_rotor(tail_air_velocity(s, p), b.main_sol, c.d_ped, p);
        b.tail_rotor = tail_rotor_forces(b.tail_sol, p);
    }
    if (opt.airframe) b.airframe = fuselage_fin_forces(s, b.main_sol, p);
    if (opt.gravity) b.gravity = gravity_forces(s, p);
    b.total = b.main_rotor + b.tail_rotor + b.airframe + b.gravity;
    return b;
}

ForceMoment total_forces_moments(const FlightState& s, const ControlInput& c,
                                 const VehicleParams& p, const ForceOptions& opt) {
    return evaluate_forces(s, c, p, opt).total;
}

}  // namespace rotorlin
