#include "rotorlin/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "rotorlin/errors.hpp"

namespace rotorlin {

FlightState rigid_body_rates(const FlightState& s, const ForceMoment& fm, const VehicleParams& p) {
    FlightState d;
    d.u = fm.X / p.m + s.r * s.v - s.q * s.w;
    d.v = fm.Y / p.m - s.r * s.u + s.p * s.w;
    d.w = fm.Z / p.m + s.q * s.u - s.p * s.v;
    d.p = (fm.L + (p.Iyy - p.Izz) * s.q * s.r) / p.Ixx;
    d.q = (fm.M + (p.Izz - p.Ixx) * s.p * s.r) / p.Iyy;
    d.r = (fm.N + (p.Ixx - p.Iyy) * s.p * s.q) / p.Izz;
    return d;
}

void euler_kinematics(const FlightState& s, double& phi_dot, double& theta_dot, double& psi_dot) {
    if (!(std::abs(s.theta) < std::numbers::pi / 2)) throw KinematicSingularity(s.theta);
    const double sphi = std::sin(s.phi), cphi = std::cos(s.phi);
    const double cth = std::cos(s.theta), tth = std::tan(s.theta);
    const double a = s.q * sphi + s.r * cphi;
    phi_dot = s.p + a * tth;
    theta_dot = s.q * cphi - s.r * sphi;
    psi_dot = a / cth;
}

FlightState state_derivative(const FlightState& s, const ControlInput& c, const VehicleParams& p,
                             const ForceOptions& opt) {
    FlightState d;
    double phi_dot, theta_dot, psi_dot;
    euler_kinematics(s, phi_dot, theta_dot, psi_dot);
    const ForceBreakdown b = evaluate_forces(s, c, p, opt);
    d = rigid_body_rates(s, b.total, p);
    d.phi = phi_dot;
    d.theta = theta_dot;
    d.psi = psi_dot;
    if (opt.variant == ModelVariant::Augmented) {
        const FlappingRates fr = flapping_rates(b.flap, {s.u, s.v, s.w}, s.p, s.q, c.d_lat,
                                                c.d_long, p);
        d.a1s = fr.a1s_dot;
        d.b1s = fr.b1s_dot;
    }
    return d;
}

Eigen::VectorXd state_derivative(const Eigen::VectorXd& x, const Eigen::Vector4d& u,
                                 const VehicleParams& p, ModelVariant variant) {
    ForceOptions opt;
    opt.variant = variant;
    return to_vector(state_derivative(from_vector(x), controls_from_vector(u), p, opt), variant);
}

}  // namespace rotorlin
