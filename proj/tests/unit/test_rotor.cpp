#include <gtest/gtest.h>

#include <cmath>

#include "rotorlin/errors.hpp"
#include "rotorlin/rotor.hpp"
#include "rotorlin/trim.hpp"

using namespace rotorlin;

namespace {
const VehicleParams& params() {
    static const VehicleParams p = xcell60_defaults();
    return p;
}
}  // namespace

TEST(Rotor, HoverInflowMatchesClosedForm) {
    const RotorDisc d = main_rotor_disc(params());
    const double th = 0.105;
    const RotorSolution s = solve_rotor_inflow({}, th, d);
    // hover: lambda = CT / (2 eta lambda) with CT = a sigma / 2 (th/3 - lambda/2)
    const double k = 0.5 * d.lift_slope * d.solidity;
    // 2 eta lambda^2 + (k/2) lambda - k th / 3 = 0
    const double A = 2 * d.eta_w, B = k / 2, C = -k * th / 3;
    const double lam = (-B + std::sqrt(B * B - 4 * A * C)) / (2 * A);
    EXPECT_NEAR(s.lambda0, lam, 1e-13);
    EXPECT_NEAR(s.ct, 2 * d.eta_w * lam * lam, 1e-14);
    EXPECT_NEAR(s.induced_velocity, lam * d.tip_speed(), 1e-10);
}

TEST(Rotor, InflowResidualSweep) {
    const RotorDisc d = main_rotor_disc(params());
    const double tip = d.tip_speed();
    for (double th : {0.0, 0.05, 0.105, 0.2})
        for (int i = 0; i <= 15; ++i)
            for (int k = 0; k <= 10; ++k) {
                const double mu = 0.01 * i, muz = -0.05 + 0.01 * k;
                const RotorSolution s = solve_rotor_inflow({mu * tip, 0, muz * tip}, th, d);
                EXPECT_LT(std::abs(inflow_residual(s.lambda0, s.mu, s.mu_z, th, d)), 1e-10)
                    << "mu=" << mu << " muz=" << muz << " th=" << th;
                EXPECT_LT(s.iterations, 50);
            }
}

TEST(Rotor, ZeroThrustAtZeroCollectiveHover) {
    const RotorDisc d = main_rotor_disc(params());
    const RotorSolution s = solve_rotor_inflow({}, 0.0, d);
    EXPECT_DOUBLE_EQ(s.thrust, 0.0);
    EXPECT_DOUBLE_EQ(s.lambda0, 0.0);
}

TEST(Rotor, ThrustMonotonicInCollective) {
    const RotorDisc d = main_rotor_disc(params());
    for (double u : {0.0, 5.0, 15.0}) {
        double last = -1e9;
        for (int k = 0; k <= 40; ++k) {
            const double th = 0.005 * k;
            const double T = solve_rotor_inflow({u, 0, 0.2}, th, d).thrust;
            EXPECT_GT(T, last);
            last = T;
        }
    }
}

TEST(Rotor, TorqueIncludesProfileAndInduced) {
    const RotorDisc d = main_rotor_disc(params());
    RotorSolution s = solve_rotor_inflow({}, 0.105, d);
    const double cq = d.solidity / 8 * d.cd0 + s.lambda0 * s.ct;
    EXPECT_NEAR(s.cq, cq, 1e-15);
    EXPECT_NEAR(rotor_torque(s, d), s.torque, 1e-12);
}

TEST(Rotor, WakeFactorBandAndClamp) {
    const VehicleParams& p = params();
    RotorSolution main = solve_rotor_inflow({}, 0.105, main_rotor_disc(p));
    EXPECT_EQ(wake_factor(main, p), 0.0);  // hover: ratio 0 is below g_i
    for (double u : {1.0, 3.0, 6.0, 10.0, 20.0, 40.0}) {
        const RotorSolution s = solve_rotor_inflow({u, 0, 0}, 0.105, main_rotor_disc(p));
        const double k = wake_factor(s, p);
        EXPECT_GE(k, 0.0);
        EXPECT_LE(k, 1.5);
    }
}

TEST(Rotor, SteadyFlappingGains) {
    const VehicleParams& p = params();
    const FlappingState a = flapping_steady({}, 0, 0, 0, 0.01, p);
    EXPECT_NEAR(a.a1s, 0.042, 1e-12);
    const FlappingState b = flapping_steady({}, 0, 0.1, 0, 0, p);
    EXPECT_NEAR(b.a1s, -0.01, 1e-12);
    const FlappingState c = flapping_steady({}, 0, 0, 0.01, 0, p);
    EXPECT_NEAR(c.b1s, 0.042, 1e-12);
}

TEST(Rotor, FlappingRatesVanishAtSteadyState) {
    const VehicleParams& p = params();
    const AirVelocity air{3, -1, 0.5};
    const FlappingState ss = flapping_steady(air, 0.2, -0.1, 0.01, -0.02, p);
    const FlappingRates r = flapping_rates(ss, air, 0.2, -0.1, 0.01, -0.02, p);
    EXPECT_NEAR(r.a1s_dot, 0, 1e-15);
    EXPECT_NEAR(r.b1s_dot, 0, 1e-15);
    // a 0.01 rad longitudinal step from rest starts flapping at 42 * 0.01 rad/s
    const FlappingRates s = flapping_rates({}, {}, 0, 0, 0, 0.01, p);
    EXPECT_NEAR(s.a1s_dot, 0.42, 1e-12);
}

TEST(Rotor, TailThrustHalvesWhenArmDoubles) {
    VehicleParams p = params();
    const TrimPoint a = trim_hover(p);
    p.l_tr *= 2;
    const TrimPoint b = trim_hover(p);
    EXPECT_NEAR(b.tail_sol.thrust / a.tail_sol.thrust, 0.5, 0.01);
}
