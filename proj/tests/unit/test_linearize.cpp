#include <gtest/gtest.h>

#include <cmath>

#include "rotorlin/dynamics.hpp"
#include "rotorlin/errors.hpp"
#include "rotorlin/linearize.hpp"

using namespace rotorlin;

namespace {

struct Models {
    VehicleParams p = xcell60_defaults();
    TrimPoint hover = trim_hover(p);
    TrimPoint fwd = trim_forward(p, {16.5557, 0.7456, 0.2585});
    LinearModel hover_aug = assemble_linear_model(hover, p, ModelVariant::Augmented);
    LinearModel fwd_aug = assemble_linear_model(fwd, p, ModelVariant::Augmented);
    LinearModel hover_qs = assemble_linear_model(hover, p, ModelVariant::QuasiSteady);
};

const Models& models() {
    static const Models m;
    return m;
}

}  // namespace

TEST(Linearize, ShapesAndLabels) {
    const auto& m = models();
    EXPECT_EQ(m.hover_aug.A.rows(), 11);
    EXPECT_EQ(m.hover_aug.B.cols(), 4);
    EXPECT_EQ(m.hover_qs.A.rows(), 9);
    EXPECT_EQ(m.hover_aug.state_labels.back(), "b1s");
    EXPECT_EQ(m.hover_aug.index_of("q"), 4);
    EXPECT_THROW(m.hover_aug.index_of("zeta"), LabelError);
    EXPECT_EQ(m.hover_aug.step_report.size(), 15u);
}

TEST(Linearize, HeadingColumnIsZero) {
    const auto& m = models();
    for (const LinearModel* l : {&m.hover_aug, &m.fwd_aug, &m.hover_qs})
        EXPECT_LT(l->A.col(l->index_of("psi")).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Linearize, KinematicRowsMatchNumeric) {
    const auto& m = models();
    for (const TrimPoint* t : {&m.hover, &m.fwd}) {
        Eigen::MatrixXd A, B;
        numeric_jacobians(*t, m.p, ModelVariant::QuasiSteady, A, B);
        EXPECT_LT((A.block(6, 0, 3, 9) - kinematic_partials(t->state)).cwiseAbs().maxCoeff(), 1e-8);
    }
    // off trim, with rates and bank
    FlightState s;
    s.phi = 0.3;
    s.theta = 0.4;
    s.q = 0.2;
    s.r = -0.3;
    const auto K = kinematic_partials(s);
    const double h = 1e-6;
    for (int j : {6, 7}) {
        FlightState a = s, b = s;
        (j == 6 ? a.phi : a.theta) += h;
        (j == 6 ? b.phi : b.theta) -= h;
        double pa, ta, ya, pb, tb, yb;
        euler_kinematics(a, pa, ta, ya);
        euler_kinematics(b, pb, tb, yb);
        EXPECT_NEAR(K(0, j), (pa - pb) / (2 * h), 1e-8);
        EXPECT_NEAR(K(1, j), (ta - tb) / (2 * h), 1e-8);
        EXPECT_NEAR(K(2, j), (ya - yb) / (2 * h), 1e-8);
    }
}

TEST(Linearize, AssemblyMatchesDirectJacobian) {
    const auto& m = models();
    Eigen::MatrixXd A, B;
    numeric_jacobians(m.fwd, m.p, ModelVariant::Augmented, A, B);
    EXPECT_LT((A - m.fwd_aug.A).cwiseAbs().maxCoeff(), 1e-5 * std::max(1.0, A.cwiseAbs().maxCoeff()));
    EXPECT_LT((B - m.fwd_aug.B).cwiseAbs().maxCoeff(), 1e-5 * std::max(1.0, B.cwiseAbs().maxCoeff()));
}

TEST(Linearize, StepHalvingStable) {
    const auto& m = models();
    for (const LinearModel* l : {&m.hover_aug, &m.fwd_aug}) {
        for (const auto& e : l->step_report) EXPECT_TRUE(e.stable) << e.variable;
        const Eigen::MatrixXd d = (l->A - l->A_half_step).cwiseAbs();
        for (Eigen::Index i = 0; i < d.rows(); ++i)
            for (Eigen::Index k = 0; k < d.cols(); ++k)
                if (std::abs(l->A(i, k)) > 1e-6) EXPECT_LT(d(i, k) / std::abs(l->A(i, k)), 1e-3);
    }
}

TEST(Linearize, TangentErrorIsSecondOrder) {
    const auto& m = models();
    const LinearModel& l = m.fwd_aug;
    const Eigen::VectorXd x0 = to_vector(l.trim.state, l.variant);
    const Eigen::Vector4d u0 = to_vector(l.trim.controls);
    Eigen::VectorXd dx = Eigen::VectorXd::Zero(11);
    dx << 0.3, -0.2, 0.1, 0.02, -0.01, 0.015, 0.01, -0.01, 0, 0.002, -0.001;
    const Eigen::Vector4d du(0.002, -0.003, 0.001, 0.001);
    const Eigen::VectorXd f0 = state_derivative(x0, u0, m.p, l.variant);
    auto err = [&](double e) {
        const Eigen::VectorXd f = state_derivative(Eigen::VectorXd(x0 + e * dx), Eigen::Vector4d(u0 + e * du),
                                                   m.p, l.variant);
        return (f - f0 - e * (l.A * dx + l.B * du)).norm();
    };
    const double e1 = err(1e-2), e2 = err(5e-3);
    EXPECT_NEAR(e1 / e2, 4.0, 0.4);
}

TEST(Linearize, LongitudinalStepDrivesFlapping) {
    const auto& m = models();
    const LinearModel& l = m.hover_aug;
    EXPECT_NEAR(l.B(l.index_of("a1s"), 3) * 0.01, 0.42, 1e-9);
    EXPECT_NEAR(l.A(l.index_of("a1s"), l.index_of("a1s")), -10.0, 1e-9);
    EXPECT_NEAR(l.A(l.index_of("a1s"), l.index_of("q")), -1.0, 1e-9);
}

TEST(Linearize, AugmentedBlocksReembed) {
    const auto& m = models();
    const LinearModel& l = m.fwd_aug;
    const DecoupledModel d = decouple(l, DecoupleLayout::Augmented);
    const auto& lon = d.long_ver;
    for (std::size_t i = 0; i < lon.state_labels.size(); ++i)
        for (std::size_t k = 0; k < lon.state_labels.size(); ++k)
            EXPECT_DOUBLE_EQ(lon.A(i, k), l.A(l.index_of(lon.state_labels[i]), l.index_of(lon.state_labels[k])));
    const auto& lat = d.lat_dir;
    for (std::size_t i = 0; i < lat.state_labels.size(); ++i)
        for (std::size_t k = 0; k < lat.input_labels.size(); ++k)
            EXPECT_DOUBLE_EQ(lat.B(i, k), l.B(l.index_of(lat.state_labels[i]), input_index(lat.input_labels[k])));
    EXPECT_GE(d.coupling_norm, 0);
}

TEST(Linearize, QuasiStaticReductionConsistent) {
    const auto& m = models();
    const LinearModel qs = quasi_static_reduction(m.hover_aug);
    EXPECT_EQ(qs.A.rows(), 9);
    const DecoupledModel d = decouple(m.hover_aug, DecoupleLayout::QuasiStatic);
    EXPECT_EQ(d.long_ver.A.rows(), 4);
    EXPECT_EQ(d.lat_dir.A.rows(), 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k)
            EXPECT_DOUBLE_EQ(d.long_ver.A(i, k),
                             qs.A(qs.index_of(d.long_ver.state_labels[i]), qs.index_of(d.long_ver.state_labels[k])));
    // flapping eliminated analytically equals the quasi-steady differenced model
    EXPECT_LT((qs.A - m.hover_qs.A).cwiseAbs().maxCoeff(), 1e-4 * m.hover_qs.A.cwiseAbs().maxCoeff());
}

TEST(Linearize, BorderedLayoutShape) {
    const auto& m = models();
    const DecoupledModel d = decouple(m.hover_aug, DecoupleLayout::Bordered);
    EXPECT_EQ(d.long_ver.state_labels, (std::vector<std::string>{"u", "w", "q", "theta", "a1s"}));
    EXPECT_EQ(d.lat_dir.state_labels, (std::vector<std::string>{"v", "p", "r", "phi", "b1s"}));
    EXPECT_NEAR(d.long_ver.A(3, 2), std::cos(m.hover.state.phi), 1e-9);
    EXPECT_THROW(decouple(m.hover_qs, DecoupleLayout::Bordered), Error);
}

TEST(Linearize, LayoutNames) {
    for (DecoupleLayout l : {DecoupleLayout::Bordered, DecoupleLayout::QuasiStatic, DecoupleLayout::Augmented})
        EXPECT_EQ(parse_layout(layout_name(l)), l);
    EXPECT_THROW(parse_layout("diagonal"), Error);
}
