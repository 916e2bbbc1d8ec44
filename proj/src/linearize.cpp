#include "rotorlin/linearize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotorlin/airframe.hpp"
#include "rotorlin/dynamics.hpp"
#include "rotorlin/errors.hpp"

namespace rotorlin {

namespace {

// Differencing variables: 9 (or 11) states followed by 4 inputs.
Eigen::VectorXd trim_point_vector(const TrimPoint& t, ModelVariant v) {
    const int n = state_count(v);
    Eigen::VectorXd z(n + 4);
    z.head(n) = to_vector(t.state, v);
    z.tail<4>() = to_vector(t.controls);
    return z;
}

VectorFn aero_function(const VehicleParams& p, ModelVariant v) {
    const int n = state_count(v);
    return [&p, v, n](const Eigen::VectorXd& z) {
        const FlightState s = from_vector(z.head(n));
        const ControlInput c = controls_from_vector(z.tail<4>());
        ForceOptions opt;
        opt.gravity = false;
        opt.variant = v;
        const ForceBreakdown b = evaluate_forces(s, c, p, opt);
        Eigen::VectorXd out(v == ModelVariant::Augmented ? 8 : 6);
        out.head<6>() = b.total.vec();
        if (v == ModelVariant::Augmented) {
            const FlappingRates fr =
                flapping_rates(b.flap, {s.u, s.v, s.w}, s.p, s.q, c.d_lat, c.d_long, p);
            out[6] = fr.a1s_dot;
            out[7] = fr.b1s_dot;
        }
        return out;
    };
}

std::vector<std::string> variable_names(ModelVariant v) {
    std::vector<std::string> names = state_labels(v);
    for (const auto& s : input_labels()) names.push_back(s);
    return names;
}

// Builds A and B from aero partial columns plus analytic gravity, cross and kinematic terms.
void assemble(const Eigen::MatrixXd& P, const FlightState& s0, const VehicleParams& p,
              ModelVariant v, Eigen::MatrixXd& A, Eigen::MatrixXd& B) {
    const int n = state_count(v);
    A = Eigen::MatrixXd::Zero(n, n);
    B = Eigen::MatrixXd::Zero(n, 4);
    const double inv[6] = {1 / p.m, 1 / p.m, 1 / p.m, 1 / p.Ixx, 1 / p.Iyy, 1 / p.Izz};
    for (int i = 0; i < 6; ++i) {
        A.row(i) = inv[i] * P.row(i).head(n);
        B.row(i) = inv[i] * P.row(i).tail(4);
    }
    const double u = s0.u, vv = s0.v, w = s0.w, pr = s0.p, q = s0.q, r = s0.r;
    const double g = p.g;
    const double sphi = std::sin(s0.phi), cphi = std::cos(s0.phi);
    const double sth = std::sin(s0.theta), cth = std::cos(s0.theta);
    enum { U, V, W, P_, Q, R, PHI, TH };

    // u' = X/m + r v - q w - g sin(theta)
    A(U, V) += r; A(U, W) += -q; A(U, Q) += -w; A(U, R) += vv;
    A(U, TH) += -g * cth;
    // v' = Y/m - r u + p w + g sin(phi) cos(theta)
    A(V, U) += -r; A(V, W) += pr; A(V, P_) += w; A(V, R) += -u;
    A(V, PHI) += g * cphi * cth; A(V, TH) += -g * sphi * sth;
    // w' = Z/m + q u - p v + g cos(phi) cos(theta)
    A(W, U) += q; A(W, V) += -pr; A(W, P_) += -vv; A(W, Q) += u;
    A(W, PHI) += -g * sphi * cth; A(W, TH) += -g * cphi * sth;

    const double kx = (p.Iyy - p.Izz) / p.Ixx;
    const double ky = (p.Izz - p.Ixx) / p.Iyy;
    const double kz = (p.Ixx - p.Iyy) / p.Izz;
    A(P_, Q) += kx * r; A(P_, R) += kx * q;
    A(Q, P_) += ky * r; A(Q, R) += ky * pr;
    A(R, P_) += kz * q; A(R, Q) += kz * pr;

    A.block(6, 0, 3, 9) = kinematic_partials(s0);

    if (v == ModelVariant::Augmented) {
        A.block(9, 0, 2, n) = P.block(6, 0, 2, n);
        B.block(9, 0, 2, 4) = P.block(6, n, 2, 4);
    }
}

}  // namespace

int LinearModel::index_of(const std::string& label) const {
    auto it = std::find(state_labels.begin(), state_labels.end(), label);
    if (it == state_labels.end()) throw LabelError(label);
    return static_cast<int>(it - state_labels.begin());
}

Eigen::Matrix<double, 3, 9> kinematic_partials(const FlightState& s) {
    if (!(std::abs(s.theta) < std::numbers::pi / 2)) throw KinematicSingularity(s.theta);
    const double sphi = std::sin(s.phi), cphi = std::cos(s.phi);
    const double cth = std::cos(s.theta), tth = std::tan(s.theta), sec = 1.0 / cth;
    const double a = s.q * sphi + s.r * cphi;   // enters phi' and psi'
    const double b = s.q * cphi - s.r * sphi;   // d a / d phi
    Eigen::Matrix<double, 3, 9> K = Eigen::Matrix<double, 3, 9>::Zero();
    // phi' = p + a tan(theta)
    K(0, 3) = 1.0;
    K(0, 4) = sphi * tth;
    K(0, 5) = cphi * tth;
    K(0, 6) = b * tth;
    K(0, 7) = a * sec * sec;
    // theta' = q cos(phi) - r sin(phi)
    K(1, 4) = cphi;
    K(1, 5) = -sphi;
    K(1, 6) = -a;
    // psi' = a sec(theta)
    K(2, 4) = sphi * sec;
    K(2, 5) = cphi * sec;
    K(2, 6) = b * sec;
    K(2, 7) = a * sec * tth;
    return K;
}

FdColumn force_moment_partials(const TrimPoint& trim, const std::string& variable,
                               const VehicleParams& p, ModelVariant variant,
                               const StepPolicy& policy) {
    const auto names = variable_names(variant);
    auto it = std::find(names.begin(), names.end(), variable);
    if (it == names.end()) throw LabelError(variable);
    const int j = static_cast<int>(it - names.begin());
    return difference_column(aero_function(p, variant), trim_point_vector(trim, variant), j,
                             policy, variable);
}

LinearModel assemble_linear_model(const TrimPoint& trim, const VehicleParams& p,
                                  ModelVariant variant, const StepPolicy& policy) {
    LinearModel m;
    m.variant = variant;
    m.trim = trim;
    m.state_labels = state_labels(variant);
    m.state_units = state_units(variant);
    m.input_labels = input_labels();

    const auto names = variable_names(variant);
    std::vector<FdColumn> cols;
    const Eigen::VectorXd z0 = trim_point_vector(trim, variant);
    const Eigen::MatrixXd P = jacobian(aero_function(p, variant), z0, policy, names, &cols, true);

    Eigen::MatrixXd P_half(P.rows(), P.cols()), P_rich(P.rows(), P.cols());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        P_half.col(j) = cols[j].half_step;
        P_rich.col(j) = cols[j].richardson;
        m.step_report.push_back({names[j], cols[j].h, cols[j].max_rel_change, cols[j].stable});
    }
    assemble(P, trim.state, p, variant, m.A, m.B);
    assemble(P_half, trim.state, p, variant, m.A_half_step, m.B_half_step);
    assemble(P_rich, trim.state, p, variant, m.A_richardson, m.B_richardson);
    return m;
}

void numeric_jacobians(const TrimPoint& trim, const VehicleParams& p, ModelVariant variant,
                       Eigen::MatrixXd& A, Eigen::MatrixXd& B, const StepPolicy& policy) {
    const int n = state_count(variant);
    const VectorFn f = [&p, variant, n](const Eigen::VectorXd& z) {
        return state_derivative(Eigen::VectorXd(z.head(n)), Eigen::Vector4d(z.tail<4>()), p,
                                variant);
    };
    const Eigen::MatrixXd J =
        jacobian(f, trim_point_vector(trim, variant), policy, variable_names(variant), nullptr, true);
    A = J.leftCols(n);
    B = J.rightCols(4);
}

LinearModel quasi_static_reduction(const LinearModel& aug) {
    if (aug.variant != ModelVariant::Augmented)
        throw Error(ErrorKind::Input, "quasi-static reduction needs an augmented model");
    auto reduce = [](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, Eigen::MatrixXd& Ar,
                     Eigen::MatrixXd& Br) {
        const Eigen::MatrixXd Aff_inv = A.block(9, 9, 2, 2).inverse();
        const Eigen::MatrixXd Abf = A.block(0, 9, 9, 2);
        Ar = A.topLeftCorner(9, 9) - Abf * Aff_inv * A.block(9, 0, 2, 9);
        Br = B.topRows(9) - Abf * Aff_inv * B.bottomRows(2);
    };
    LinearModel m = aug;
    m.variant = ModelVariant::QuasiSteady;
    m.state_labels = state_labels(m.variant);
    m.state_units = state_units(m.variant);
    reduce(aug.A, aug.B, m.A, m.B);
    reduce(aug.A_half_step, aug.B_half_step, m.A_half_step, m.B_half_step);
    reduce(aug.A_richardson, aug.B_richardson, m.A_richardson, m.B_richardson);
    return m;
}

namespace {

const std::vector<int> kLongBody = {0, 2, 4, 7};  // u w q theta
const std::vector<int> kLatBody = {1, 3, 5, 6};   // v p r phi
const std::vector<int> kLongIn = {0, 3};          // d_coll d_long
const std::vector<int> kLatIn = {1, 2};           // d_ped d_lat

SubModel extract(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const std::vector<int>& rows,
                 const std::vector<int>& ins, const std::vector<std::string>& labels) {
    SubModel s;
    const int n = static_cast<int>(rows.size());
    s.A.resize(n, n);
    s.B.resize(n, static_cast<int>(ins.size()));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) s.A(i, j) = A(rows[i], rows[j]);
        for (std::size_t k = 0; k < ins.size(); ++k) s.B(i, k) = B(rows[i], ins[k]);
        s.state_labels.push_back(labels[rows[i]]);
    }
    for (int k : ins) s.input_labels.push_back(input_labels()[k]);
    return s;
}

double cross_norm(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const std::vector<int>& lo,
                  const std::vector<int>& la) {
    double c = 0;
    for (int i : lo)
        for (int j : la) c = std::max({c, std::abs(A(i, j)), std::abs(A(j, i))});
    for (int i : lo)
        for (int k : kLatIn) c = std::max(c, std::abs(B(i, k)));
    for (int i : la)
        for (int k : kLongIn) c = std::max(c, std::abs(B(i, k)));
    return c;
}

}  // namespace

DecoupledModel decouple(const LinearModel& model, DecoupleLayout layout) {
    DecoupledModel d;
    d.layout = layout;
    const bool aug = model.variant == ModelVariant::Augmented;
    if (layout != DecoupleLayout::QuasiStatic && !aug)
        throw Error(ErrorKind::Input, "layout '" + layout_name(layout) + "' needs an augmented model");

    const auto& labels11 = state_labels(ModelVariant::Augmented);
    if (layout == DecoupleLayout::QuasiStatic) {
        const LinearModel qs = aug ? quasi_static_reduction(model) : model;
        d.long_ver = extract(qs.A, qs.B, kLongBody, kLongIn, labels11);
        d.lat_dir = extract(qs.A, qs.B, kLatBody, kLatIn, labels11);
        d.coupling_norm = cross_norm(qs.A, qs.B, kLongBody, kLatBody);
        return d;
    }

    std::vector<int> lo = kLongBody, la = kLatBody;
    lo.push_back(9);
    la.push_back(10);
    if (layout == DecoupleLayout::Augmented) {
        d.long_ver = extract(model.A, model.B, lo, kLongIn, labels11);
        d.lat_dir = extract(model.A, model.B, la, kLatIn, labels11);
        d.coupling_norm = cross_norm(model.A, model.B, lo, la);
        return d;
    }

    // Bordered: quasi-static body rows, augmented flapping row and column.
    const LinearModel qs = quasi_static_reduction(model);
    Eigen::MatrixXd A = model.A;
    Eigen::MatrixXd B = model.B;
    A.topLeftCorner(9, 9) = qs.A;
    B.topRows(9) = qs.B;
    d.long_ver = extract(A, B, lo, kLongIn, labels11);
    d.lat_dir = extract(A, B, la, kLatIn, labels11);
    d.coupling_norm = cross_norm(A, B, lo, la);
    return d;
}

std::string layout_name(DecoupleLayout l) {
    switch (l) {
        case DecoupleLayout::Bordered: return "bordered";
        case DecoupleLayout::QuasiStatic: return "quasi-static";
        case DecoupleLayout::Augmented: return "augmented";
    }
    return "?";
}

DecoupleLayout parse_layout(const std::string& s) {
    if (s == "bordered") return DecoupleLayout::Bordered;
    if (s == "quasi-static") return DecoupleLayout::QuasiStatic;
    if (s == "augmented") return DecoupleLayout::Augmented;
    throw Error(ErrorKind::Input, "unknown layout '" + s + "'");
}

}  // namespace rotorlin
