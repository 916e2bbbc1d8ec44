#include "rotorlin/modal.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "rotorlin/errors.hpp"

namespace rotorlin {

namespace {

double label_scale(const std::string& l, const VehicleParams& p) {
    if (l == "u" || l == "v" || l == "w") return 1.0 / p.mr_tip_speed();
    if (l == "p" || l == "q" || l == "r") return 1.0 / p.mr_omega_nom;
    if (l == "phi" || l == "theta" || l == "psi" || l == "a1s" || l == "b1s") return 1.0;
    throw LabelError(l);
}

Eigen::VectorXcd phase_fix(Eigen::VectorXcd v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    if (std::abs(v[k]) > 0) v *= std::conj(v[k]) / std::abs(v[k]);
    v[k] = std::abs(v[k]);
    return v;
}

// top holds the leading state and, when significant, the runner-up.
std::string classify(const std::vector<std::string>& top, bool oscillatory) {
    if (top.empty()) return {};
    const std::set<std::string> s(top.begin(), top.end());
    auto within = [&](std::initializer_list<const char*> allowed) {
        for (const auto& x : s)
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return x == a; }))
                return false;
        return true;
    };
    const bool pair = s.size() == 2;
    if (pair && within({"u", "theta"})) return "phugoid";
    if (pair && within({"q", "theta", "a1s"}) && (s.count("a1s") || s.count("q")))
        return "short-period";
    if (top.front() == "w") return "heave";
    if (pair && within({"p", "phi", "b1s"})) return "roll";
    if (pair && oscillatory && within({"v", "p", "r", "phi"})) return "dutch-roll";
    if (pair && !oscillatory && s.count("r") && within({"v", "p", "r", "phi"})) return "spiral";
    if (!oscillatory && top.front() == "phi") return "spiral";
    if (top.front() == "r") return "yaw";
    return {};
}

}  // namespace

std::string verdict_name(StabilityVerdict v) {
    switch (v) {
        case StabilityVerdict::Stable: return "stable";
        case StabilityVerdict::MarginallyUnstable: return "marginally-unstable";
        case StabilityVerdict::Unstable: return "unstable";
    }
    return "?";
}

Eigen::VectorXcd normalize_eigenvector(const Eigen::VectorXcd& v,
                                       const std::vector<std::string>& labels,
                                       const VehicleParams& params) {
    if (static_cast<Eigen::Index>(labels.size()) != v.size())
        throw LabelError("<" + std::to_string(labels.size()) + " labels for " +
                         std::to_string(v.size()) + " states>");
    Eigen::VectorXcd out = v / v.norm();
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] *= label_scale(labels[i], params);
    return phase_fix(out);
}

ModalReport eigen_analysis(const Eigen::MatrixXd& A, const std::vector<std::string>& labels,
                           const VehicleParams* params, const ModalOptions& opt) {
    if (A.rows() != A.cols()) throw EigenFailed("matrix is not square");
    if (!A.allFinite()) throw EigenFailed("matrix has non-finite entries");
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, true);
    if (es.info() != Eigen::Success) throw EigenFailed("QR iteration did not converge");

    ModalReport rep;
    rep.state_labels = labels;
    const Eigen::VectorXcd lam = es.eigenvalues();
    const Eigen::MatrixXcd vec = es.eigenvectors();
    std::vector<Eigen::Index> order(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double ma = std::abs(lam[a]), mb = std::abs(lam[b]);
        if (std::abs(ma - mb) > 1e-12 * std::max(1.0, std::max(ma, mb))) return ma < mb;
        return lam[a].imag() > lam[b].imag();
    });

    bool any_marginal = false, any_unstable = false;
    for (Eigen::Index i : order) {
        Mode m;
        m.eigenvalue = lam[i];
        m.frequency = std::abs(lam[i]);
        m.damping_ratio = m.frequency > 0 ? -lam[i].real() / m.frequency : 0.0;
        m.eigenvector = vec.col(i) / vec.col(i).norm();
        if (params && !labels.empty())
            m.normalized_eigenvector = normalize_eigenvector(m.eigenvector, labels, *params);
        else
            m.normalized_eigenvector = phase_fix(m.eigenvector);
        const double re = lam[i].real();
        if (re > opt.marginal_limit)
            any_unstable = true;
        else if (re > opt.zero_tol)
            any_marginal = true;
        rep.modes.push_back(std::move(m));
    }
    rep.verdict = any_unstable   ? StabilityVerdict::Unstable
                  : any_marginal ? StabilityVerdict::MarginallyUnstable
                                 : StabilityVerdict::Stable;
    if (!labels.empty()) mode_dominance(rep, opt);
    return rep;
}

void mode_dominance(ModalReport& report, const ModalOptions& opt) {
    for (auto& m : report.modes) {
        m.ranking.clear();
        m.dominant.clear();
        const Eigen::VectorXcd& v = m.normalized_eigenvector;
        const double largest = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const std::string l = i < static_cast<Eigen::Index>(report.state_labels.size())
                                      ? report.state_labels[i]
                                      : "x" + std::to_string(i);
            m.ranking.push_back({l, std::abs(v[i]), largest > 0 ? std::abs(v[i]) / largest : 0.0});
        }
        std::stable_sort(m.ranking.begin(), m.ranking.end(),
                         [](const DominantState& a, const DominantState& b) {
                             return a.magnitude > b.magnitude;
                         });
        for (const auto& d : m.ranking)
            if (d.relative >= opt.dominance_threshold && m.dominant.size() < 2)
                m.dominant.push_back(d.label);
        std::vector<std::string> top;
        for (const auto& d : m.ranking)
            if (top.empty() || (top.size() < 2 && d.relative >= opt.pattern_threshold))
                top.push_back(d.label);
        m.character = classify(top, std::abs(m.eigenvalue.imag()) > 0);
    }
}

}  // namespace rotorlin
