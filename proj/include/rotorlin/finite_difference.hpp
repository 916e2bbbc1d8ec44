#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <future>
#include <string>
#include <vector>

#include "rotorlin/errors.hpp"

namespace rotorlin {

/// h = max(rel * |x0|, floor) in the variable's natural unit.
struct StepPolicy {
    double rel = 1e-4;
    double floor = 1e-5;
    double step(double x0) const { return std::max(rel * std::abs(x0), floor); }
};

/// One differenced column with its audit data.
struct FdColumn {
    Eigen::VectorXd value;       // central difference at h
    Eigen::VectorXd half_step;   // central difference at h/2
    Eigen::VectorXd richardson;  // (4 D(h/2) - D(h)) / 3
    double h = 0;
    double max_rel_change = 0;   // worst |D(h) - D(h/2)| / |D(h)| over entries above abs_floor
    bool stable = true;
};

using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

namespace detail {

inline Eigen::VectorXd central(const VectorFn& f, const Eigen::VectorXd& x0, int j, double h) {
    Eigen::VectorXd xp = x0, xm = x0;
    xp[j] += h;
    xm[j] -= h;
    return (f(xp) - f(xm)) / (2.0 * h);
}

}  // namespace detail

/// Central difference of f along coordinate j. Retries with h/4 when the
/// model fails at a perturbed point, then gives up with PartialUnavailable.
inline FdColumn difference_column(const VectorFn& f, const Eigen::VectorXd& x0, int j,
                                  const StepPolicy& policy, const std::string& name,
                                  double rel_tol = 1e-3, double abs_floor = 1e-6) {
    double h = policy.step(x0[j]);
    FdColumn col;
    for (int attempt = 0;; ++attempt) {
        try {
            col.value = detail::central(f, x0, j, h);
            col.half_step = detail::central(f, x0, j, h / 2);
            break;
        } catch (const InflowDiverged&) {
            if (attempt >= 1) throw PartialUnavailable(name);
            h /= 4;
        }
    }
    col.h = h;
    col.richardson = (4.0 * col.half_step - col.value) / 3.0;
    for (Eigen::Index i = 0; i < col.value.size(); ++i) {
        const double diff = std::abs(col.value[i] - col.half_step[i]);
        const double mag = std::abs(col.value[i]);
        if (mag > abs_floor) col.max_rel_change = std::max(col.max_rel_change, diff / mag);
        if (diff > std::max(rel_tol * mag, abs_floor)) col.stable = false;
    }
    return col;
}

/// Jacobian of f at x0; columns are evaluated concurrently when parallel is set.
/// The result does not depend on evaluation order.
inline Eigen::MatrixXd jacobian(const VectorFn& f, const Eigen::VectorXd& x0,
                                const StepPolicy& policy, const std::vector<std::string>& names,
                                std::vector<FdColumn>* report = nullptr, bool parallel = true) {
    const int n = static_cast<int>(x0.size());
    std::vector<FdColumn> cols(n);
    auto name_of = [&](int j) { return j < static_cast<int>(names.size()) ? names[j] : "x" + std::to_string(j); };
    if (parallel) {
        std::vector<std::future<FdColumn>> jobs;
        jobs.reserve(n);
        for (int j = 0; j < n; ++j)
            jobs.push_back(std::async(std::launch::async, [&, j] {
                return difference_column(f, x0, j, policy, name_of(j));
            }));
        for (int j = 0; j < n; ++j) cols[j] = jobs[j].get();
    } else {
        for (int j = 0; j < n; ++j) cols[j] = difference_column(f, x0, j, policy, name_of(j));
    }
    Eigen::MatrixXd J(cols.empty() ? 0 : cols[0].value.size(), n);
    for (int j = 0; j < n; ++j) J.col(j) = cols[j].value;
    if (report) *report = std::move(cols);
    return J;
}

}  // namespace rotorlin
