#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "rotorlin/vehicle_params.hpp"

namespace rotorlin {

struct DominantState {
    std::string label;
    double magnitude = 0;  // |normalized component|
    double relative = 0;   // magnitude / largest magnitude in the mode
};

struct Mode {
    std::complex<double> eigenvalue;
    double damping_ratio = 0;  // -Re/|lambda|; 0 for a zero root
    double frequency = 0;      // |lambda|
    Eigen::VectorXcd eigenvector;             // unit 2-norm
    Eigen::VectorXcd normalized_eigenvector;  // scaled and phase-fixed
    std::vector<DominantState> ranking;       // all states, descending
    std::vector<std::string> dominant;        // top-2 among states >= 50% of the largest
    std::string character;                    // from the top-2 ranking; empty when no pattern matches
};

enum class StabilityVerdict { Stable, MarginallyUnstable, Unstable };

struct ModalReport {
    std::vector<Mode> modes;
    StabilityVerdict verdict = StabilityVerdict::Stable;
    std::vector<std::string> state_labels;
};

struct ModalOptions {
    double marginal_limit = 0.15;  // Re(lambda) in (0, limit] is marginal
    double zero_tol = 1e-10;       // |Re| below this counts as neutral
    double dominance_threshold = 0.5;
    double pattern_threshold = 0.25;  // runner-up share needed to join a two-state pattern
};

/// Eigen decomposition of a general real matrix. Labels and params are needed for
/// eigenvector normalization; without them the normalized vectors stay unscaled.
ModalReport eigen_analysis(const Eigen::MatrixXd& A, const std::vector<std::string>& labels = {},
                           const VehicleParams* params = nullptr, const ModalOptions& opt = {});

/// Translational velocities / (Omega R), rates / Omega, angles unscaled, phase fixed so
/// the largest component is real and positive.
Eigen::VectorXcd normalize_eigenvector(const Eigen::VectorXcd& v,
                                       const std::vector<std::string>& labels,
                                       const VehicleParams& params);

/// Ranks states and assigns a mode character to every mode of the report.
void mode_dominance(ModalReport& report, const ModalOptions& opt = {});

std::string verdict_name(StabilityVerdict v);

}  // namespace rotorlin
