#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rotorlin/finite_difference.hpp"
#include "rotorlin/state.hpp"
#include "rotorlin/trim.hpp"
#include "rotorlin/vehicle_params.hpp"

namespace rotorlin {

/// Finite-difference audit for one differenced variable.
struct StepEntry {
    std::string variable;
    double h = 0;
    double max_rel_change = 0;  // h vs h/2
    bool stable = true;
};

struct LinearModel {
    ModelVariant variant = ModelVariant::QuasiSteady;
    Eigen::MatrixXd A, B;
    Eigen::MatrixXd A_half_step, B_half_step;    // same assembly with h/2 partials
    Eigen::MatrixXd A_richardson, B_richardson;
    std::vector<std::string> state_labels, state_units, input_labels;
    TrimPoint trim;
    std::vector<StepEntry> step_report;

    int index_of(const std::string& label) const;  // throws LabelError
};

/// Partials of the aerodynamic forces/moments (gravity excluded) with respect to one
/// state or input. Rows X Y Z L M N, plus a1s' b1s' rows for the augmented variant.
FdColumn force_moment_partials(const TrimPoint& trim, const std::string& variable,
                               const VehicleParams& p,
                               ModelVariant variant = ModelVariant::QuasiSteady,
                               const StepPolicy& policy = {});

LinearModel assemble_linear_model(const TrimPoint& trim, const VehicleParams& p,
                                  ModelVariant variant = ModelVariant::QuasiSteady,
                                  const StepPolicy& policy = {});

/// Analytic Euler kinematic partial rows (phi, theta, psi) over the 9 body states.
Eigen::Matrix<double, 3, 9> kinematic_partials(const FlightState& s);

/// Direct central-difference Jacobians of state_derivative; independent route used for checks.
void numeric_jacobians(const TrimPoint& trim, const VehicleParams& p, ModelVariant variant,
                       Eigen::MatrixXd& A, Eigen::MatrixXd& B, const StepPolicy& policy = {});

enum class DecoupleLayout {
    Bordered,     // quasi-static body rows bordered by the flapping row and column
    QuasiStatic,  // 4x4, flapping eliminated
    Augmented,    // 5x5 extracted from the 11-state model
};

struct SubModel {
    Eigen::MatrixXd A, B;
    std::vector<std::string> state_labels, input_labels;
};

struct DecoupledModel {
    SubModel long_ver, lat_dir;
    double coupling_norm = 0;
    DecoupleLayout layout = DecoupleLayout::Bordered;
};

/// Bordered and Augmented layouts need an augmented model.
DecoupledModel decouple(const LinearModel& model, DecoupleLayout layout);

/// Eliminates the flapping states of an augmented model (A_bb - A_bf A_ff^-1 A_fb).
LinearModel quasi_static_reduction(const LinearModel& augmented);

std::string layout_name(DecoupleLayout l);
DecoupleLayout parse_layout(const std::string& s);

}  // namespace rotorlin
