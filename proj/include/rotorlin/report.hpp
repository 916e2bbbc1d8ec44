#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotorlin/linearize.hpp"
#include "rotorlin/modal.hpp"
#include "rotorlin/simulate.hpp"
#include "rotorlin/trim.hpp"

namespace rotorlin {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

/// Inputs that produced a set of outputs. The timestamp is excluded from the hash.
struct RunManifest {
    std::string subcommand;
    std::string config_path;
    std::string condition;
    std::vector<std::string> outputs;
    std::string tool_version = kToolVersion;
    std::vector<std::string> back_solved;
    json options = json::object();
    std::string timestamp;

    json to_json() const;  // includes "hash"
    std::string hash() const;
};

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& data);

json complex_json(std::complex<double> z);
json matrix_json(const Eigen::MatrixXd& m);

json trim_json(const TrimPoint& t);
json linear_model_json(const LinearModel& m);
json decoupled_json(const DecoupledModel& d);
json modal_json(const ModalReport& r);
json divergence_json(const DivergenceReport& r);

/// Aligned text with row and column labels.
std::string matrix_text(const Eigen::MatrixXd& m, const std::vector<std::string>& rows,
                        const std::vector<std::string>& cols, int precision = 4);
std::string modal_table_text(const ModalReport& r);
/// One row per mode, |normalized component| per state.
std::string eigenvector_csv(const ModalReport& r, const std::string& manifest_hash = {});

/// Value of a published trim key (T_MR, theta0_TR, phi, ...) from a computed trim.
double trim_scalar(const TrimPoint& t, const std::string& key);

/// Full pipeline juxtaposed with the published numbers.
json reproduce_report(const VehicleParams& base);

}  // namespace rotorlin
