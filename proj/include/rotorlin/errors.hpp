#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rotorlin {

/// Broad failure classes; the CLI maps these to exit codes.
enum class ErrorKind {
    Input,        // bad configuration or arguments
    Convergence,  // iterative solver gave up
    Numerical,    // singularity or unusable numerics
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class MissingParameter : public Error {
public:
    explicit MissingParameter(std::string name)
        : Error(ErrorKind::Input, "missing parameter '" + name + "'"), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class InvalidParameter : public Error {
public:
    InvalidParameter(std::string name, double value, const std::string& constraint)
        : Error(ErrorKind::Input, "invalid parameter '" + name + "' = " + std::to_string(value) +
                                      " (requires " + constraint + ")"),
          name_(std::move(name)),
          value_(value) {}
    const std::string& name() const noexcept { return name_; }
    double value() const noexcept { return value_; }

private:
    std::string name_;
    double value_;
};

class CalibrationFailed : public Error {
public:
    CalibrationFailed(std::string parameter, const std::string& reason)
        : Error(ErrorKind::Convergence, "calibration of '" + parameter + "' failed: " + reason),
          parameter_(std::move(parameter)) {}
    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

/// Inflow fixed point did not converge; usually a vortex-ring-adjacent condition.
class InflowDiverged : public Error {
public:
    InflowDiverged(double mu, double mu_z, double last_residual)
        : Error(ErrorKind::Convergence, "inflow iteration diverged at mu=" + std::to_string(mu) +
                                            " mu_z=" + std::to_string(mu_z) +
                                            " residual=" + std::to_string(last_residual)),
          mu_(mu),
          mu_z_(mu_z),
          residual_(last_residual) {}
    double mu() const noexcept { return mu_; }
    double mu_z() const noexcept { return mu_z_; }
    double last_residual() const noexcept { return residual_; }

private:
    double mu_, mu_z_, residual_;
};

class KinematicSingularity : public Error {
public:
    explicit KinematicSingularity(double theta)
        : Error(ErrorKind::Numerical,
                "Euler kinematics singular at theta=" + std::to_string(theta) + " rad"),
          theta_(theta) {}
    double theta() const noexcept { return theta_; }

private:
    double theta_;
};

class TrimNotConverged : public Error {
public:
    explicit TrimNotConverged(std::vector<double> residual_history)
        : Error(ErrorKind::Convergence, "trim did not converge after " +
                                            std::to_string(residual_history.size()) +
                                            " iterations"),
          history_(std::move(residual_history)) {}
    const std::vector<double>& residual_history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

class MuOutOfRange : public Error {
public:
    MuOutOfRange(double mu, double limit)
        : Error(ErrorKind::Input, "advance ratio " + std::to_string(mu) +
                                      " exceeds model validity bound " + std::to_string(limit)),
          mu_(mu) {}
    double mu() const noexcept { return mu_; }

private:
    double mu_;
};

class PartialUnavailable : public Error {
public:
    explicit PartialUnavailable(std::string variable)
        : Error(ErrorKind::Numerical, "partial derivative unavailable for '" + variable + "'"),
          variable_(std::move(variable)) {}
    const std::string& variable() const noexcept { return variable_; }

private:
    std::string variable_;
};

class EigenFailed : public Error {
public:
    explicit EigenFailed(const std::string& detail)
        : Error(ErrorKind::Numerical, "eigen decomposition failed: " + detail) {}
};

class LabelError : public Error {
public:
    explicit LabelError(const std::string& label)
        : Error(ErrorKind::Input, "unknown state label '" + label + "'") {}
};

class GridError : public Error {
public:
    explicit GridError(const std::string& detail)
        : Error(ErrorKind::Input, "time grid mismatch: " + detail) {}
};

}  // namespace rotorlin
