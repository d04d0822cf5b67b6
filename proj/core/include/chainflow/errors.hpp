#pragma once

#include <stdexcept>
#include <string>

namespace chainflow {

// Base for everything thrown by the library; `code()` is a stable,
// machine-readable identifier used by the CLI's error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& what) : Error("shape", what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error("config", what) {}
};

// Integration produced a non-finite state; carries the offending step.
struct NumericalInstabilityError : Error {
    NumericalInstabilityError(const std::string& what, long step)
        : Error("numerical_instability", what), step_index(step) {}
    long step_index;
};

struct ProtocolMismatchError : Error {
    explicit ProtocolMismatchError(const std::string& what)
        : Error("protocol_mismatch", what) {}
};

struct FitDomainError : Error {
    explicit FitDomainError(const std::string& what) : Error("fit_domain", what) {}
};

struct FitFailureError : Error {
    FitFailureError(const std::string& what, double residual_norm)
        : Error("fit_failure", what), residual(residual_norm) {}
    double residual;
};

struct TrainingDivergedError : Error {
    TrainingDivergedError(const std::string& what, int epoch_index)
        : Error("training_diverged", what), epoch(epoch_index) {}
    int epoch;
};

struct TargetUnstableError : Error {
    explicit TargetUnstableError(const std::string& what)
        : Error("target_unstable", what) {}
};

struct RunAbortedError : Error {
    explicit RunAbortedError(const std::string& what) : Error("run_aborted", what) {}
};

struct LeakageError : Error {
    explicit LeakageError(const std::string& what) : Error("leakage", what) {}
};

struct EnsembleConfigError : Error {
    explicit EnsembleConfigError(const std::string& what)
        : Error("ensemble_config", what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("io", what) {}
};

}  // namespace chainflow
