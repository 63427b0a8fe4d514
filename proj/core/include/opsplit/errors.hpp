#pragma once

#include <stdexcept>
#include <string>

namespace opsplit {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// State or operand sizes do not match.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// A vector field or user callback produced a non-finite value.
class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& msg) : Error(msg) {}
};

/// A flow map could not be advanced (step-size underflow, step budget
/// exhausted, diverging iteration inside an implicit solve).
class FlowError : public Error {
public:
    explicit FlowError(const std::string& msg) : Error(msg) {}
};

/// Explicit sub-step would violate the advective stability bound.
class CflError : public FlowError {
public:
    CflError(const std::string& msg, double admissible)
        : FlowError(msg), admissible_dt(admissible) {}
    double admissible_dt;
};

/// Linear solve hit a pivot below the breakdown threshold.
class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& msg) : Error(msg) {}
};

/// Iteration failed to converge within its budget.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

/// Bad user-facing configuration (unknown ids, malformed ladders, ...).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace opsplit
