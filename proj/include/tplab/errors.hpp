#ifndef TPLAB_ERRORS_HPP
#define TPLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tplab {

/// Coarse classification used by the CLI to pick an exit code.
enum class ErrorKind {
    usage,      ///< bad parameters or configuration
    numerical,  ///< quadrature or factorization could not meet its contract
};

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Argument outside the mathematical or supported domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

// Gamma function evaluated at a non-positive integer.
class PoleError : public DomainError {
public:
    explicit PoleError(const std::string& what) : DomainError(what) {}
};

// An asymptotic expansion changes form at the requested parameter.
class DegenerateExpansion : public DomainError {
public:
    explicit DegenerateExpansion(const std::string& what) : DomainError(what) {}
};

class InsufficientData : public DomainError {
public:
    explicit InsufficientData(const std::string& what) : DomainError(what) {}
};

// Internal error estimate of a special function exceeded its tolerance.
class AccuracyError : public Error {
public:
    explicit AccuracyError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

/// Adaptive quadrature hit its subdivision cap; carries the partial result.
class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, double partial_value, double error_estimate)
        : Error(ErrorKind::numerical, what), partial_value_(partial_value), error_estimate_(error_estimate) {}
    double partial_value() const noexcept { return partial_value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double partial_value_;
    double error_estimate_;
};

// Oscillatory tail could not be brought under the tolerance.
class SlowDecay : public NonConvergence {
public:
    SlowDecay(const std::string& what, double partial_value, double error_estimate)
        : NonConvergence(what, partial_value, error_estimate) {}
};

// Gram matrix not positive semidefinite even after the jitter cap.
class NotPSD : public Error {
public:
    explicit NotPSD(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class EmbeddingFailure : public Error {
public:
    explicit EmbeddingFailure(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

}  // namespace tplab

#endif
