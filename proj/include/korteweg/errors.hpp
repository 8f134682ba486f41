#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace korteweg {

/// Argument outside the domain of a power-law constitutive function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller broke a documented precondition (bad index, mismatched sizes, ...).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A model with kappa2 = 0 cannot be mapped to dimensionless form.
class SingularModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-positive density found while assembling the discrete system.
class PositivityError : public std::runtime_error {
public:
    PositivityError(std::size_t node, double value);

    std::size_t node() const noexcept { return node_; }
    double value() const noexcept { return value_; }

private:
    std::size_t node_;
    double value_;
};

/// Factorization of the (damped) linear system failed.
class SingularSystemError : public std::runtime_error {
public:
    SingularSystemError(int iteration, const std::string& what);

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

/// Damping grew past the stagnation limit without an accepted step.
class StagnationError : public std::runtime_error {
public:
    explicit StagnationError(double lambda);

    double lambda() const noexcept { return lambda_; }

private:
    double lambda_;
};

}  // namespace korteweg
