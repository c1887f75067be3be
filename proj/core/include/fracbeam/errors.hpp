#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracbeam {

/// Precondition violation on caller-supplied input.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (e.g. t <= 0 for a
/// singular term).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed: non-convergence, bracket failure, or a
/// non-finite value produced during time stepping.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite state detected while stepping; carries the offending step.
class NonFiniteStateError : public NumericalError {
public:
    NonFiniteStateError(std::size_t step, const std::string& what)
        : NumericalError(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Configuration that the library recognises but does not support.
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace fracbeam
