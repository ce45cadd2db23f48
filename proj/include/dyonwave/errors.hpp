// errors.hpp - exception types shared by the solvers and the scenario runner

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dyonwave {

/// Precondition or staggering contract broken by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Requested time step exceeds the stability / resolution bound.
class CflViolation : public std::runtime_error {
public:
    CflViolation(const std::string& what, double requested, double bound)
        : std::runtime_error(what + " (dt=" + std::to_string(requested) +
                             ", bound=" + std::to_string(bound) + ")"),
          requested_(requested), bound_(bound) {}

    double requested() const noexcept { return requested_; }
    double bound() const noexcept { return bound_; }

private:
    double requested_;
    double bound_;
};

/// Non-finite values appeared during time stepping.
class NumericalDivergence : public std::runtime_error {
public:
    NumericalDivergence(const std::string& where, std::size_t step)
        : std::runtime_error(where + ": non-finite value at step " + std::to_string(step)),
          step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

/// Iterative solver hit its iteration cap.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
    if (!condition) throw ContractViolation(message);
}

} // namespace dyonwave
