#pragma once

#include <stdexcept>
#include <string>

namespace qpstat {

/// Input lies outside the admissible (q,p) parameter domains, or a state
/// value violates its contract (negative temperature, positive chemical
/// potential at gas level, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A thermal trace or series does not converge for the given inputs.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The iteration cap was hit before the requested tolerance was certified.
/// Carries the best partial value for diagnostics.
class CapExceeded : public ConvergenceError {
public:
    CapExceeded(const std::string& what, double partial_value, double achieved_bound)
        : ConvergenceError(what), partial_value_(partial_value), achieved_bound_(achieved_bound) {}

    double partial_value() const noexcept { return partial_value_; }
    double achieved_bound() const noexcept { return achieved_bound_; }

private:
    double partial_value_;
    double achieved_bound_;
};

} // namespace qpstat
