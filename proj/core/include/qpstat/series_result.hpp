#pragma once

#include <cstddef>

#include "qpstat/errors.hpp"

namespace qpstat {

enum class SeriesVerdict { ConvergedAbsolute, ConvergedConditional, Divergent };

inline const char* to_string(SeriesVerdict v) noexcept {
    switch (v) {
        case SeriesVerdict::ConvergedAbsolute: return "ConvergedAbsolute";
        case SeriesVerdict::ConvergedConditional: return "ConvergedConditional";
        case SeriesVerdict::Divergent: return "Divergent";
    }
    return "?";
}

/// Outcome of a series summation. For a Divergent verdict the value is NaN
/// and must not be consumed; checked_value() enforces that.
struct SeriesResult {
    double value = 0.0;
    std::size_t terms_used = 0;
    double tail_bound = 0.0;
    SeriesVerdict verdict = SeriesVerdict::ConvergedAbsolute;

    bool converged() const noexcept { return verdict != SeriesVerdict::Divergent; }

    double checked_value() const {
        if (!converged()) throw ConvergenceError("series is divergent; value is not meaningful");
        return value;
    }
};

} // namespace qpstat
