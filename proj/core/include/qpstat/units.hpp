#pragma once

#include "qpstat/errors.hpp"

namespace qpstat {

/// Active unit system. The math core works in whatever units these constants
/// define; the default Reduced system (hbar = k_B = 1) keeps desk-scale
/// numbers portable. SI constants are user inputs supplied at the CLI
/// boundary, never baked in here.
struct Units {
    enum class Kind { Reduced, SI };

    Kind kind = Kind::Reduced;
    double hbar = 1.0;
    double k_b = 1.0;

    static Units reduced() noexcept { return Units{}; }

    static Units si(double hbar, double k_b) {
        if (!(hbar > 0.0) || !(k_b > 0.0)) throw DomainError("Units: constants must be positive");
        return Units{Kind::SI, hbar, k_b};
    }
};

} // namespace qpstat
