#pragma once

#include <string>
#include <vector>

#include "qpstat/thermo.hpp"

namespace qpstat {

enum class Condensation { Yes, No, Conditional };

const char* to_string(Condensation c) noexcept;

/// Rule-first condensation classifier: the analytic convergence conditions
/// of sigma0(D/2) per domain. UnitCircle reports Conditional — the series is
/// only conditionally convergent there even though condensation is claimed.
Condensation condenses(const DeformationParams& params, double dim);

/// T_B = (1/k_B) [ rho / (N0 Gamma(D/2) sigma0(D/2)) ]^{2/D}; returns 0 when
/// there is no condensation (T_B(D) = 0). For a Conditional verdict whose
/// numeric sum fails to stabilize the CapExceeded carries the partial value.
double bose_temperature(double target_density, const GasSpec& spec,
                        const DeformationParams& params, double tol = kDefaultSeriesTol);

/// The D = 3 classical closed form T_B(3) = 2 pi hbar^2/(k_B m)
/// [rho/(2.612 g)]^{2/3}, with the literal 4-digit constant.
double tb3_classical(double target_density, const GasSpec& spec);

struct PhaseMapRow {
    DeformationParams params;
    Condensation verdict;
    double t_b;
    std::string error; // empty when the row evaluated cleanly
};

/// One row per grid point, in input order; per-row failures are recorded
/// in-row and never abort the scan.
std::vector<PhaseMapRow> phase_map(const std::vector<DeformationParams>& grid,
                                   double target_density, const GasSpec& spec,
                                   double tol = kDefaultSeriesTol);

} // namespace qpstat
