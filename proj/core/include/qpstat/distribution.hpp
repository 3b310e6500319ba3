#pragma once

#include "qpstat/deformation.hpp"
#include "qpstat/series_result.hpp"

namespace qpstat {

/// One mode of the free gas: reciprocal temperature, chemical potential and
/// kinetic energy. The thermal trace needs eta = beta*(energy - mu) > 0;
/// that is checked by the operations, not the constructor, so nonconvergent
/// states can be probed and reported.
struct ModeState {
    double beta;
    double mu;
    double energy;

    ModeState(double beta_, double mu_, double energy_);

    double eta() const noexcept { return beta * (energy - mu); }
};

/// -ln(1 - e^{-eta}); deformation-independent. Throws ConvergenceError for
/// eta <= 0.
double log_partition_mode(const ModeState& mode);
double log_partition_at(double eta);

/// Per-mode trace convergence: max(|q|, |p|) < e^{eta}. The familiar global
/// e^{-beta mu} conditions are this predicate at the E = 0 mode.
bool bose_convergence_ok(const ModeState& mode, const DeformationParams& params);
bool bose_convergence_ok_at(double eta, const DeformationParams& params);

/// Deformed Bose factor (e^eta - 1)/((e^eta - q)(e^eta - p)), evaluated in
/// real arithmetic for every admissible domain via
///   f = y(1-y) / ((1-qy)(1-py)),  y = e^{-eta}.
double bose_factor(const ModeState& mode, const DeformationParams& params);
double bose_factor_at(double eta, const DeformationParams& params);

/// Partial-fraction form (q-1)/(q-p) 1/(e^eta - q) + (p-1)/(p-q) 1/(e^eta - p).
/// Kept as an independent evaluation path; the complex family is evaluated in
/// complex arithmetic and the imaginary part is checked to vanish.
double bose_factor_partial_fractions(const ModeState& mode, const DeformationParams& params);
double bose_factor_partial_fractions_at(double eta, const DeformationParams& params);

/// Same distribution written in terms of the ordinary Bose factor
/// f = 1/(e^eta - 1) > 0.
double bose_factor_from_classical(double classical_f, const DeformationParams& params);

/// Integer-series form: sum_{j>=0} e^{-eta(j+1)} ([[j+1]] - [[j]]), summed
/// until the geometric tail bound drops below tol.
SeriesResult bose_factor_series(const ModeState& mode, const DeformationParams& params,
                                double tol, std::size_t max_terms = 1'000'000);

} // namespace qpstat
