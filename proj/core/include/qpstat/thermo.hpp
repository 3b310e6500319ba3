#pragma once

#include "qpstat/deformation.hpp"
#include "qpstat/series.hpp"
#include "qpstat/units.hpp"

namespace qpstat {

/// Static description of the free gas: spatial dimension D (reals admitted,
/// integers are the documented path), spin degeneracy g, particle mass m and
/// volume V(D), plus the active unit system. Reduced units force m = g = 1.
struct GasSpec {
    double dim;
    double degeneracy;
    double mass;
    double volume;
    Units units;

    GasSpec(double dim_, double degeneracy_, double mass_, double volume_, Units units_);

    static GasSpec reduced(double dim_, double volume_ = 1.0);
};

/// One thermodynamic state point. mu > 0 is rejected: eta = beta(E - mu)
/// must stay positive for every mode including E = 0.
struct ThermoState {
    double temperature;
    double mu;
    DeformationParams params;

    ThermoState(double temperature_, double mu_, DeformationParams params_);
};

/// N0(D) = 1/(2 (2 pi)^{D/2}) * D/Gamma(D/2+1) * g m^{D/2} / hbar^D.
double n0(const GasSpec& spec);

/// rho(D) = N0 Gamma(D/2) (k_B T)^{D/2} sigma(D/2)_qp.
double density(const ThermoState& state, const GasSpec& spec, double tol = kDefaultSeriesTol);

/// Same density through rho = N0 * J_{D/2-1}; retained as the second
/// algebraic route for identity tests.
double density_from_j_integral(const ThermoState& state, const GasSpec& spec,
                               double tol = kDefaultSeriesTol);

/// E(D) = N0 V Gamma(D/2+1) (k_B T)^{D/2+1} sigma(D/2+1)_qp.
double energy(const ThermoState& state, const GasSpec& spec, double tol = kDefaultSeriesTol);

/// p = (2/D) E / V, exactly.
double pressure(const ThermoState& state, const GasSpec& spec, double tol = kDefaultSeriesTol);

/// Omega = -(2/D) E, exactly.
double grand_potential(const ThermoState& state, const GasSpec& spec,
                       double tol = kDefaultSeriesTol);

/// C_V = (D/2) N k_B [ (D/2+1) sigma(D/2+1)/sigma(D/2)
///                     - (D/2) sigma(D/2)/sigma(D/2-1) ].
/// All three sigma orders must converge; in particular mu = 0 classical
/// states with D <= 3 report divergence through sigma(D/2-1).
double specific_heat(const ThermoState& state, const GasSpec& spec,
                     double tol = kDefaultSeriesTol);

/// S = N k_B [ (D/2+1) sigma(D/2+1)/sigma(D/2) - mu/(k_B T) ].
double entropy(const ThermoState& state, const GasSpec& spec, double tol = kDefaultSeriesTol);

struct MuSolution {
    double mu;
    /// target density exceeded the critical density: the gas is in the
    /// condensed phase and mu = 0 is returned with this flag set.
    bool condensed;
};

/// Invert rho(T, mu) = target by bisection on beta*mu in [-50, 0], using the
/// monotonicity of sigma in beta*mu. Relative accuracy 1e-10 on the density.
MuSolution solve_mu(double target_density, double temperature, const GasSpec& spec,
                    const DeformationParams& params, double rel_tol = 1e-10);

} // namespace qpstat
