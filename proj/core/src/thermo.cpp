#include "qpstat/thermo.hpp"

#include <cmath>
#include <sstream>

namespace qpstat {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double beta_mu_of(const ThermoState& state, const GasSpec& spec) {
    return state.mu / (spec.units.k_b * state.temperature);
}

} // namespace

GasSpec::GasSpec(double dim_, double degeneracy_, double mass_, double volume_, Units units_)
    : dim(dim_), degeneracy(degeneracy_), mass(mass_), volume(volume_), units(units_) {
    if (!(dim > 0.0) || !(degeneracy > 0.0) || !(mass > 0.0) || !(volume > 0.0))
        throw DomainError("GasSpec: all fields must be strictly positive");
    if (units.kind == Units::Kind::Reduced && (mass != 1.0 || degeneracy != 1.0))
        throw DomainError("GasSpec: reduced units force mass = degeneracy = 1");
}

GasSpec GasSpec::reduced(double dim_, double volume_) {
    return GasSpec(dim_, 1.0, 1.0, volume_, Units::reduced());
}

ThermoState::ThermoState(double temperature_, double mu_, DeformationParams params_)
    : temperature(temperature_), mu(mu_), params(params_) {
    if (!(temperature > 0.0) || !std::isfinite(temperature))
        throw DomainError("ThermoState: temperature must be > 0");
    if (!(mu <= 0.0))
        throw DomainError("ThermoState: mu must be <= 0 (eta > 0 needed at E = 0)");
}

double n0(const GasSpec& spec) {
    const double half_d = 0.5 * spec.dim;
    return 1.0 / (2.0 * std::pow(kTwoPi, half_d)) * (spec.dim / gamma_fn(half_d + 1.0))
           * spec.degeneracy * std::pow(spec.mass, half_d) / std::pow(spec.units.hbar, spec.dim);
}

double density(const ThermoState& state, const GasSpec& spec, double tol) {
    const double half_d = 0.5 * spec.dim;
    const double kt = spec.units.k_b * state.temperature;
    const SeriesResult sig = sigma(half_d, beta_mu_of(state, spec), state.params, tol);
    return n0(spec) * gamma_fn(half_d) * std::pow(kt, half_d) * sig.checked_value();
}

double density_from_j_integral(const ThermoState& state, const GasSpec& spec, double tol) {
    return n0(spec)
           * j_integral(0.5 * spec.dim - 1.0, state.temperature, state.mu, state.params,
                        spec.units, tol);
}

double energy(const ThermoState& state, const GasSpec& spec, double tol) {
    const double half_d = 0.5 * spec.dim;
    const double kt = spec.units.k_b * state.temperature;
    const SeriesResult sig = sigma(half_d + 1.0, beta_mu_of(state, spec), state.params, tol);
    return n0(spec) * spec.volume * gamma_fn(half_d + 1.0) * std::pow(kt, half_d + 1.0)
           * sig.checked_value();
}

double pressure(const ThermoState& state, const GasSpec& spec, double tol) {
    return 2.0 / spec.dim * energy(state, spec, tol) / spec.volume;
}

double grand_potential(const ThermoState& state, const GasSpec& spec, double tol) {
    return -2.0 / spec.dim * energy(state, spec, tol);
}

double specific_heat(const ThermoState& state, const GasSpec& spec, double tol) {
    const double half_d = 0.5 * spec.dim;
    const double bmu = beta_mu_of(state, spec);
    const double s_plus = sigma(half_d + 1.0, bmu, state.params, tol).checked_value();
    const double s_mid = sigma(half_d, bmu, state.params, tol).checked_value();
    const double s_minus = sigma(half_d - 1.0, bmu, state.params, tol).checked_value();
    const double n = density(state, spec, tol) * spec.volume;
    return half_d * n * spec.units.k_b
           * ((half_d + 1.0) * s_plus / s_mid - half_d * s_mid / s_minus);
}

double entropy(const ThermoState& state, const GasSpec& spec, double tol) {
    const double half_d = 0.5 * spec.dim;
    const double bmu = beta_mu_of(state, spec);
    const double s_plus = sigma(half_d + 1.0, bmu, state.params, tol).checked_value();
    const double s_mid = sigma(half_d, bmu, state.params, tol).checked_value();
    const double n = density(state, spec, tol) * spec.volume;
    return n * spec.units.k_b * ((half_d + 1.0) * s_plus / s_mid - bmu);
}

MuSolution solve_mu(double target_density, double temperature, const GasSpec& spec,
                    const DeformationParams& params, double rel_tol) {
    if (!(target_density > 0.0)) throw DomainError("solve_mu: target density must be > 0");
    if (!(temperature > 0.0)) throw DomainError("solve_mu: temperature must be > 0");
    const double kt = spec.units.k_b * temperature;
    const double half_d = 0.5 * spec.dim;
    const double series_tol = 1e-13;
    const double prefactor = n0(spec) * gamma_fn(half_d) * std::pow(kt, half_d);

    auto density_at = [&](double beta_mu) {
        return prefactor * sigma(half_d, beta_mu, params, series_tol).checked_value();
    };

    // Critical density: finite only when sigma(D/2) converges at mu = 0.
    const SeriesResult crit = sigma(half_d, 0.0, params, series_tol);
    if (crit.converged()) {
        const double rho_c = prefactor * crit.value;
        if (std::abs(target_density - rho_c) <= rel_tol * rho_c) return MuSolution{0.0, false};
        if (target_density > rho_c) return MuSolution{0.0, true};
    }

    // Bisection bracket on beta*mu. The upper end sits at the convergence
    // boundary of the series; density grows without bound approaching it, so
    // only midpoints are ever evaluated.
    double hi = crit.converged() ? 0.0 : -qp_number_diff_envelope(params).growth_log_rate();
    double lo = std::min(-50.0, hi - 50.0);
    while (density_at(lo) > target_density) {
        lo *= 2.0;
        if (lo < -700.0) throw DomainError("solve_mu: target density below the solvable range");
    }

    double mid = lo;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double rho = density_at(mid);
        if (std::abs(rho - target_density) <= rel_tol * target_density)
            return MuSolution{mid * kt, false};
        (rho < target_density ? lo : hi) = mid;
        if (hi - lo <= 1e-16 * std::max(1.0, std::abs(lo))) break;
    }
    std::ostringstream os;
    os << "solve_mu: bisection did not reach relative tolerance " << rel_tol
       << " (best beta*mu = " << mid << ")";
    throw ConvergenceError(os.str());
}

} // namespace qpstat
