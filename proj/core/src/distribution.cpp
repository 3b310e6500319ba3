#include "qpstat/distribution.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace qpstat {

namespace {

[[noreturn]] void throw_nonconvergent(const char* what, double eta,
                                      const DeformationParams& params) {
    std::ostringstream os;
    os << what << ": trace does not converge at eta = " << eta << " for domain "
       << to_string(params.domain()) << " (phi = " << params.phi() << ", tau = " << params.tau()
       << ")";
    throw ConvergenceError(os.str());
}

void check_imag_part(std::complex<double> v, const char* what) {
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()))) {
        std::ostringstream os;
        os << what << ": imaginary part " << v.imag() << " did not cancel";
        throw ConvergenceError(os.str());
    }
}

} // namespace

ModeState::ModeState(double beta_, double mu_, double energy_)
    : beta(beta_), mu(mu_), energy(energy_) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("ModeState: beta must be > 0");
    if (!(energy >= 0.0) || !std::isfinite(energy))
        throw DomainError("ModeState: energy must be >= 0");
    if (!std::isfinite(mu)) throw DomainError("ModeState: mu must be finite");
}

double log_partition_at(double eta) {
    if (!(eta > 0.0)) throw ConvergenceError("log_partition_mode: eta <= 0, geometric trace diverges");
    return -std::log1p(-std::exp(-eta));
}

double log_partition_mode(const ModeState& mode) { return log_partition_at(mode.eta()); }

bool bose_convergence_ok_at(double eta, const DeformationParams& params) {
    return eta > 0.0 && params.log_max_abs_qp() < eta;
}

bool bose_convergence_ok(const ModeState& mode, const DeformationParams& params) {
    return bose_convergence_ok_at(mode.eta(), params);
}

double bose_factor_at(double eta, const DeformationParams& params) {
    if (!bose_convergence_ok_at(eta, params))
        throw_nonconvergent("bose_factor", eta, params);
    const double y = std::exp(-eta);
    const double num = -std::expm1(-eta) * y; // (1-y) y
    const double a = params.phi_cos_tau();
    const double u = params.phi_sin_tau();
    double denom;
    if (params.family() == Family::Real) {
        // (1-qy)(1-py) with 1-qy = -expm1(ln q - eta); both factors negative
        // of expm1 of a negative argument, so the product is positive.
        denom = std::expm1(a + u - eta) * std::expm1(a - u - eta);
    } else {
        // |1 - qy|^2 = expm1(a-eta)^2 + 4 e^{a-eta} sin^2(u/2)
        const double e = std::expm1(a - eta);
        const double s = std::sin(0.5 * u);
        denom = e * e + 4.0 * std::exp(a - eta) * s * s;
    }
    return num / denom;
}

double bose_factor(const ModeState& mode, const DeformationParams& params) {
    return bose_factor_at(mode.eta(), params);
}

double bose_factor_partial_fractions_at(double eta, const DeformationParams& params) {
    if (!bose_convergence_ok_at(eta, params))
        throw_nonconvergent("bose_factor_partial_fractions", eta, params);
    const double y = std::exp(-eta);
    if (params.is_classical()) {
        // The (q-1)/(q-p) weights degenerate at q = p = 1; the partial
        // fractions collapse to the undeformed 1/(e^eta - 1) = y/(1-y).
        return y / -std::expm1(-eta);
    }
    const std::complex<double> q = params.q();
    const std::complex<double> p = params.p();
    const std::complex<double> alpha = (q - 1.0) / (q - p);
    const std::complex<double> beta = (p - 1.0) / (p - q);
    const std::complex<double> v = alpha * y / (1.0 - q * y) + beta * y / (1.0 - p * y);
    if (params.family() == Family::Complex) check_imag_part(v, "bose_factor_partial_fractions");
    return v.real();
}

double bose_factor_partial_fractions(const ModeState& mode, const DeformationParams& params) {
    return bose_factor_partial_fractions_at(mode.eta(), params);
}

double bose_factor_from_classical(double classical_f, const DeformationParams& params) {
    if (!(classical_f > 0.0))
        throw DomainError("bose_factor_from_classical: f must be positive");
    // f = 1/(e^eta - 1)  =>  eta = ln(1 + 1/f)
    const double eta = std::log1p(1.0 / classical_f);
    if (!bose_convergence_ok_at(eta, params))
        throw_nonconvergent("bose_factor_from_classical", eta, params);
    if (params.is_classical()) return classical_f;
    const std::complex<double> q = params.q();
    const std::complex<double> p = params.p();
    const std::complex<double> dq = 1.0 + (1.0 - q) * classical_f;
    const std::complex<double> dp = 1.0 + (1.0 - p) * classical_f;
    if (std::abs(dq) == 0.0 || std::abs(dp) == 0.0)
        throw ConvergenceError("bose_factor_from_classical: pole 1 + (1-q) f = 0");
    const std::complex<double> v = (q - 1.0) / (q - p) * classical_f / dq
                                   + (p - 1.0) / (p - q) * classical_f / dp;
    if (params.family() == Family::Complex) check_imag_part(v, "bose_factor_from_classical");
    return v.real();
}

SeriesResult bose_factor_series(const ModeState& mode, const DeformationParams& params,
                                double tol, std::size_t max_terms) {
    const double eta = mode.eta();
    if (!bose_convergence_ok_at(eta, params))
        throw_nonconvergent("bose_factor_series", eta, params);

    const CoeffEnvelope env = qp_number_diff_envelope(params);
    const double y = std::exp(-eta);

    // Tail of sum_{k>j} y^{k+1} |c_k| for one geometric envelope branch.
    auto branch_tail = [y](double amp, double log_rate, std::int64_t j) {
        if (amp == 0.0) return 0.0;
        const double r = y * std::exp(log_rate);
        return amp * y * std::pow(r, static_cast<double>(j + 1)) / (1.0 - r);
    };

    double sum = 0.0;
    double weight = 1.0;
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(max_terms); ++j) {
        weight *= y; // y^{j+1}
        sum += weight * qp_number_diff(j, params);
        const double tail = branch_tail(env.amp_hi, env.log_rate_hi, j)
                            + branch_tail(env.amp_lo, env.log_rate_lo, j);
        if (tail <= tol) {
            return SeriesResult{sum, static_cast<std::size_t>(j + 1), tail,
                                SeriesVerdict::ConvergedAbsolute};
        }
    }
    throw CapExceeded("bose_factor_series: term cap exceeded", sum, tol);
}

} // namespace qpstat
