#include "qpstat/photon.hpp"

#include <cmath>
#include <sstream>

#include "qpstat/distribution.hpp"

namespace qpstat {

namespace {

constexpr double kPoleMargin = 1e-12;

[[noreturn]] void throw_nonconvergent(const char* what, double xi,
                                      const DeformationParams& params) {
    std::ostringstream os;
    os << what << ": moment trace does not converge at xi = " << xi << " for domain "
       << to_string(params.domain());
    throw ConvergenceError(os.str());
}

// (1 - q^2 y)(1 - p^2 y) in real arithmetic; q^2 and p^2 share the magnitude
// exponent 2a and (for the complex family) the angle 2u.
double square_pair(double xi, const DeformationParams& params) {
    const double a2 = 2.0 * params.phi_cos_tau();
    const double u2 = 2.0 * params.phi_sin_tau();
    if (params.family() == Family::Real)
        return std::expm1(a2 + u2 - xi) * std::expm1(a2 - u2 - xi);
    const double e = std::expm1(a2 - xi);
    const double s = std::sin(0.5 * u2);
    return e * e + 4.0 * std::exp(a2 - xi) * s * s;
}

// (1 - q y)(1 - p y), same structure one level down.
double linear_pair(double xi, const DeformationParams& params) {
    const double a = params.phi_cos_tau();
    const double u = params.phi_sin_tau();
    if (params.family() == Family::Real)
        return std::expm1(a + u - xi) * std::expm1(a - u - xi);
    const double e = std::expm1(a - xi);
    const double s = std::sin(0.5 * u);
    return e * e + 4.0 * std::exp(a - xi) * s * s;
}

} // namespace

PhotonMode::PhotonMode(double omega_, double beta_) : omega(omega_), beta(beta_) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw DomainError("PhotonMode: omega must be > 0");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("PhotonMode: beta must be > 0");
}

bool g2_convergence_ok(const PhotonMode& mode, const DeformationParams& params) {
    const double xi = mode.xi();
    return 2.0 * params.log_max_abs_qp() < xi - kPoleMargin * std::max(1.0, xi);
}

double mean_occupation(const PhotonMode& mode, const DeformationParams& params) {
    return bose_factor_at(mode.xi(), params);
}

double mean_occupation_sq(const PhotonMode& mode, const DeformationParams& params) {
    if (!g2_convergence_ok(mode, params))
        throw_nonconvergent("mean_occupation_sq", mode.xi(), params);
    const double xi = mode.xi();
    const double y = std::exp(-xi);
    const double qp = params.q_times_p();
    const double num = y * -std::expm1(-xi) * (1.0 + qp * y); // y (1-y)(1 + qp y)
    const double denom = square_pair(xi, params) * -std::expm1(2.0 * params.phi_cos_tau() - xi);
    return num / denom;
}

std::complex<double> mean_qn_occupation(const PhotonMode& mode, const DeformationParams& params) {
    // Needs only |q|^2 < e^xi and |q p| < e^xi; |p|^2 is not involved.
    const double xi = mode.xi();
    const double a = params.phi_cos_tau();
    const double u = params.phi_sin_tau();
    const double log_q2 = params.family() == Family::Real ? 2.0 * (a + u) : 2.0 * a;
    const double margin = kPoleMargin * std::max(1.0, xi);
    if (!(std::max(log_q2, 2.0 * a) < xi - margin))
        throw_nonconvergent("mean_qn_occupation", xi, params);
    const double y = std::exp(-xi);
    const std::complex<double> q = params.q();
    const double qp = params.q_times_p();
    const std::complex<double> denom = (1.0 - q * q * y) * (1.0 - qp * y);
    return q * y * -std::expm1(-xi) / denom;
}

double g2(const PhotonMode& mode, const DeformationParams& params) {
    if (!g2_convergence_ok(mode, params)) throw_nonconvergent("g2", mode.xi(), params);
    const double xi = mode.xi();
    const double lp = linear_pair(xi, params);
    const double num = params.q_plus_p() * lp * lp;
    const double denom = -std::expm1(-xi) * square_pair(xi, params)
                         * -std::expm1(2.0 * params.phi_cos_tau() - xi);
    return num / denom;
}

double g2_assembly(const PhotonMode& mode, const DeformationParams& params) {
    const double f = mean_occupation(mode, params);
    const double n2 = mean_occupation_sq(mode, params);
    const std::complex<double> qn = mean_qn_occupation(mode, params);
    const std::complex<double> p = params.p();
    const double qp = params.q_times_p();
    const std::complex<double> g = (n2 / p - qn / qp) / (f * f);
    if (std::abs(g.imag()) > 1e-12 * std::max(1.0, std::abs(g.real())))
        throw ConvergenceError("g2_assembly: imaginary part did not cancel");
    return g.real();
}

double g2_asymptote(const DeformationParams& params) { return params.q_plus_p(); }

} // namespace qpstat
