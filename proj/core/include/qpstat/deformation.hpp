#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "qpstat/errors.hpp"

namespace qpstat {

/// Which parametrisation the deformation uses:
///   Real:    q = e^{phi(cos tau + sin tau)},  p = e^{phi(cos tau - sin tau)}
///   Complex: q = e^{phi cos tau} e^{+i phi sin tau},  p = conj(q)
enum class Family { Real, Complex };

/// The five admissible parameter domains plus the undeformed point.
enum class DomainCase {
    RealGeneric,      // (q,p) real positive, none of the special cases below
    RealReciprocal,   // real with q*p = 1, q != 1
    RealPOne,         // real with one parameter equal to 1, the other != 1
    ComplexConjugate, // p = conj(q), |q| != 1
    UnitCircle,       // p = conj(q) = 1/q on the unit circle, q != 1
    Classical,        // q = p = 1
};

const char* to_string(DomainCase c) noexcept;
const char* to_string(Family f) noexcept;

/// Canonical representation of the deformation parameters (q,p).
///
/// Storage is (phi, tau, family) with tau in [-pi/2, pi/2]. All evaluation
/// goes through the cached exponents a = phi*cos(tau) and u = phi*sin(tau),
/// so every admissible domain is handled in purely real arithmetic.
///
/// phi may be negative: inside the strip tau in (-pi/2, pi/2) the sign of
/// phi is forced to the sign of ln(q*p) (real family) or ln|q| (complex
/// family), so q*p < 1 requires phi < 0. On the q*p = 1 / |q| = 1 boundary
/// the tau-sign gauge is used to keep phi >= 0.
///
/// The diagonal q = p != 1 is rejected: the closed forms downstream all
/// divide by q - p. For the complex family this also covers the angles
/// where sin(phi*sin(tau)) vanishes.
class DeformationParams {
public:
    static constexpr double kDefaultTolerance = 1e-12;

    /// The undeformed point q = p = 1.
    static DeformationParams classical() noexcept;

    /// Construct from (phi, tau, family). Throws DomainError for tau outside
    /// [-pi/2, pi/2], for the diagonal q = p != 1 and for degenerate complex
    /// angles phi*sin(tau) within tol of a nonzero multiple of pi.
    static DeformationParams from_phi_tau(double phi, double tau, Family family,
                                          double tol = kDefaultTolerance);

    /// Invert the real-family parametrisation. Requires q, p > 0; rejects
    /// q = p != 1.
    static DeformationParams from_qp(double q, double p, double tol = kDefaultTolerance);

    /// Invert either parametrisation. Inputs with negligible imaginary parts
    /// are routed to the real overload; otherwise p must equal conj(q).
    static DeformationParams from_qp(std::complex<double> q, std::complex<double> p,
                                     double tol = kDefaultTolerance);

    double phi() const noexcept { return phi_; }
    double tau() const noexcept { return tau_; }
    Family family() const noexcept { return family_; }
    DomainCase domain() const noexcept { return domain_; }
    bool is_classical() const noexcept { return domain_ == DomainCase::Classical; }

    /// a = phi*cos(tau): log-magnitude exponent, ln|q*p|/2.
    double phi_cos_tau() const noexcept { return a_; }
    /// u = phi*sin(tau): half log-ratio (real family) or phase of q (complex).
    double phi_sin_tau() const noexcept { return u_; }

    std::complex<double> q() const noexcept;
    std::complex<double> p() const noexcept;

    /// q + p, real in every admissible domain.
    double q_plus_p() const noexcept;
    /// q * p = e^{2a}, real in every admissible domain.
    double q_times_p() const noexcept;
    /// ln(max(|q|, |p|)) = a + |u| (real family) or a (complex family).
    double log_max_abs_qp() const noexcept;

private:
    DeformationParams(double phi, double tau, Family family, DomainCase domain) noexcept;

    double phi_;
    double tau_;
    double a_; // phi * cos(tau)
    double u_; // phi * sin(tau)
    Family family_;
    DomainCase domain_;
};

/// qp-deformed number [[x]] = (q^x - p^x)/(q - p), evaluated through the
/// stable forms e^{(x-1)a} sinh(x u)/sinh(u) (real family) and
/// e^{(x-1)a} sin(x u)/sin(u) (complex family). Always real.
double qp_number(double x, const DeformationParams& params);

/// [[j+1]] - [[j]], the series coefficient
/// c_j = (q-1)/(q-p) q^j + (p-1)/(p-q) p^j, evaluated without forming the
/// difference of two deformed numbers. j >= 0.
double qp_number_diff(std::int64_t j, const DeformationParams& params);

/// Envelope |c_j| <= amp_hi * e^{j lr_hi} + amp_lo * e^{j lr_lo} for the
/// qp_number_diff coefficients, with the exact geometric rates. Used for
/// series tail bounds and convergence classification.
struct CoeffEnvelope {
    double amp_hi = 0.0;
    double log_rate_hi = 0.0;
    double amp_lo = 0.0;
    double log_rate_lo = 0.0;

    /// ln of the true asymptotic growth rate of |c_j| (terms with zero
    /// amplitude do not count). -inf for the zero envelope.
    double growth_log_rate() const noexcept;
    double at(std::int64_t j) const noexcept;
};

CoeffEnvelope qp_number_diff_envelope(const DeformationParams& params);

} // namespace qpstat
