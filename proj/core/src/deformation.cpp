#include "qpstat/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qpstat {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

// Below this |u| the sinh/sin ratios switch to their Taylor expansions.
constexpr double kSmallArgCrossover = 1e-8;

[[noreturn]] void throw_domain(const std::string& msg) { throw DomainError(msg); }

std::string describe_qp(std::complex<double> q, std::complex<double> p) {
    std::ostringstream os;
    os << "q = (" << q.real() << ", " << q.imag() << "), p = (" << p.real() << ", "
       << p.imag() << ")";
    return os.str();
}

// ln(2*|sinh(u)|), safe for any magnitude of u != 0.
double log_2sinh_abs(double u) {
    const double au = std::abs(u);
    if (au > 30.0) return au + std::log1p(-std::exp(-2.0 * au));
    return std::log(2.0 * std::sinh(au));
}

// Three-term Taylor expansion of sinh(xu)/sinh(u) (sign = +1) or
// sin(xu)/sin(u) (sign = -1) around u = 0.
double ratio_taylor(double x, double u, double sign) {
    const double u2 = u * u;
    const double x2m1 = x * x - 1.0;
    return x * (1.0 + sign * x2m1 * u2 / 6.0 + x2m1 * (3.0 * x * x - 7.0) * u2 * u2 / 360.0);
}

// sinh(x*u)/sinh(u) folded with the scale e^{(x-1)a}; evaluated in log space
// when sinh(x*u) alone would overflow but the product stays representable.
double scaled_sinh_ratio(double x, double a, double u) {
    const double xu = x * u;
    if (std::abs(u) < kSmallArgCrossover && std::abs(xu) < 1e-4)
        return std::exp((x - 1.0) * a) * ratio_taylor(x, u, +1.0);
    if (std::abs(xu) > 350.0) {
        const double lg = (x - 1.0) * a + std::abs(xu) + std::log1p(-std::exp(-2.0 * std::abs(xu)))
                          - log_2sinh_abs(u);
        const double mag = std::exp(lg);
        return x < 0.0 ? -mag : mag;
    }
    return std::exp((x - 1.0) * a) * std::sinh(xu) / std::sinh(u);
}

double scaled_sin_ratio(double x, double a, double u) {
    const double xu = x * u;
    if (std::abs(u) < kSmallArgCrossover && std::abs(xu) < 1e-4)
        return std::exp((x - 1.0) * a) * ratio_taylor(x, u, -1.0);
    return std::exp((x - 1.0) * a) * std::sin(xu) / std::sin(u);
}

// Amplitudes of the two-term coefficient form c_j = amp_q q^j + amp_p p^j
// for the real family. An exactly-unit parameter has an exactly-zero
// coefficient; rounding in w would otherwise leave a ~1e-16 ghost amplitude
// that drowns the true geometric decay at large j.
struct RealCoeffs {
    double amp_q;
    double amp_p;
};

RealCoeffs real_family_coeffs(double a, double u) {
    const double w_num = 2.0 * std::sinh(0.5 * u) * std::sinh(0.5 * u) - std::expm1(-a);
    const double w = w_num / std::sinh(u);
    double amp_q = 0.5 * (w + 1.0);
    double amp_p = 0.5 * (1.0 - w);
    const double total = std::abs(amp_q) + std::abs(amp_p);
    if (std::abs(amp_q) <= 1e-13 * total) amp_q = 0.0;
    if (std::abs(amp_p) <= 1e-13 * total) amp_p = 0.0;
    return RealCoeffs{amp_q, amp_p};
}

// (phi, tau) in the canonical strip from the exponents a = phi cos tau,
// u = phi sin tau. On the a = 0 boundary the tau sign keeps phi >= 0.
void phi_tau_from_exponents(double a, double u, double& phi, double& tau) {
    if (a == 0.0) {
        phi = std::abs(u);
        tau = std::copysign(kHalfPi, u);
        return;
    }
    const double h = std::hypot(a, u);
    phi = std::copysign(h, a);
    tau = std::atan2(a > 0.0 ? u : -u, std::abs(a));
}

} // namespace

const char* to_string(DomainCase c) noexcept {
    switch (c) {
        case DomainCase::RealGeneric: return "RealGeneric";
        case DomainCase::RealReciprocal: return "RealReciprocal";
        case DomainCase::RealPOne: return "RealPOne";
        case DomainCase::ComplexConjugate: return "ComplexConjugate";
        case DomainCase::UnitCircle: return "UnitCircle";
        case DomainCase::Classical: return "Classical";
    }
    return "?";
}

const char* to_string(Family f) noexcept {
    return f == Family::Real ? "real" : "complex";
}

DeformationParams::DeformationParams(double phi, double tau, Family family,
                                     DomainCase domain) noexcept
    : phi_(phi), tau_(tau), a_(phi * std::cos(tau)), u_(phi * std::sin(tau)),
      family_(family), domain_(domain) {
    if (domain_ == DomainCase::Classical) {
        a_ = 0.0;
        u_ = 0.0;
    }
    // tau = +-pi/2 carries cos(tau) ~ 6e-17 rounding; the boundary domains
    // are exactly a = 0 by definition.
    if (domain_ == DomainCase::RealReciprocal || domain_ == DomainCase::UnitCircle) a_ = 0.0;
}

DeformationParams DeformationParams::classical() noexcept {
    return DeformationParams(0.0, 0.0, Family::Real, DomainCase::Classical);
}

DeformationParams DeformationParams::from_phi_tau(double phi, double tau, Family family,
                                                  double tol) {
    if (!std::isfinite(phi) || !std::isfinite(tau)) throw_domain("non-finite (phi, tau)");
    if (std::abs(tau) > kHalfPi * (1.0 + 1e-15))
        throw_domain("tau outside [-pi/2, pi/2]");
    tau = std::clamp(tau, -kHalfPi, kHalfPi);
    if (phi == 0.0) return classical();

    const double a = phi * std::cos(tau);
    const double u = phi * std::sin(tau);

    const bool boundary_tau = tau == kHalfPi || tau == -kHalfPi;

    if (family == Family::Real) {
        if (u == 0.0) throw_domain("diagonal q = p != 1 is not admissible (tau = 0)");
        const bool reciprocal = boundary_tau || std::abs(2.0 * a) <= tol;
        const bool p_one = std::abs(a - u) <= tol || std::abs(a + u) <= tol;
        DomainCase d = reciprocal ? DomainCase::RealReciprocal
                                  : (p_one ? DomainCase::RealPOne : DomainCase::RealGeneric);
        return DeformationParams(phi, tau, family, d);
    }

    // Complex family: reject angles where q = p (sin(u) = 0), i.e. u within
    // tol of a multiple of pi.
    const double k = std::round(u / kPi);
    if (std::abs(u - k * kPi) <= tol * std::max(1.0, std::abs(u))) {
        if (k == 0.0) throw_domain("diagonal q = p != 1 is not admissible (sin(tau) = 0)");
        throw_domain("degenerate angle: sin(phi sin tau) = 0");
    }
    DomainCase d = (boundary_tau || std::abs(a) <= tol) ? DomainCase::UnitCircle
                                                        : DomainCase::ComplexConjugate;
    return DeformationParams(phi, tau, family, d);
}

DeformationParams DeformationParams::from_qp(double q, double p, double tol) {
    if (!(q > 0.0) || !(p > 0.0))
        throw_domain("real-family parameters must be strictly positive; got " +
                     describe_qp(q, p));
    const double lq = std::log(q);
    const double lp = std::log(p);
    if (std::abs(lq) <= tol && std::abs(lp) <= tol) return classical();
    if (std::abs(lq - lp) <= tol)
        throw_domain("diagonal q = p != 1 is not admissible; " + describe_qp(q, p));

    const double a = 0.5 * (lq + lp);
    const double u = 0.5 * (lq - lp);
    double phi = 0.0, tau = 0.0;
    phi_tau_from_exponents(std::abs(a) <= tol ? 0.0 : a, u, phi, tau);
    return from_phi_tau(phi, tau, Family::Real, tol);
}

DeformationParams DeformationParams::from_qp(std::complex<double> q, std::complex<double> p,
                                             double tol) {
    const double qmag = std::abs(q);
    const double pmag = std::abs(p);
    if (!(qmag > 0.0) || !(pmag > 0.0)) throw_domain("q and p must be nonzero");
    if (std::abs(q.imag()) <= tol * qmag && std::abs(p.imag()) <= tol * pmag)
        return from_qp(q.real(), p.real(), tol);
    if (std::abs(p - std::conj(q)) > tol * qmag)
        throw_domain("complex parameters must satisfy p = conj(q); " + describe_qp(q, p));

    const double a = std::log(qmag);
    const double u = std::arg(q);
    double phi = 0.0, tau = 0.0;
    phi_tau_from_exponents(std::abs(a) <= tol ? 0.0 : a, u, phi, tau);
    return from_phi_tau(phi, tau, Family::Complex, tol);
}

std::complex<double> DeformationParams::q() const noexcept {
    if (family_ == Family::Real) return {std::exp(a_ + u_), 0.0};
    return std::polar(std::exp(a_), u_);
}

std::complex<double> DeformationParams::p() const noexcept {
    if (family_ == Family::Real) return {std::exp(a_ - u_), 0.0};
    return std::polar(std::exp(a_), -u_);
}

double DeformationParams::q_plus_p() const noexcept {
    if (family_ == Family::Real) return 2.0 * std::exp(a_) * std::cosh(u_);
    return 2.0 * std::exp(a_) * std::cos(u_);
}

double DeformationParams::q_times_p() const noexcept { return std::exp(2.0 * a_); }

double DeformationParams::log_max_abs_qp() const noexcept {
    return family_ == Family::Real ? a_ + std::abs(u_) : a_;
}

double qp_number(double x, const DeformationParams& params) {
    if (params.is_classical()) return x;
    if (x == 0.0) return 0.0;
    const double a = params.phi_cos_tau();
    const double u = params.phi_sin_tau();
    return params.family() == Family::Real ? scaled_sinh_ratio(x, a, u)
                                           : scaled_sin_ratio(x, a, u);
}

double qp_number_diff(std::int64_t j, const DeformationParams& params) {
    if (j < 0) throw_domain("qp_number_diff requires j >= 0");
    if (params.is_classical() || j == 0) return 1.0;

    const double a = params.phi_cos_tau();
    const double u = params.phi_sin_tau();
    const double jd = static_cast<double>(j);

    if (params.family() == Family::Real) {
        // c_j = e^{ja} [ sinh(ju)/sinh(u) * (cosh u - e^{-a}) + cosh(ju) ],
        // with cosh u - e^{-a} = 2 sinh^2(u/2) - expm1(-a). For tiny u this
        // form is exact where the two-term split below would cancel.
        if (std::abs(u) < kSmallArgCrossover && std::abs(jd * u) < 350.0) {
            const double w_num = 2.0 * std::sinh(0.5 * u) * std::sinh(0.5 * u) - std::expm1(-a);
            const double ratio = std::abs(jd * u) < 1e-4 ? ratio_taylor(jd, u, +1.0)
                                                         : std::sinh(jd * u) / std::sinh(u);
            return std::exp(jd * a) * (ratio * w_num + std::cosh(jd * u));
        }
        // Two-term geometric form c_j = alpha q^j + beta p^j, grouped so
        // neither factor overflows before the value itself does.
        const RealCoeffs cf = real_family_coeffs(a, u);
        return cf.amp_q * std::exp(jd * (a + u)) + cf.amp_p * std::exp(jd * (a - u));
    }

    // c_j = e^{ja} [ sin(ju)/sin(u) * (cos u - e^{-a}) + cos(ju) ].
    const double w_num = -2.0 * std::sin(0.5 * u) * std::sin(0.5 * u) - std::expm1(-a);
    const double ratio = (std::abs(u) < kSmallArgCrossover && std::abs(jd * u) < 1e-4)
                             ? ratio_taylor(jd, u, -1.0)
                             : std::sin(jd * u) / std::sin(u);
    return std::exp(jd * a) * (ratio * w_num + std::cos(jd * u));
}

double CoeffEnvelope::growth_log_rate() const noexcept {
    double rate = -std::numeric_limits<double>::infinity();
    if (amp_hi > 0.0) rate = std::max(rate, log_rate_hi);
    if (amp_lo > 0.0) rate = std::max(rate, log_rate_lo);
    return rate;
}

double CoeffEnvelope::at(std::int64_t j) const noexcept {
    const double jd = static_cast<double>(j);
    double v = 0.0;
    if (amp_hi > 0.0) v += amp_hi * std::exp(jd * log_rate_hi);
    if (amp_lo > 0.0) v += amp_lo * std::exp(jd * log_rate_lo);
    return v;
}

CoeffEnvelope qp_number_diff_envelope(const DeformationParams& params) {
    CoeffEnvelope env;
    if (params.is_classical()) {
        env.amp_hi = 1.0;
        env.log_rate_hi = 0.0;
        return env;
    }
    const double a = params.phi_cos_tau();
    const double u = params.phi_sin_tau();

    if (params.family() == Family::Complex) {
        // c_j = 2 Re(alpha q^j), alpha = (q-1)/(q-p).
        const std::complex<double> q = params.q();
        const double alpha_mag = std::abs(q - 1.0) / (2.0 * std::exp(a) * std::abs(std::sin(u)));
        env.amp_hi = 2.0 * alpha_mag;
        env.log_rate_hi = a;
        return env;
    }

    // Real family: c_j = alpha q^j + beta p^j.
    const RealCoeffs cf = real_family_coeffs(a, u);
    env.amp_hi = std::abs(cf.amp_q);
    env.log_rate_hi = a + u;
    env.amp_lo = std::abs(cf.amp_p);
    env.log_rate_lo = a - u;
    return env;
}

} // namespace qpstat
