#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "qpstat/deformation.hpp"

namespace qpgas {

/// Deterministic sampling for the verify suite: raw mt19937_64 words mapped
/// to uniforms, so repeated invocations are byte-identical.
struct VerifyRng {
    std::mt19937_64 eng;

    explicit VerifyRng(std::uint64_t seed) : eng(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
    }
    bool coin() { return (eng() & 1u) != 0; }
};

inline qpstat::DeformationParams sample_domain(VerifyRng& rng, qpstat::DomainCase domain) {
    using qpstat::DeformationParams;
    using qpstat::DomainCase;
    using qpstat::Family;
    switch (domain) {
        case DomainCase::Classical:
            return DeformationParams::classical();
        case DomainCase::RealGeneric:
            for (;;) {
                const double q = rng.uniform(0.25, 1.75);
                const double p = rng.uniform(0.25, 1.75);
                if (std::abs(q - 1.0) < 0.03 || std::abs(p - 1.0) < 0.03) continue;
                if (std::abs(q - p) < 0.03 || std::abs(q * p - 1.0) < 0.03) continue;
                return DeformationParams::from_qp(q, p);
            }
        case DomainCase::RealReciprocal: {
            const double q = rng.coin() ? rng.uniform(0.35, 0.93) : rng.uniform(1.08, 2.6);
            return DeformationParams::from_qp(q, 1.0 / q);
        }
        case DomainCase::RealPOne:
            return DeformationParams::from_qp(rng.uniform(0.2, 0.93), 1.0);
        case DomainCase::ComplexConjugate:
            for (;;) {
                const double r = rng.uniform(0.35, 1.7);
                if (std::abs(r - 1.0) < 0.04) continue;
                const double theta = rng.uniform(0.25, 2.85);
                if (std::abs(theta - 3.14159265358979323846) < 0.08) continue;
                const std::complex<double> q = std::polar(r, theta);
                return DeformationParams::from_qp(q, std::conj(q));
            }
        case DomainCase::UnitCircle:
            for (;;) {
                const double theta = rng.uniform(0.3, 2.8);
                if (std::abs(theta - 3.14159265358979323846) < 0.1) continue;
                return DeformationParams::from_phi_tau(theta, 1.57079632679489661923,
                                                       Family::Complex);
            }
    }
    return qpstat::DeformationParams::classical();
}

inline double sample_eta(VerifyRng& rng, const qpstat::DeformationParams& params) {
    return std::max(0.0, params.log_max_abs_qp()) + rng.uniform(0.05, 2.5);
}

inline double sample_xi(VerifyRng& rng, const qpstat::DeformationParams& params) {
    return std::max(0.0, 2.0 * params.log_max_abs_qp()) + rng.uniform(0.1, 2.5);
}

} // namespace qpgas
