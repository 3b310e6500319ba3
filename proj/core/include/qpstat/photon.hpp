#pragma once

#include <complex>

#include "qpstat/deformation.hpp"

namespace qpstat {

/// One photon mode at inverse temperature beta. In reduced units hbar = 1 so
/// xi = beta * omega; SI callers pass omega pre-multiplied by hbar.
struct PhotonMode {
    double omega;
    double beta;

    PhotonMode(double omega_, double beta_);

    double xi() const noexcept { return beta * omega; }
};

/// Moment convergence: max(|q|^2, |q p|, |p|^2) < e^xi, enforced with a
/// 1e-12 margin to keep evaluations away from the poles.
bool g2_convergence_ok(const PhotonMode& mode, const DeformationParams& params);

/// <a+ a>: the deformed Bose factor evaluated at eta = xi.
double mean_occupation(const PhotonMode& mode, const DeformationParams& params);

/// <(a+ a)^2> = (e^xi - 1)(e^xi + qp) / ((e^xi - q^2)(e^xi - qp)(e^xi - p^2)),
/// real arithmetic in every admissible domain.
double mean_occupation_sq(const PhotonMode& mode, const DeformationParams& params);

/// <q^N a+ a> = q (e^xi - 1) / ((e^xi - q^2)(e^xi - qp)); complex for the
/// complex family — only g2 itself is contractually real.
std::complex<double> mean_qn_occupation(const PhotonMode& mode, const DeformationParams& params);

/// Second-order correlation, closed form
///   g2 = (q+p) (e^xi - q)^2 (e^xi - p)^2
///        / ((e^xi - 1)(e^xi - q^2)(e^xi - qp)(e^xi - p^2)).
double g2(const PhotonMode& mode, const DeformationParams& params);

/// The moment-assembly route p^{-1}<(a+a)^2>/f^2 - (qp)^{-1}<q^N a+a>/f^2,
/// kept as the verification path for the closed form.
double g2_assembly(const PhotonMode& mode, const DeformationParams& params);

/// Low-temperature / high-energy limit g2 -> q + p.
double g2_asymptote(const DeformationParams& params);

} // namespace qpstat
