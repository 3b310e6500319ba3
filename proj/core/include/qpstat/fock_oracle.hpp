#pragma once

#include <complex>
#include <cstdint>
#include <functional>

#include "qpstat/deformation.hpp"

namespace qpstat {

/// Brute-force verification path: every statistical average evaluated as an
/// explicit truncated sum over Fock-state eigenvalues,
///   (1 - e^{-eta}) sum_{n=0}^{N} e^{-eta n} obs(n),
/// with a geometric truncation bound. The oracle calls nothing but
/// qp_number, so it stays independent of every closed form it checks.

struct TraceResult {
    double value;
    double truncation_bound;
    std::size_t terms_used;
};

struct TraceResultC {
    std::complex<double> value;
    double truncation_bound;
    std::size_t terms_used;
};

/// degree is the observable's growth order k: |obs(n)| = O(max(|q|,|p|,1)^{k n}).
/// The truncation bound uses the worst-case term ratio max(|q|,|p|,1)^k e^{-eta}.
TraceResult trace_average(double eta, const std::function<double(std::int64_t)>& obs,
                          int degree, const DeformationParams& params, double tol,
                          std::size_t n_max = 1'000'000);

TraceResultC trace_average_complex(double eta,
                                   const std::function<std::complex<double>(std::int64_t)>& obs,
                                   int degree, const DeformationParams& params, double tol,
                                   std::size_t n_max = 1'000'000);

/// <a+ a>           : obs(n) = [[n]]
TraceResult oracle_bose_factor(double eta, const DeformationParams& params, double tol,
                               std::size_t n_max = 1'000'000);
/// <(a+ a)^2>       : obs(n) = [[n]]^2
TraceResult oracle_n2(double xi, const DeformationParams& params, double tol,
                      std::size_t n_max = 1'000'000);
/// <q^N a+ a>       : obs(n) = q^n [[n]]  (complex for the complex family)
TraceResultC oracle_qn(double xi, const DeformationParams& params, double tol,
                       std::size_t n_max = 1'000'000);
/// g2 assembled as (p^{-1} <(a+a)^2> - (qp)^{-1} <q^N a+a>) / <a+a>^2 with a
/// propagated truncation bound.
TraceResult oracle_g2(double xi, const DeformationParams& params, double tol,
                      std::size_t n_max = 1'000'000);

/// J-term partial sum of the deformed zeta series (through j = J inclusive),
/// formed from literal qp_number differences. Partial sums always exist;
/// used for convergence diagnosis and divergence regression tests.
double oracle_sigma_partial(double s, double beta_mu, const DeformationParams& params,
                            std::int64_t j_max);

} // namespace qpstat
