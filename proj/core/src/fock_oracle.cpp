#include "qpstat/fock_oracle.hpp"

#include <cmath>
#include <sstream>

namespace qpstat {

namespace {

// Max |q|,|p|,1 — the base of the worst-case growth of diagonal observables.
double growth_base(const DeformationParams& params) {
    return std::max(1.0, std::exp(params.log_max_abs_qp()));
}

template <typename T>
struct Acc {
    T sum{};
    double window[16] = {};
    int widx = 0;

    void add(std::int64_t n, T term) {
        sum += term;
        window[widx] = std::abs(term);
        widx = (widx + 1) % 16;
        (void)n;
    }
    double window_max() const {
        double m = 0.0;
        for (double w : window) m = std::max(m, w);
        return m;
    }
};

template <typename T, typename ObsFn>
void run_trace(double eta, const ObsFn& obs, int degree, const DeformationParams& params,
               double tol, std::size_t n_max, T& value_out, double& bound_out,
               std::size_t& terms_out) {
    const double y = std::exp(-eta);
    const double r = std::pow(growth_base(params), degree) * y;
    if (!(eta > 0.0) || !(r < 1.0)) {
        std::ostringstream os;
        os << "fock oracle: trace diverges (eta = " << eta << ", ratio = " << r << ", domain "
           << to_string(params.domain()) << ")";
        throw ConvergenceError(os.str());
    }
    const double prefactor = -std::expm1(-eta); // 1 - e^{-eta}

    Acc<T> acc;
    double weight = 1.0; // y^n
    for (std::int64_t n = 0; n < static_cast<std::int64_t>(n_max); ++n) {
        if (n > 0) weight *= y;
        acc.add(n, static_cast<T>(weight * obs(n)));
        if (n >= 15) {
            // Factor 2 absorbs oscillation of the complex-family observables
            // against the 16-term window envelope.
            const double bound = 2.0 * prefactor * acc.window_max() * r / (1.0 - r);
            if (bound <= tol) {
                value_out = prefactor * acc.sum;
                bound_out = bound;
                terms_out = static_cast<std::size_t>(n + 1);
                return;
            }
        }
    }
    throw CapExceeded("fock oracle: n_max cap exceeded before the bound reached tol",
                      std::abs(prefactor * acc.sum), tol);
}

} // namespace

TraceResult trace_average(double eta, const std::function<double(std::int64_t)>& obs, int degree,
                          const DeformationParams& params, double tol, std::size_t n_max) {
    TraceResult r{0.0, 0.0, 0};
    run_trace<double>(eta, obs, degree, params, tol, n_max, r.value, r.truncation_bound,
                      r.terms_used);
    return r;
}

TraceResultC trace_average_complex(double eta,
                                   const std::function<std::complex<double>(std::int64_t)>& obs,
                                   int degree, const DeformationParams& params, double tol,
                                   std::size_t n_max) {
    TraceResultC r{{0.0, 0.0}, 0.0, 0};
    run_trace<std::complex<double>>(eta, obs, degree, params, tol, n_max, r.value,
                                    r.truncation_bound, r.terms_used);
    return r;
}

TraceResult oracle_bose_factor(double eta, const DeformationParams& params, double tol,
                               std::size_t n_max) {
    return trace_average(
        eta, [&params](std::int64_t n) { return qp_number(static_cast<double>(n), params); }, 1,
        params, tol, n_max);
}

TraceResult oracle_n2(double xi, const DeformationParams& params, double tol,
                      std::size_t n_max) {
    return trace_average(
        xi,
        [&params](std::int64_t n) {
            const double v = qp_number(static_cast<double>(n), params);
            return v * v;
        },
        2, params, tol, n_max);
}

TraceResultC oracle_qn(double xi, const DeformationParams& params, double tol,
                       std::size_t n_max) {
    const std::complex<double> q = params.q();
    return trace_average_complex(
        xi,
        [&params, q](std::int64_t n) {
            return std::pow(q, static_cast<double>(n)) * qp_number(static_cast<double>(n), params);
        },
        2, params, tol, n_max);
}

TraceResult oracle_g2(double xi, const DeformationParams& params, double tol,
                      std::size_t n_max) {
    const TraceResult f = oracle_bose_factor(xi, params, tol, n_max);
    const TraceResult n2 = oracle_n2(xi, params, tol, n_max);
    const TraceResultC qn = oracle_qn(xi, params, tol, n_max);

    const std::complex<double> p = params.p();
    const double qp = params.q_times_p();
    const std::complex<double> num = n2.value / p - qn.value / qp;
    const std::complex<double> g = num / (f.value * f.value);

    const double f2 = f.value * f.value;
    const double bound = (n2.truncation_bound / std::abs(p) + qn.truncation_bound / qp) / f2
                         + 2.0 * std::abs(num) / (f2 * std::abs(f.value)) * f.truncation_bound;
    // The residual imaginary part is itself truncation error and must sit
    // inside the propagated bound.
    if (std::abs(g.imag()) > bound + 1e-10 * std::max(1.0, std::abs(g.real())))
        throw ConvergenceError("oracle_g2: imaginary part did not cancel");
    return TraceResult{g.real(), bound, std::max({f.terms_used, n2.terms_used, qn.terms_used})};
}

double oracle_sigma_partial(double s, double beta_mu, const DeformationParams& params,
                            std::int64_t j_max) {
    if (j_max < 0) throw DomainError("oracle_sigma_partial: j_max must be >= 0");
    if (!(beta_mu <= 0.0)) throw DomainError("oracle_sigma_partial: requires beta*mu <= 0");
    double sum = 0.0;
    for (std::int64_t j = 0; j <= j_max; ++j) {
        const double coeff = qp_number(static_cast<double>(j + 1), params)
                             - qp_number(static_cast<double>(j), params);
        sum += std::exp(beta_mu * static_cast<double>(j + 1))
               * std::pow(static_cast<double>(j + 1), -s) * coeff;
    }
    return sum;
}

} // namespace qpstat
