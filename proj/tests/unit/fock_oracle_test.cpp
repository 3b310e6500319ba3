#include "doctest.h"

#include <cmath>

#include "qpstat/distribution.hpp"
#include "qpstat/fock_oracle.hpp"
#include "qpstat/photon.hpp"
#include "../support/test_support.hpp"

using namespace qpstat;
using qpstat::testing::Rng;
using qpstat::testing::sample_any_domain;
using qpstat::testing::sample_convergent_eta;
using qpstat::testing::sample_convergent_xi;

TEST_CASE("trace_average: classical anchors") {
    const auto classical = DeformationParams::classical();
    const auto occupancy = trace_average(
        1.0, [](std::int64_t n) { return static_cast<double>(n); }, 1, classical, 1e-10);
    CHECK(std::abs(occupancy.value - 1.0 / std::expm1(1.0)) <= occupancy.truncation_bound + 1e-12);

    Rng rng(401);
    for (int i = 0; i < 20; ++i) {
        const double eta = rng.uniform(0.05, 4.0);
        const auto norm = trace_average(
            eta, [](std::int64_t) { return 1.0; }, 0, classical, 1e-12);
        CHECK(std::abs(norm.value - 1.0) < 1e-12); // Boltzmann weights normalize
    }
}

TEST_CASE("trace_average: deformed observable matches the closed form") {
    const auto params = DeformationParams::from_qp(0.5, 0.25);
    const auto r = oracle_bose_factor(std::log(2.0), params, 1e-10);
    CHECK(std::abs(r.value - 1.0 / (1.5 * 1.75)) <= r.truncation_bound + 1e-11);
}

TEST_CASE("oracle moments: classical pinned values") {
    const auto classical = DeformationParams::classical();
    const auto n2 = oracle_n2(std::log(2.0), classical, 1e-9);
    CHECK(std::abs(n2.value - 3.0) < 1e-8);
    const auto g = oracle_g2(1.0, classical, 1e-9);
    CHECK(std::abs(g.value - 2.0) < 1e-8);
}

TEST_CASE("oracle vs closed forms across the five domains") {
    Rng rng(402);
    const double tol = 1e-9;
    for (DomainCase domain : testing::kAllDomains) {
        for (int i = 0; i < 40; ++i) {
            const auto params = testing::sample_domain(rng, domain);
            const double xi = sample_convergent_xi(rng, params);
            const PhotonMode mode(xi, 1.0);

            const auto f = oracle_bose_factor(xi, params, tol);
            CHECK(std::abs(f.value - bose_factor_at(xi, params)) <= f.truncation_bound + 1e-8);

            const auto n2 = oracle_n2(xi, params, tol);
            CHECK(std::abs(n2.value - mean_occupation_sq(mode, params))
                  <= n2.truncation_bound + 1e-8);

            const auto qn = oracle_qn(xi, params, tol);
            CHECK(std::abs(qn.value - mean_qn_occupation(mode, params))
                  <= qn.truncation_bound + 1e-8);

            const auto g = oracle_g2(xi, params, tol);
            CHECK(std::abs(g.value - g2(mode, params)) <= g.truncation_bound + 1e-8);
        }
    }
}

TEST_CASE("truncation bound soundness: tightening tol moves the value less than the bound") {
    Rng rng(403);
    for (int i = 0; i < 60; ++i) {
        const auto params = sample_any_domain(rng);
        const double eta = sample_convergent_eta(rng, params);
        const auto loose = oracle_bose_factor(eta, params, 1e-4);
        const auto tight = oracle_bose_factor(eta, params, 1e-12);
        CHECK(std::abs(loose.value - tight.value) <= loose.truncation_bound + 1e-13);
    }
}

TEST_CASE("oracle_sigma_partial: anchors") {
    const auto classical = DeformationParams::classical();
    // j = 0 term is e^{beta mu} ([[1]] - [[0]]) = e^{beta mu}
    CHECK(oracle_sigma_partial(1.5, -0.3, classical, 0) == doctest::Approx(std::exp(-0.3)));

    // classical partial sum at J = 1e6: zeta(3/2) minus the integral tail
    const double partial = oracle_sigma_partial(1.5, 0.0, classical, 1'000'000);
    CHECK(std::abs(partial - 2.61037535) < 1e-6);
    CHECK(std::abs(partial - 2.6124) < 2.1e-3); // the slow ~J^{-1/2} tail

    // RealReciprocal growth: partial sums blow past any fixed bound
    const auto recip = DeformationParams::from_qp(0.9, 1.0 / 0.9);
    CHECK(oracle_sigma_partial(1.5, 0.0, recip, 500) > 1e3);
}
