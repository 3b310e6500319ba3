#include "doctest.h"

#include <cmath>

#include "qpstat/condensation.hpp"
#include "../support/test_support.hpp"

using namespace qpstat;
using qpstat::testing::Rng;
using qpstat::testing::rel_err;
using qpstat::testing::sample_domain;

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

TEST_CASE("condenses: the anchor table") {
    const auto recip = DeformationParams::from_qp(0.8, 1.25);
    for (double d : {2.0, 3.0, 4.0}) CHECK(condenses(recip, d) == Condensation::No);

    const auto pone = DeformationParams::from_qp(0.5, 1.0);
    CHECK(condenses(pone, 2.0) == Condensation::Yes);
    CHECK(condenses(pone, 3.0) == Condensation::Yes);
    CHECK(condenses(DeformationParams::from_qp(1.5, 1.0), 3.0) == Condensation::No);

    CHECK(condenses(DeformationParams::classical(), 2.0) == Condensation::No);
    CHECK(condenses(DeformationParams::classical(), 3.0) == Condensation::Yes);

    const auto generic = DeformationParams::from_qp(0.6, 0.8);
    CHECK(condenses(generic, 2.0) == Condensation::Yes);
    CHECK(condenses(DeformationParams::from_qp(0.6, 1.4), 3.0) == Condensation::No);

    const auto cc_small = DeformationParams::from_qp(std::polar(0.7, 1.0), std::polar(0.7, -1.0));
    CHECK(condenses(cc_small, 3.0) == Condensation::Yes);
    const auto cc_big = DeformationParams::from_qp(std::polar(1.3, 1.0), std::polar(1.3, -1.0));
    CHECK(condenses(cc_big, 3.0) == Condensation::No);

    Rng rng(601);
    for (int i = 0; i < 20; ++i)
        CHECK(condenses(sample_domain(rng, DomainCase::UnitCircle), 3.0)
              == Condensation::Conditional);
}

TEST_CASE("condenses agrees with the numeric sigma0 verdict") {
    Rng rng(602);
    const double dims[3] = {2.0, 3.0, 4.0};
    for (int i = 0; i < 500; ++i) {
        const auto params = sample_domain(rng, testing::kAllDomains[rng.uniform_int(0, 4)]);
        const double dim = dims[rng.uniform_int(0, 2)];
        const Condensation verdict = condenses(params, dim);
        const SeriesResult sig = sigma0(0.5 * dim, params);
        if (verdict == Condensation::Yes)
            CHECK(sig.verdict == SeriesVerdict::ConvergedAbsolute);
        else if (verdict == Condensation::No)
            CHECK(sig.verdict == SeriesVerdict::Divergent);
    }
}

TEST_CASE("bose_temperature: anchors") {
    const GasSpec spec = GasSpec::reduced(3.0);
    const auto classical = DeformationParams::classical();

    // rho chosen so the bracket is exactly (k_B T_B)^{3/2} with T_B = 1
    const double rho = std::pow(kTwoPi, -1.5) * zeta(1.5);
    CHECK(rel_err(bose_temperature(rho, spec, classical), 1.0) < 1e-12);

    CHECK(bose_temperature(rho, spec, DeformationParams::from_qp(0.8, 1.25)) == 0.0);

    // T_B ~ rho^{2/D}
    const double tb1 = bose_temperature(rho, spec, classical);
    CHECK(rel_err(bose_temperature(2.0 * rho, spec, classical) / tb1, std::pow(2.0, 2.0 / 3.0))
          < 1e-12);
    CHECK(rel_err(bose_temperature(8.0 * rho, spec, classical) / tb1, 4.0) < 1e-12);
}

TEST_CASE("tb3_classical: the four-digit closed form") {
    const GasSpec spec = GasSpec::reduced(3.0);
    CHECK(rel_err(tb3_classical(2.612, spec), kTwoPi) < 1e-12);
    CHECK(rel_err(bose_temperature(2.612, spec, DeformationParams::classical()), kTwoPi) < 1e-3);
    CHECK_THROWS_AS((void)tb3_classical(1.0, GasSpec::reduced(2.0)), DomainError);
}

TEST_CASE("bose_temperature recovers tb3_classical as phi -> 0") {
    const GasSpec spec = GasSpec::reduced(3.0);
    const auto nearly = DeformationParams::from_phi_tau(-1e-7, 0.6, Family::Real);
    const SeriesResult sig = sigma0(1.5, nearly, 8e-4, 8'000'000);
    CHECK(sig.converged());
    const double bracket = 1.7 / (n0(spec) * gamma_fn(1.5) * sig.value);
    const double tb = std::pow(bracket, 2.0 / 3.0);
    CHECK(rel_err(tb, tb3_classical(1.7, spec)) < 1e-3);
}

TEST_CASE("bose_temperature: T_B continuous in phi within a domain") {
    const GasSpec spec = GasSpec::reduced(3.0);
    double prev = -1.0;
    for (int k = 0; k <= 10; ++k) {
        const double phi = -0.5 - 0.01 * k;
        const auto params = DeformationParams::from_phi_tau(phi, 0.7, Family::Real);
        const double tb = bose_temperature(1.0, spec, params);
        if (k > 0) CHECK(std::abs(tb - prev) < 0.05 * std::abs(prev));
        prev = tb;
    }
}

TEST_CASE("phase_map: rows, ordering, error isolation") {
    const GasSpec spec = GasSpec::reduced(3.0);
    std::vector<DeformationParams> grid;
    grid.push_back(DeformationParams::from_qp(0.8, 1.25));       // No
    grid.push_back(DeformationParams::from_qp(0.5, 1.0));        // Yes
    grid.push_back(DeformationParams::classical());              // Yes at D = 3
    grid.push_back(DeformationParams::from_phi_tau(1.0, 1.57079632679489661923,
                                                   Family::Complex)); // Conditional
    // tiny-angle unit circle: the conditional sum cannot stabilize
    grid.push_back(DeformationParams::from_phi_tau(0.001, 1.57079632679489661923,
                                                   Family::Complex));

    const auto rows = phase_map(grid, 1.0, spec);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].verdict == Condensation::No);
    CHECK(rows[0].t_b == 0.0);
    CHECK(rows[0].error.empty());
    CHECK(rows[1].verdict == Condensation::Yes);
    CHECK(rows[1].t_b > 0.0);
    CHECK(rows[2].verdict == Condensation::Yes);
    CHECK(rows[3].verdict == Condensation::Conditional);
    CHECK(rows[3].error.empty());
    CHECK(rows[3].t_b > 0.0);
    CHECK_FALSE(rows[4].error.empty()); // recorded in-row, scan not aborted

    // all-classical grid: uniform verdicts and equal T_B
    std::vector<DeformationParams> all_classical(4, DeformationParams::classical());
    const auto uniform_rows = phase_map(all_classical, 1.0, spec);
    for (const auto& row : uniform_rows) {
        CHECK(row.verdict == Condensation::Yes);
        CHECK(row.t_b == uniform_rows[0].t_b);
    }

    // verdicts symmetric under q <-> p
    Rng rng(603);
    for (int i = 0; i < 50; ++i) {
        const auto params = testing::sample_any_domain(rng);
        const auto swapped =
            DeformationParams::from_phi_tau(params.phi(), -params.tau(), params.family());
        CHECK(condenses(params, 3.0) == condenses(swapped, 3.0));
    }
}
