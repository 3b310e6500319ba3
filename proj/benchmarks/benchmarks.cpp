#include <benchmark/benchmark.h>

#include <cmath>

#include "qpstat/condensation.hpp"
#include "qpstat/distribution.hpp"
#include "qpstat/fock_oracle.hpp"
#include "qpstat/photon.hpp"
#include "qpstat/series.hpp"
#include "qpstat/thermo.hpp"

namespace {

using namespace qpstat;

const DeformationParams kGeneric = DeformationParams::from_qp(0.6, 0.8);
const DeformationParams kUnitCircle =
    DeformationParams::from_phi_tau(1.0, 1.57079632679489661923, Family::Complex);

void BM_qp_number(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qp_number(x, kGeneric));
        x = x < 40.0 ? x + 0.5 : 0.0;
    }
}
BENCHMARK(BM_qp_number);

void BM_bose_factor(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bose_factor_at(0.8, kGeneric));
}
BENCHMARK(BM_bose_factor);

void BM_bose_factor_series(benchmark::State& state) {
    const ModeState mode(1.0, 0.0, 0.8);
    for (auto _ : state)
        benchmark::DoNotOptimize(bose_factor_series(mode, kGeneric, 1e-10).value);
}
BENCHMARK(BM_bose_factor_series);

void BM_sigma_classical(benchmark::State& state) {
    const auto classical = DeformationParams::classical();
    for (auto _ : state)
        benchmark::DoNotOptimize(sigma(1.5, -0.3, classical).value);
}
BENCHMARK(BM_sigma_classical);

void BM_sigma_deformed(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sigma0(1.5, kGeneric).value);
}
BENCHMARK(BM_sigma_deformed);

void BM_sigma_unit_circle(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sigma0(1.5, kUnitCircle).value);
}
BENCHMARK(BM_sigma_unit_circle);

void BM_j_integral_quadrature(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(j_integral_quadrature(0.5, 1.0, -0.4, kGeneric));
}
BENCHMARK(BM_j_integral_quadrature);

void BM_oracle_bose_factor(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_bose_factor(0.8, kGeneric, 1e-8).value);
}
BENCHMARK(BM_oracle_bose_factor);

void BM_g2(benchmark::State& state) {
    const PhotonMode mode(1.3, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(g2(mode, kGeneric));
}
BENCHMARK(BM_g2);

void BM_solve_mu(benchmark::State& state) {
    const GasSpec spec = GasSpec::reduced(3.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_mu(0.05, 1.0, spec, kGeneric).mu);
}
BENCHMARK(BM_solve_mu);

void BM_bose_temperature(benchmark::State& state) {
    const GasSpec spec = GasSpec::reduced(3.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(bose_temperature(1.0, spec, kGeneric));
}
BENCHMARK(BM_bose_temperature);

} // namespace

BENCHMARK_MAIN();
