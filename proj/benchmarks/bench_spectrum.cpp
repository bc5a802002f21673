#include <benchmark/benchmark.h>

#include "dmotto/spectrum.hpp"

namespace {

const dmotto::SystemParams kParams{1.0, 0.7, 4.0};

void BM_AnalyticSpectrum(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(dmotto::analytic_spectrum(kParams));
}
BENCHMARK(BM_AnalyticSpectrum);

void BM_NumericSpectrum(benchmark::State& state) {
    const dmotto::Matrix4 h = dmotto::build_hamiltonian(kParams);
    for (auto _ : state) benchmark::DoNotOptimize(dmotto::numeric_spectrum(h));
}
BENCHMARK(BM_NumericSpectrum);

void BM_GibbsState(benchmark::State& state) {
    const dmotto::Spectrum s = dmotto::analytic_spectrum(kParams);
    for (auto _ : state) benchmark::DoNotOptimize(dmotto::gibbs_state(s, 2.0));
}
BENCHMARK(BM_GibbsState);

}  // namespace
