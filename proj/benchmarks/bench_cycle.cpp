#include <benchmark/benchmark.h>

#include "dmotto/cycle.hpp"
#include "dmotto/local.hpp"

namespace {

const dmotto::BathSpec kBaths{2.0, 1.0};

void BM_RunCycleVaryDM(benchmark::State& state) {
    const dmotto::VaryDM p{1.0, 4.0, 0.5, 2.0};
    for (auto _ : state) benchmark::DoNotOptimize(dmotto::run_cycle(p, kBaths));
}
BENCHMARK(BM_RunCycleVaryDM);

void BM_RunCycleVaryField(benchmark::State& state) {
    const dmotto::VaryField p{1.0, 0.0, 8.0, 6.0};
    for (auto _ : state) benchmark::DoNotOptimize(dmotto::run_cycle(p, kBaths));
}
BENCHMARK(BM_RunCycleVaryField);

void BM_LocalCycle(benchmark::State& state) {
    const dmotto::VaryField p{1.0, 0.0, 8.0, 6.0};
    for (auto _ : state) benchmark::DoNotOptimize(dmotto::local_cycle(p, kBaths));
}
BENCHMARK(BM_LocalCycle);

}  // namespace
