#include <benchmark/benchmark.h>

#include "dmotto/audit.hpp"
#include "dmotto/sweep.hpp"

namespace {

void BM_Fig1Sweep(benchmark::State& state) {
    const dmotto::SweepSpec s = dmotto::figure_preset(dmotto::FigureId::Fig1);
    const auto workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dmotto::run_sweep(s, workers));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(s.size()));
}
BENCHMARK(BM_Fig1Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FullAudit(benchmark::State& state) {
    dmotto::AuditConfig cfg;
    cfg.workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dmotto::full_audit(cfg));
}
BENCHMARK(BM_FullAudit)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
