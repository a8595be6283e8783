#include <benchmark/benchmark.h>

#include "hybridgate/budget.hpp"
#include "hybridgate/gate.hpp"

using namespace hybridgate;

namespace {

void BM_PhaseQuadrature(benchmark::State& state) {
    const double w = gate::dipole_dipole_rate(4.2, 500e-9);
    const auto schedule = gate::make_phase_gate_schedule(w, {1e6, 0.0});
    for (auto _ : state) benchmark::DoNotOptimize(gate::accumulated_phase_numeric(w, schedule).total);
}
BENCHMARK(BM_PhaseQuadrature);

void BM_RamseyMonteCarlo(benchmark::State& state) {
    const auto workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(budget::ramsey_contrast_mc(2.33e6, 3e-4, 227e-6, 100000, 1, workers));
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_RamseyMonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

} // namespace
BENCHMARK_MAIN();
