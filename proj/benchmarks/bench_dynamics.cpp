#include <benchmark/benchmark.h>

#include <cmath>

#include "hybridgate/dynamics.hpp"

using namespace hybridgate::dynamics;

namespace {

LambdaParams raman() {
    LambdaParams p;
    p.omega_p = 2e7;
    p.omega_s = 2e7;
    p.delta_e = 2e8;
    return p;
}

void BM_Rk4TwoLevel(benchmark::State& state) {
    const TwoLevelParams p{1e6, 0.0};
    const auto h = two_level_hamiltonian(p);
    const StateVector psi0(Eigen::Vector2cd(1.0, 0.0), {"a", "g"});
    const TimeGrid grid{0.0, M_PI / 1e6, static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(propagate(h, psi0, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Rk4TwoLevel)->Arg(1000)->Arg(10000);

void BM_RamanPiPulse(benchmark::State& state) {
    const auto p = raman();
    const double duration = pi_pulse_duration({effective_rabi(p).omega_r, 0.0});
    SimulationOptions options;
    options.step_safety = 0.01 * static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate_raman_pi_pulse(p, duration, options));
}
BENCHMARK(BM_RamanPiPulse)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Stirap(benchmark::State& state) {
    const auto pump = PulseEnvelope::gaussian_centered(1e6, 15e-6, 30e-6);
    const auto stokes = PulseEnvelope::gaussian_centered(1e6, -15e-6, 30e-6);
    for (auto _ : state) benchmark::DoNotOptimize(simulate_stirap(pump, stokes, LambdaParams{}));
}
BENCHMARK(BM_Stirap)->Unit(benchmark::kMillisecond);

} // namespace
