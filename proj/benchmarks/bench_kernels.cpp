#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fracbeam/fracops.hpp"
#include "fracbeam/lintegrate.hpp"

using namespace fracbeam;

namespace {

std::vector<double> samples(std::size_t n) {
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = std::sin(1e-3 * static_cast<double>(i));
    return q;
}

}  // namespace

// Single memory sum, the inner kernel of every time step.
static void BM_L1History(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto w = l1_weights(FracOrder(0.5), n + 1);
    const auto d = samples(n);
    for (auto _ : state) benchmark::DoNotOptimize(l1_history(w.b, d));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_L1History)->RangeMultiplier(10)->Range(1000, 1000000);

static void BM_CaputoL1All(benchmark::State& state) {
    const auto q = samples(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(caputo_l1_all(q, 1e-3, FracOrder(0.5)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CaputoL1All)->RangeMultiplier(2)->Range(1 << 10, 1 << 14)->Complexity(benchmark::oNSquared);

static void BM_IntegrateForced(benchmark::State& state) {
    OscillatorParams p;
    p.alpha = FracOrder(0.5);
    const TimeGrid grid(1e-3, static_cast<std::size_t>(state.range(0)));
    const auto ex = Excitation::harmonic_base(0.01, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(integrate(p, ex, 0.0, 0.0, grid));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntegrateForced)
    ->RangeMultiplier(2)
    ->Range(1 << 12, 1 << 15)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oNSquared);

BENCHMARK_MAIN();
