#include <benchmark/benchmark.h>

#include <random>

#include "ahosm/analysis.hpp"
#include "ahosm/scenario.hpp"
#include "ahosm/simulate.hpp"

using namespace ahosm;

namespace {

const ChainConfig& chain3() {
    static const ChainConfig cfg = make_chain_config(3, 1.0, -0.25, {1.0, 2.0, 5.0});
    return cfg;
}

std::vector<StateVector> random_states(int n) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> nd;
    std::vector<StateVector> out(n, StateVector(3));
    for (auto& z : out)
        for (auto& x : z) x = nd(rng);
    return out;
}

void BM_HongU0(benchmark::State& state) {
    const auto states = random_states(1024);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hong_u0(states[i++ & 1023], chain3()));
    }
}
BENCHMARK(BM_HongU0);

void BM_LyapunovV1(benchmark::State& state) {
    const auto states = random_states(1024);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lyapunov_v1(states[i++ & 1023], chain3()));
    }
}
BENCHMARK(BM_LyapunovV1);

void BM_ControlEval(benchmark::State& state) {
    const auto states = random_states(1024);
    const auto adap = make_adaptive_config(0.01, 1.0, GainSpec{GainFamily::logarithmic});
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(control_u(states[i & 1023], 0.1 * (i & 255), chain3(), adap));
        ++i;
    }
}
BENCHMARK(BM_ControlEval);

void BM_SimulateOrder3(benchmark::State& state) {
    auto sc = builtin_scenario("paper-order3");
    sc.t_final = state.range(0) * sc.dt;
    sc.record_stride = 100;
    const auto spec = to_simulation_spec(sc);
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(spec));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateOrder3)->Arg(1000)->Arg(10000);

void BM_LevelSetSample(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_level_set(1.0, chain3(), state.range(0), 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LevelSetSample)->Arg(256)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
