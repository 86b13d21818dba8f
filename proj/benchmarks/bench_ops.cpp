#include <benchmark/benchmark.h>

#include <numbers>

#include "fdlab/evolution.hpp"
#include "fdlab/extension.hpp"
#include "fdlab/spectral.hpp"
#include "fdlab/synth.hpp"

using namespace fdlab;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

ScalarField bench_field(int n) {
    return synth_smooth(TorusGrid::make(1, n, kTwoPi), 8, 1.0, 42);
}
} // namespace

static void FracLaplacian1d(benchmark::State& state) {
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    ScalarField f = bench_field(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(frac_laplacian(f, p));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(FracLaplacian1d)->RangeMultiplier(2)->Range(128, 4096)->Complexity();

static void HeatPropagate1d(benchmark::State& state) {
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    ScalarField f = bench_field(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(heat_propagate(f, 0.01, p));
}
BENCHMARK(HeatPropagate1d)->RangeMultiplier(2)->Range(128, 4096);

static void SolveExtension(benchmark::State& state) {
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    ScalarField f = bench_field(static_cast<int>(state.range(0)));
    GradedYGrid strip = make_graded_grid(1.0, static_cast<int>(state.range(1)),
                                         default_grading(p.a()));
    for (auto _ : state) benchmark::DoNotOptimize(solve_extension(f, p, strip));
}
BENCHMARK(SolveExtension)->Args({128, 64})->Args({256, 64})->Args({512, 96})->Args({512, 256});

static void EvolutionStep(benchmark::State& state) {
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    int n = static_cast<int>(state.range(0));
    TorusGrid g = TorusGrid::make(1, n, kTwoPi);
    HolderSynthConfig bc;
    bc.beta = 0.5;
    bc.terms = 5;
    bc.seed = 7;
    DriftField b = DriftField::synthesize(g, bc).scaled(0.1);
    ScalarField fz(g);
    EvolutionState st;
    st.u = bench_field(n);
    st.params = p;
    for (auto _ : state) {
        EvolutionState next = step(st, b, fz, 1e-3);
        benchmark::DoNotOptimize(next.u.values.data());
    }
}
BENCHMARK(EvolutionStep)->RangeMultiplier(2)->Range(128, 2048);

static void ModeOracle(benchmark::State& state) {
    FractionalParams p = FractionalParams::make(0.25, 0.2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(mode_ode_oracle(4, p, 12.0));
}
BENCHMARK(ModeOracle);

BENCHMARK_MAIN();
