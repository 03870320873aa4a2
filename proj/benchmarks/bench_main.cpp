#include <benchmark/benchmark.h>

#include "nonmark/blp.hpp"
#include "nonmark/dynamics.hpp"
#include "nonmark/generator.hpp"
#include "nonmark/rhp.hpp"

using namespace nonmark;

namespace {

ModelParams params(double p) { return ModelParams::dimensionless(1.0, p, 0.5, 0.3, 1.0); }

GeneratorSpec spec_for(GeneratorKind kind, double p) { return GeneratorSpec::driven(kind, params(p)); }

} // namespace

static void BM_SecularGenerator(benchmark::State& state) {
    const ModelParams m = params(10.0);
    double T = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(secular_generator(T, m));
        T += 1e-3;
    }
}
BENCHMARK(BM_SecularGenerator);

static void BM_FullGenerator(benchmark::State& state) {
    const ModelParams m = params(1.0);
    double T = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(full_generator(T, m));
        T += 1e-3;
    }
}
BENCHMARK(BM_FullGenerator);

static void BM_GNumeric(benchmark::State& state) {
    const Superop L = full_generator(3.0, params(1.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(g_numeric(L));
    }
}
BENCHMARK(BM_GNumeric);

static void BM_PropagatorTable(benchmark::State& state) {
    const auto spec = spec_for(GeneratorKind::Secular, 10.0);
    const auto grid = uniform_grid(static_cast<double>(state.range(0)), 1e-3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagator_table(spec, grid));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_PropagatorTable)->Arg(5)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_PairObjective(benchmark::State& state) {
    const auto spec = spec_for(GeneratorKind::Secular, 10.0);
    const auto grid = uniform_grid(30.0, 1e-3);
    const PairObjective objective(spec, grid);
    const BlochVector r1(0.0, 0.0, 1.0), r2(0.0, 0.0, -1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(objective(r1, r2));
    }
}
BENCHMARK(BM_PairObjective)->Unit(benchmark::kMicrosecond);

static void BM_BlpMeasure(benchmark::State& state) {
    const auto spec = spec_for(GeneratorKind::Secular, 10.0);
    const auto grid = uniform_grid(30.0, 1e-3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(blp_measure(spec, grid));
    }
}
BENCHMARK(BM_BlpMeasure)->Unit(benchmark::kMillisecond);

static void BM_RhpMeasure(benchmark::State& state) {
    const auto spec = spec_for(GeneratorKind::Secular, 10.0);
    const auto grid = uniform_grid(30.0, 1e-2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rhp_measure(spec, grid));
    }
}
BENCHMARK(BM_RhpMeasure)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
