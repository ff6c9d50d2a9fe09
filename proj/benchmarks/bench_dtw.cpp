#include "tempobench/classifiers.hpp"
#include "tempobench/prng.hpp"

#include <benchmark/benchmark.h>

using namespace tempobench;

namespace {

TimeSeries random_series(Prng& rng, std::size_t n) {
    TimeSeries series(n);
    for (auto& v : series) {
        v = rng.next_gaussian(0.0, 1.0);
    }
    return series;
}

void BM_DtwFullBand(benchmark::State& state) {
    Prng rng(1);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_series(rng, n);
    const auto y = random_series(rng, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dtw_distance(x, y, 1.0));
    }
    state.SetComplexityN(state.range(0));
}

void BM_DtwBanded(benchmark::State& state) {
    Prng rng(2);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_series(rng, n);
    const auto y = random_series(rng, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dtw_distance(x, y, 0.1));
    }
    state.SetComplexityN(state.range(0));
}

void BM_DtwEarlyAbandon(benchmark::State& state) {
    // Cutoff from a plausible 1NN best-so-far: half the typical distance.
    Prng rng(3);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_series(rng, n);
    const auto y = random_series(rng, n);
    const double cutoff = dtw_distance(x, y, 1.0) / 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dtw_distance_bounded(x, y, 1.0, cutoff));
    }
}

void BM_SquaredEuclidean(benchmark::State& state) {
    Prng rng(4);
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_series(rng, n);
    const auto y = random_series(rng, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(squared_euclidean(x, y));
    }
}

} // namespace

BENCHMARK(BM_DtwFullBand)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_DtwBanded)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oN);
BENCHMARK(BM_DtwEarlyAbandon)->Arg(128)->Arg(256);
BENCHMARK(BM_SquaredEuclidean)->Arg(128)->Arg(512);
