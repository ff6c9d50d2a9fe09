#include "tempobench/classifiers.hpp"
#include "tempobench/synth.hpp"
#include "tempobench/transforms.hpp"

#include <benchmark/benchmark.h>

using namespace tempobench;

namespace {

SplitDataset bench_dataset(std::size_t n) {
    SynthSpec spec;
    spec.kind = SynthKind::temporal;
    spec.length = n;
    spec.pattern_width = n / 8;
    spec.train_size = 50;
    spec.test_size = 50;
    spec.seed = 11;
    return generate(spec);
}

void BM_AugmentDataset(benchmark::State& state) {
    const auto dataset = bench_dataset(static_cast<std::size_t>(state.range(0)));
    AugmentSpec spec;
    spec.l_fraction = 0.3;
    spec.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(augment_dataset(dataset, spec));
    }
}

void BM_SharedPermutation(benchmark::State& state) {
    const auto dataset = bench_dataset(static_cast<std::size_t>(state.range(0)));
    const auto perm = make_permutation(dataset.series_length, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_shared_permutation(dataset, perm));
    }
}

void BM_KernelFeatures(benchmark::State& state) {
    const auto dataset = bench_dataset(128);
    const auto kernels = [&] {
        Prng rng(5);
        return make_conv_kernels(dataset.series_length, static_cast<int>(state.range(0)), rng);
    }();
    for (auto _ : state) {
        benchmark::DoNotOptimize(conv_feature_matrix(dataset.train, kernels));
    }
}

void BM_ShapeletSelect(benchmark::State& state) {
    const auto dataset = bench_dataset(128);
    for (auto _ : state) {
        Prng rng(6);
        benchmark::DoNotOptimize(
            shapelet_select(dataset.train, static_cast<int>(state.range(0)), 20, rng));
    }
}

} // namespace

BENCHMARK(BM_AugmentDataset)->Arg(128)->Arg(512);
BENCHMARK(BM_SharedPermutation)->Arg(128)->Arg(512);
BENCHMARK(BM_KernelFeatures)->Arg(100)->Arg(500);
BENCHMARK(BM_ShapeletSelect)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
