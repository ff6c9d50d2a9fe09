#include "tempobench/prng.hpp"
#include "tempobench/stats.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace tempobench;

namespace {

std::pair<std::vector<double>, std::vector<double>> paired_sample(std::size_t n) {
    Prng rng(9);
    std::vector<double> a(n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.next_uniform();
        b[i] = rng.next_uniform();
    }
    return {a, b};
}

void BM_WilcoxonExact(benchmark::State& state) {
    const auto [a, b] = paired_sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wilcoxon_signed_rank(a, b, WilcoxonAlternative::two_sided,
                                                      static_cast<std::size_t>(state.range(0))));
    }
}

void BM_WilcoxonNormalApprox(benchmark::State& state) {
    const auto [a, b] = paired_sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wilcoxon_signed_rank(a, b, WilcoxonAlternative::two_sided, 0));
    }
}

void BM_SignificanceCliques(benchmark::State& state) {
    Prng rng(10);
    const auto k = static_cast<std::size_t>(state.range(0));
    std::vector<std::vector<double>> accuracies(k, std::vector<double>(30));
    for (auto& row : accuracies) {
        for (auto& v : row) {
            v = rng.next_uniform();
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(significance_cliques(accuracies, 0.05));
    }
}

} // namespace

BENCHMARK(BM_WilcoxonExact)->DenseRange(8, 20, 4);
BENCHMARK(BM_WilcoxonNormalApprox)->Arg(50)->Arg(200);
BENCHMARK(BM_SignificanceCliques)->Arg(4)->Arg(7)->Arg(12);
