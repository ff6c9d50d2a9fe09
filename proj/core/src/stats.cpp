#include "tempobench/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace tempobench {

namespace {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Average ranks (1-based) of |d| values, ties averaged. Returns doubled
/// ranks, which are always integers, so the exact enumeration can work in
/// integer arithmetic.
std::vector<std::int64_t> doubled_ranks(const std::vector<double>& abs_d) {
    const std::size_t n = abs_d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return abs_d[a] < abs_d[b]; });
    std::vector<std::int64_t> r2(n, 0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && abs_d[order[j + 1]] == abs_d[order[i]]) {
            ++j;
        }
        // Positions i..j share the average of ranks i+1..j+1.
        const std::int64_t doubled_avg = static_cast<std::int64_t>(i + 1 + j + 1);
        for (std::size_t k = i; k <= j; ++k) {
            r2[order[k]] = doubled_avg;
        }
        i = j + 1;
    }
    return r2;
}

/// Distribution of the doubled W+ statistic over all 2^n sign assignments:
/// counts[w] = number of assignments with doubled rank sum w.
std::vector<std::uint64_t> sign_assignment_counts(const std::vector<std::int64_t>& r2) {
    std::int64_t total = 0;
    for (const auto r : r2) {
        total += r;
    }
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(total) + 1, 0);
    counts[0] = 1;
    std::size_t reach = 0;
    for (const auto r : r2) {
        const auto step = static_cast<std::size_t>(r);
        for (std::size_t w = reach + 1; w-- > 0;) {
            if (counts[w] != 0) {
                counts[w + step] += counts[w];
            }
        }
        reach += step;
    }
    return counts;
}

} // namespace

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("mean: empty input");
    }
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("sample_std: needs at least 2 values");
    }
    const double m = mean(values);
    double sq = 0.0;
    for (const double v : values) {
        const double d = v - m;
        sq += d * d;
    }
    return std::sqrt(sq / static_cast<double>(values.size() - 1));
}

bool temporal_filter_rule(std::span<const double> original_runs,
                          std::span<const double> permuted_runs, double k_std) {
    if (original_runs.size() < 2 || permuted_runs.size() < 2) {
        throw std::invalid_argument("temporal_filter_rule: needs at least 2 runs per side");
    }
    const double mean_ori = mean(original_runs);
    const double mean_per = mean(permuted_runs);
    if (mean_per >= mean_ori) {
        return true;
    }
    const double spread = sample_std(original_runs) + sample_std(permuted_runs);
    return std::fabs(mean_ori - mean_per) <= k_std * spread;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    WilcoxonAlternative alternative,
                                    std::size_t exact_threshold) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("wilcoxon_signed_rank: paired samples must have equal non-zero length");
    }

    std::vector<double> abs_d;
    std::vector<bool> positive;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d == 0.0) {
            continue; // classic zero-handling: drop
        }
        abs_d.push_back(std::fabs(d));
        positive.push_back(d > 0.0);
    }

    WilcoxonResult result;
    result.n_effective = abs_d.size();
    if (abs_d.empty()) {
        result.degenerate = true;
        return result;
    }

    const auto r2 = doubled_ranks(abs_d);
    std::int64_t w2_observed = 0;
    for (std::size_t i = 0; i < r2.size(); ++i) {
        if (positive[i]) {
            w2_observed += r2[i];
        }
    }
    result.statistic = static_cast<double>(w2_observed) / 2.0;

    const std::size_t n = abs_d.size();
    // 2^n counts must fit in 64 bits.
    if (n <= std::min<std::size_t>(exact_threshold, 62)) {
        result.method = WilcoxonMethod::exact;
        const auto counts = sign_assignment_counts(r2);
        const double denom = std::ldexp(1.0, static_cast<int>(n));
        std::uint64_t ge = 0;
        std::uint64_t le = 0;
        for (std::size_t w = 0; w < counts.size(); ++w) {
            if (static_cast<std::int64_t>(w) >= w2_observed) {
                ge += counts[w];
            }
            if (static_cast<std::int64_t>(w) <= w2_observed) {
                le += counts[w];
            }
        }
        const double p_ge = static_cast<double>(ge) / denom;
        const double p_le = static_cast<double>(le) / denom;
        result.p_value = alternative == WilcoxonAlternative::a_greater
                             ? p_ge
                             : std::min(1.0, 2.0 * std::min(p_ge, p_le));
    } else {
        result.method = WilcoxonMethod::normal_approx;
        const double nd = static_cast<double>(n);
        const double mu = nd * (nd + 1.0) / 4.0;
        double variance = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0;
        // Tie correction: subtract (t^3 - t)/48 per group of equal |d|.
        std::vector<double> sorted_abs(abs_d);
        std::sort(sorted_abs.begin(), sorted_abs.end());
        std::size_t i = 0;
        while (i < sorted_abs.size()) {
            std::size_t j = i;
            while (j + 1 < sorted_abs.size() && sorted_abs[j + 1] == sorted_abs[i]) {
                ++j;
            }
            const double t = static_cast<double>(j - i + 1);
            variance -= (t * t * t - t) / 48.0;
            i = j + 1;
        }
        if (!(variance > 0.0)) {
            result.p_value = 1.0;
            return result;
        }
        const double sigma = std::sqrt(variance);
        const double w_plus = result.statistic;
        const double p_ge = normal_sf((w_plus - 0.5 - mu) / sigma);
        const double p_le = normal_cdf((w_plus + 0.5 - mu) / sigma);
        result.p_value = alternative == WilcoxonAlternative::a_greater
                             ? p_ge
                             : std::min(1.0, 2.0 * std::min(p_ge, p_le));
    }
    result.p_value = std::max(result.p_value, std::numeric_limits<double>::min());
    return result;
}

std::vector<double> mean_ranks(const std::vector<std::vector<double>>& accuracies) {
    const std::size_t classifiers = accuracies.size();
    if (classifiers < 2) {
        throw std::invalid_argument("mean_ranks: needs at least 2 classifiers");
    }
    const std::size_t datasets = accuracies.front().size();
    if (datasets == 0) {
        throw std::invalid_argument("mean_ranks: needs at least 1 dataset");
    }
    for (const auto& row : accuracies) {
        if (row.size() != datasets) {
            throw std::invalid_argument("mean_ranks: missing cell (ragged accuracy matrix)");
        }
    }

    std::vector<double> rank_sums(classifiers, 0.0);
    std::vector<std::size_t> order(classifiers);
    for (std::size_t d = 0; d < datasets; ++d) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            return accuracies[x][d] > accuracies[y][d]; // rank 1 = best
        });
        std::size_t i = 0;
        while (i < classifiers) {
            std::size_t j = i;
            while (j + 1 < classifiers && accuracies[order[j + 1]][d] == accuracies[order[i]][d]) {
                ++j;
            }
            const double avg_rank = static_cast<double>(i + 1 + j + 1) / 2.0;
            for (std::size_t k = i; k <= j; ++k) {
                rank_sums[order[k]] += avg_rank;
            }
            i = j + 1;
        }
    }
    for (auto& r : rank_sums) {
        r /= static_cast<double>(datasets);
    }
    return rank_sums;
}

namespace {

/// Maximal cliques of the non-significance graph (Bron-Kerbosch with pivot);
/// fine for the handful of classifiers compared here.
void bron_kerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x,
                   const std::vector<std::uint64_t>& adjacency,
                   std::vector<std::uint64_t>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    const std::uint64_t candidates = p | x;
    std::size_t pivot = 0;
    int best_cover = -1;
    for (std::size_t v = 0; v < adjacency.size(); ++v) {
        if (candidates & (1ULL << v)) {
            const int cover = std::popcount(p & adjacency[v]);
            if (cover > best_cover) {
                best_cover = cover;
                pivot = v;
            }
        }
    }
    std::uint64_t ext = p & ~adjacency[pivot];
    while (ext != 0) {
        const std::size_t v = static_cast<std::size_t>(std::countr_zero(ext));
        const std::uint64_t bit = 1ULL << v;
        bron_kerbosch(r | bit, p & adjacency[v], x & adjacency[v], adjacency, out);
        p &= ~bit;
        x |= bit;
        ext &= ~bit;
    }
}

} // namespace

CliqueReport significance_cliques(const std::vector<std::vector<double>>& accuracies, double alpha,
                                  bool holm) {
    const std::size_t k = accuracies.size();
    if (k < 2) {
        throw std::invalid_argument("significance_cliques: needs at least 2 classifiers");
    }
    if (k > 64) {
        throw std::invalid_argument("significance_cliques: more than 64 classifiers");
    }

    CliqueReport report;
    report.ranks = mean_ranks(accuracies);
    report.p_values.assign(k, std::vector<double>(k, 1.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const auto res = wilcoxon_signed_rank(accuracies[i], accuracies[j],
                                                  WilcoxonAlternative::two_sided);
            report.p_values[i][j] = res.p_value;
            report.p_values[j][i] = res.p_value;
        }
    }

    auto thresholded = report.p_values;
    if (holm) {
        struct Pair {
            double p;
            std::size_t i, j;
        };
        std::vector<Pair> pairs;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                pairs.push_back({report.p_values[i][j], i, j});
            }
        }
        std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            return std::tie(a.p, a.i, a.j) < std::tie(b.p, b.i, b.j);
        });
        double running = 0.0;
        for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
            const double adjusted = std::min(1.0, static_cast<double>(pairs.size() - idx) * pairs[idx].p);
            running = std::max(running, adjusted);
            thresholded[pairs[idx].i][pairs[idx].j] = running;
            thresholded[pairs[idx].j][pairs[idx].i] = running;
        }
    }

    std::vector<std::uint64_t> adjacency(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j && thresholded[i][j] >= alpha) {
                adjacency[i] |= 1ULL << j;
            }
        }
    }

    std::vector<std::uint64_t> masks;
    const std::uint64_t all = k == 64 ? ~0ULL : (1ULL << k) - 1;
    bron_kerbosch(0, all, 0, adjacency, masks);

    for (const std::uint64_t mask : masks) {
        std::vector<std::size_t> members;
        for (std::size_t v = 0; v < k; ++v) {
            if (mask & (1ULL << v)) {
                members.push_back(v);
            }
        }
        std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
            if (report.ranks[a] != report.ranks[b]) {
                return report.ranks[a] < report.ranks[b];
            }
            return a < b;
        });
        report.cliques.push_back(std::move(members));
    }
    std::sort(report.cliques.begin(), report.cliques.end(),
              [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
                  const double ra = report.ranks[a.front()];
                  const double rb = report.ranks[b.front()];
                  if (ra != rb) {
                      return ra < rb;
                  }
                  return a < b;
              });
    return report;
}

} // namespace tempobench
