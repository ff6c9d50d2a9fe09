#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "tempobench/prng.hpp"
#include "tempobench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace tempobench;

TEST_CASE("filter rule worked examples") {
    // Exact means/stds by construction: mean .90 std .01 and mean .87 std .01.
    const std::vector<double> ori = {0.89, 0.89, 0.90, 0.91, 0.91};
    const std::vector<double> per = {0.86, 0.86, 0.87, 0.88, 0.88};

    // Higher permuted mean flags regardless of spread.
    const std::vector<double> ori_low(5, 0.90);
    const std::vector<double> per_high(5, 0.92);
    CHECK(temporal_filter_rule(ori_low, per_high, 1.0));

    CHECK_FALSE(temporal_filter_rule(ori, per, 1.0)); // 0.03 > 0.02
    CHECK(temporal_filter_rule(ori, per, 2.0));       // 0.03 <= 0.04

    CHECK_THROWS_AS(temporal_filter_rule(std::vector<double>{0.9}, per, 1.0),
                    std::invalid_argument);
}

TEST_CASE("filter rule is monotone in k_std") {
    Prng rng(1);
    for (int round = 0; round < 200; ++round) {
        std::vector<double> a(5);
        std::vector<double> b(5);
        for (int i = 0; i < 5; ++i) {
            a[i] = rng.next_uniform();
            b[i] = rng.next_uniform();
        }
        bool previous = temporal_filter_rule(a, b, 0.25);
        for (const double k : {0.5, 1.0, 2.0, 4.0}) {
            const bool flagged = temporal_filter_rule(a, b, k);
            if (previous) {
                CHECK(flagged);
            }
            previous = flagged;
        }
    }
}

TEST_CASE("wilcoxon: five positive pairs give one-sided p = 1/32") {
    const std::vector<double> a = {0.9, 0.8, 0.95, 0.7, 0.85};
    const std::vector<double> b = {0.5, 0.6, 0.95 - 0.2, 0.45, 0.8};
    const auto result = wilcoxon_signed_rank(a, b, WilcoxonAlternative::a_greater);
    CHECK(result.method == WilcoxonMethod::exact);
    CHECK(result.n_effective == 5);
    CHECK(result.p_value == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
    CHECK(result.statistic == doctest::Approx(15.0));
}

TEST_CASE("wilcoxon: all zero differences is degenerate with p = 1") {
    const std::vector<double> same = {0.3, 0.5, 0.7};
    const auto result = wilcoxon_signed_rank(same, same, WilcoxonAlternative::two_sided);
    CHECK(result.degenerate);
    CHECK(result.p_value == 1.0);
    CHECK(result.n_effective == 0);
}

TEST_CASE("wilcoxon tails are a proper distribution: W+ >= 0 has probability 1") {
    // All differences negative: observed W+ = 0, so the upper tail covers
    // every one of the 2^n sign assignments exactly.
    const std::vector<double> a = {0.1, 0.2, 0.3, 0.4};
    const std::vector<double> b = {0.5, 0.6, 0.7, 0.8};
    const auto result = wilcoxon_signed_rank(a, b, WilcoxonAlternative::a_greater);
    CHECK(result.statistic == 0.0);
    CHECK(result.p_value == 1.0);
}

TEST_CASE("wilcoxon errors") {
    CHECK_THROWS_AS(wilcoxon_signed_rank(std::vector<double>{1.0}, std::vector<double>{},
                                         WilcoxonAlternative::two_sided),
                    std::invalid_argument);
    CHECK_THROWS_AS(wilcoxon_signed_rank(std::vector<double>{}, std::vector<double>{},
                                         WilcoxonAlternative::two_sided),
                    std::invalid_argument);
}

TEST_CASE("wilcoxon agrees with the brute-force enumeration oracle") {
    Prng rng(2);
    for (int round = 0; round < 300; ++round) {
        const auto n = static_cast<std::size_t>(rng.next_int(1, 12));
        std::vector<double> a(n);
        std::vector<double> b(n);
        for (std::size_t i = 0; i < n; ++i) {
            // A small discrete grid forces plenty of ties and zeros.
            a[i] = static_cast<double>(rng.next_int(0, 6)) / 4.0;
            b[i] = static_cast<double>(rng.next_int(0, 6)) / 4.0;
        }
        const auto oracle = testsupport::wilcoxon_brute_force(a, b);
        const auto greater = wilcoxon_signed_rank(a, b, WilcoxonAlternative::a_greater);
        const auto two_sided = wilcoxon_signed_rank(a, b, WilcoxonAlternative::two_sided);
        CHECK(greater.n_effective == oracle.n_effective);
        if (oracle.n_effective == 0) {
            CHECK(greater.degenerate);
            continue;
        }
        CHECK(greater.statistic == doctest::Approx(oracle.w_plus).epsilon(1e-14));
        CHECK(std::fabs(greater.p_value - oracle.p_greater) < 1e-12);
        CHECK(std::fabs(two_sided.p_value - oracle.p_two_sided) < 1e-12);
    }
}

TEST_CASE("normal approximation tracks the exact tail for n = 20") {
    Prng rng(3);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> a(20);
        std::vector<double> b(20);
        std::set<double> magnitudes;
        for (std::size_t i = 0; i < 20; ++i) {
            do {
                a[i] = rng.next_uniform();
                b[i] = rng.next_uniform();
            } while (a[i] == b[i] || !magnitudes.insert(std::fabs(a[i] - b[i])).second);
        }
        const auto exact = wilcoxon_signed_rank(a, b, WilcoxonAlternative::a_greater);
        const auto approx = wilcoxon_signed_rank(a, b, WilcoxonAlternative::a_greater, 0);
        CHECK(exact.method == WilcoxonMethod::exact);
        CHECK(approx.method == WilcoxonMethod::normal_approx);
        CHECK(std::fabs(exact.p_value - approx.p_value) < 0.01);
    }
}

TEST_CASE("exact tail probabilities are a proper distribution") {
    Prng rng(4);
    for (int round = 0; round < 50; ++round) {
        const auto n = static_cast<std::size_t>(rng.next_int(1, 10));
        std::vector<double> a(n);
        std::vector<double> b(n, 0.0);
        for (auto& v : a) {
            v = static_cast<double>(rng.next_int(1, 5)) / 4.0 *
                (rng.next_uniform() < 0.5 ? -1.0 : 1.0);
        }
        // P(W >= observed) + P(W <= observed) = 1 + P(W == observed), so the
        // two one-sided tails from swapped arguments interlock.
        const auto forward = wilcoxon_signed_rank(a, b, WilcoxonAlternative::a_greater);
        const auto backward = wilcoxon_signed_rank(b, a, WilcoxonAlternative::a_greater);
        const auto oracle = testsupport::wilcoxon_brute_force(a, b);
        std::uint64_t equal_count = 0;
        const std::uint64_t total = 1ULL << oracle.n_effective;
        // Count assignments hitting the observed statistic exactly.
        {
            std::vector<double> abs_d;
            for (std::size_t i = 0; i < n; ++i) {
                if (a[i] != b[i]) {
                    abs_d.push_back(std::fabs(a[i] - b[i]));
                }
            }
            std::vector<double> rank(abs_d.size());
            for (std::size_t i = 0; i < abs_d.size(); ++i) {
                std::size_t below = 0, equal = 0;
                for (std::size_t j = 0; j < abs_d.size(); ++j) {
                    below += abs_d[j] < abs_d[i];
                    equal += abs_d[j] == abs_d[i];
                }
                rank[i] = static_cast<double>(below) + (static_cast<double>(equal) + 1.0) / 2.0;
            }
            for (std::uint64_t mask = 0; mask < total; ++mask) {
                double w = 0.0;
                for (std::size_t i = 0; i < rank.size(); ++i) {
                    if (mask & (1ULL << i)) {
                        w += rank[i];
                    }
                }
                if (w == forward.statistic) {
                    ++equal_count;
                }
            }
        }
        const double p_equal = static_cast<double>(equal_count) / static_cast<double>(total);
        CHECK(std::fabs(forward.p_value + backward.p_value - (1.0 + p_equal)) < 1e-12);
    }
}

TEST_CASE("mean_ranks examples") {
    // Single dataset, accuracies (0.9, 0.8, 0.9): ranks (1.5, 3, 1.5).
    const std::vector<std::vector<double>> matrix = {{0.9}, {0.8}, {0.9}};
    const auto ranks = mean_ranks(matrix);
    CHECK(ranks == std::vector<double>{1.5, 3.0, 1.5});

    // Rank sums per dataset equal k(k+1)/2.
    Prng rng(5);
    std::vector<std::vector<double>> random_matrix(5, std::vector<double>(7));
    for (auto& row : random_matrix) {
        for (auto& v : row) {
            v = rng.next_uniform();
        }
    }
    const auto random_ranks = mean_ranks(random_matrix);
    double sum = 0.0;
    for (const double r : random_ranks) {
        sum += r;
    }
    CHECK(sum == doctest::Approx(5.0 * 6.0 / 2.0));

    // A classifier strictly best everywhere has mean rank exactly 1.
    std::vector<std::vector<double>> dominated = random_matrix;
    for (auto& v : dominated[2]) {
        v = 2.0;
    }
    CHECK(mean_ranks(dominated)[2] == 1.0);

    // Scale invariance.
    auto scaled = random_matrix;
    for (auto& row : scaled) {
        for (auto& v : row) {
            v *= 3.5;
        }
    }
    CHECK(mean_ranks(scaled) == random_ranks);

    auto ragged = random_matrix;
    ragged[1].pop_back();
    CHECK_THROWS_AS(mean_ranks(ragged), std::invalid_argument);
    CHECK_THROWS_AS(mean_ranks({{0.5}}), std::invalid_argument);
}

TEST_CASE("cliques: identical classifiers share one clique") {
    const std::vector<double> accs = {0.7, 0.8, 0.6, 0.9};
    const auto report = significance_cliques({accs, accs}, 0.05);
    REQUIRE(report.cliques.size() == 1);
    CHECK(report.cliques[0] == std::vector<std::size_t>{0, 1});
    CHECK(report.p_values[0][1] == 1.0);
}

TEST_CASE("cliques: a uniformly dominant classifier separates") {
    std::vector<double> weak(30);
    std::vector<double> strong(30);
    Prng rng(6);
    for (std::size_t i = 0; i < 30; ++i) {
        weak[i] = 0.4 + 0.1 * rng.next_uniform();
        strong[i] = weak[i] + 0.2;
    }
    const auto report = significance_cliques({strong, weak}, 0.05);
    CHECK(report.cliques.size() == 2);
    for (const auto& clique : report.cliques) {
        CHECK(clique.size() == 1);
    }
    CHECK(report.ranks[0] == 1.0);
    CHECK(report.ranks[1] == 2.0);
}

TEST_CASE("cliques cover every classifier and are maximal") {
    Prng rng(7);
    const std::size_t k = 6;
    std::vector<std::vector<double>> matrix(k, std::vector<double>(12));
    for (std::size_t c = 0; c < k; ++c) {
        for (auto& v : matrix[c]) {
            v = rng.next_uniform() * 0.2 + 0.4 + 0.08 * static_cast<double>(c);
        }
    }
    const double alpha = 0.05;
    const auto report = significance_cliques(matrix, alpha);

    std::set<std::size_t> covered;
    for (const auto& clique : report.cliques) {
        covered.insert(clique.begin(), clique.end());
        // mutual non-significance inside the clique
        for (const std::size_t a : clique) {
            for (const std::size_t b : clique) {
                if (a != b) {
                    CHECK(report.p_values[a][b] >= alpha);
                }
            }
        }
        // maximality: every outside classifier conflicts with some member
        for (std::size_t outsider = 0; outsider < k; ++outsider) {
            if (std::find(clique.begin(), clique.end(), outsider) != clique.end()) {
                continue;
            }
            bool conflicts = false;
            for (const std::size_t member : clique) {
                if (report.p_values[outsider][member] < alpha) {
                    conflicts = true;
                    break;
                }
            }
            CHECK(conflicts);
        }
    }
    CHECK(covered.size() == k);
}

TEST_CASE("holm correction can only merge cliques, never split them") {
    Prng rng(8);
    const std::size_t k = 5;
    std::vector<std::vector<double>> matrix(k, std::vector<double>(10));
    for (std::size_t c = 0; c < k; ++c) {
        for (auto& v : matrix[c]) {
            v = rng.next_uniform() * 0.3 + 0.05 * static_cast<double>(c);
        }
    }
    const auto raw = significance_cliques(matrix, 0.05, false);
    const auto corrected = significance_cliques(matrix, 0.05, true);
    // Adjusted p-values are >= raw ones, so every raw clique must be
    // contained in some Holm clique.
    for (const auto& clique : raw.cliques) {
        bool contained = false;
        for (const auto& larger : corrected.cliques) {
            contained = std::all_of(clique.begin(), clique.end(), [&](std::size_t member) {
                return std::find(larger.begin(), larger.end(), member) != larger.end();
            });
            if (contained) {
                break;
            }
        }
        CHECK(contained);
    }
}
