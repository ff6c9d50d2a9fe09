#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tempobench {

double mean(std::span<const double> values);

/// Sample standard deviation (divisor R-1). Requires >= 2 values.
double sample_std(std::span<const double> values);

/// The dataset-filtering rule: flagged (temporal information insignificant)
/// when mean(permuted) >= mean(original) or the means differ by at most
/// k_std times the sum of the two run standard deviations.
bool temporal_filter_rule(std::span<const double> original_runs,
                          std::span<const double> permuted_runs, double k_std = 1.0);

enum class WilcoxonAlternative { a_greater, two_sided };
enum class WilcoxonMethod { exact, normal_approx };

struct WilcoxonResult {
    double statistic = 0.0; // W+, sum of ranks of positive differences
    double p_value = 1.0;
    std::size_t n_effective = 0; // non-zero differences
    WilcoxonMethod method = WilcoxonMethod::exact;
    bool degenerate = false; // every difference was zero
};

/// Paired signed-rank test on d = a - b. Zero differences are dropped;
/// |d| is ranked with average ranks on ties. For n' <= exact_threshold the
/// tail is computed by enumerating all 2^n' sign assignments over the
/// observed rank multiset (exact also under ties); above it, the normal
/// approximation with tie-corrected variance and 0.5 continuity correction
/// is used. a_greater tests P(W+ >= observed); two_sided doubles the
/// smaller tail (capped at 1).
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    WilcoxonAlternative alternative,
                                    std::size_t exact_threshold = 20);

/// accuracies[c][d]: per-dataset aggregated accuracy of classifier c.
/// Per dataset, rank 1 = highest accuracy with ties averaged; the result is
/// each classifier's mean rank across datasets.
std::vector<double> mean_ranks(const std::vector<std::vector<double>>& accuracies);

struct CliqueReport {
    std::vector<std::vector<std::size_t>> cliques; // classifier indices, rank-ordered
    std::vector<std::vector<double>> p_values;     // pairwise two-sided matrix
    std::vector<double> ranks;                     // mean ranks
};

/// Pairwise two-sided Wilcoxon over per-dataset accuracies; classifiers are
/// connected when p >= alpha (no multiplicity correction by default, `holm`
/// applies the step-down adjustment). Cliques are the maximal sets of
/// mutually non-significant classifiers, the bars of a critical-difference
/// style diagram.
CliqueReport significance_cliques(const std::vector<std::vector<double>>& accuracies,
                                  double alpha = 0.05, bool holm = false);

} // namespace tempobench
