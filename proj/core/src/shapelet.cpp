#include "tempobench/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tempobench {

namespace {

/// Entropy in bits of a label multiset given per-class counts.
double entropy_bits(std::span<const std::size_t> counts, std::size_t total) {
    if (total == 0) {
        return 0.0;
    }
    double h = 0.0;
    for (const std::size_t c : counts) {
        if (c == 0) {
            continue;
        }
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

} // namespace

double information_gain_best_split(std::vector<std::pair<double, int>> profile, int classes) {
    const std::size_t n = profile.size();
    std::sort(profile.begin(), profile.end());

    std::vector<std::size_t> total_counts(static_cast<std::size_t>(classes), 0);
    for (const auto& [d, label] : profile) {
        ++total_counts[static_cast<std::size_t>(label)];
    }
    const double parent = entropy_bits(total_counts, n);

    std::vector<std::size_t> left_counts(static_cast<std::size_t>(classes), 0);
    double best = 0.0;
    std::size_t left = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        ++left_counts[static_cast<std::size_t>(profile[i].second)];
        ++left;
        if (profile[i].first == profile[i + 1].first) {
            continue; // no threshold separates equal distances
        }
        std::vector<std::size_t> right_counts(total_counts);
        for (std::size_t c = 0; c < right_counts.size(); ++c) {
            right_counts[c] -= left_counts[c];
        }
        const std::size_t right = n - left;
        const double children =
            (static_cast<double>(left) / static_cast<double>(n)) * entropy_bits(left_counts, left) +
            (static_cast<double>(right) / static_cast<double>(n)) * entropy_bits(right_counts, right);
        best = std::max(best, parent - children);
    }
    return best;
}

double shapelet_min_distance(const TimeSeries& shapelet, const TimeSeries& series) {
    const std::size_t w = shapelet.size();
    const std::size_t n = series.size();
    if (w < 2 || w > n) {
        throw std::invalid_argument("shapelet_min_distance: shapelet length must be in [2, series length]");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t start = 0; start + w <= n; ++start) {
        // Window statistics use the same plain left-to-right arithmetic as
        // z_normalize so that an exactly matching window yields exactly 0.
        double sum = 0.0;
        for (std::size_t i = 0; i < w; ++i) {
            sum += series[start + i];
        }
        const double mean = sum / static_cast<double>(w);
        double sq = 0.0;
        for (std::size_t i = 0; i < w; ++i) {
            const double d = series[start + i] - mean;
            sq += d * d;
        }
        const double std_dev = std::sqrt(sq / static_cast<double>(w));

        double dist = 0.0;
        if (std_dev < 1e-12) {
            // Zero-variance window z-normalizes to the zero vector.
            for (const double s : shapelet) {
                dist += s * s;
            }
        } else {
            for (std::size_t i = 0; i < w; ++i) {
                const double d = (series[start + i] - mean) / std_dev - shapelet[i];
                dist += d * d;
            }
        }
        best = std::min(best, dist / static_cast<double>(w));
    }
    return best;
}

std::vector<Shapelet> shapelet_select(std::span<const LabeledInstance> train, int candidate_count,
                                      int keep_count, Prng& rng) {
    if (train.empty()) {
        throw std::invalid_argument("shapelet_select: empty training set");
    }
    if (candidate_count < 1 || keep_count < 1) {
        throw std::invalid_argument("shapelet_select: counts must be >= 1");
    }
    const std::size_t n = train.front().series.size();
    if (n < 10) {
        throw std::invalid_argument("shapelet_select: series length must be >= 10");
    }
    int classes = 0;
    for (const auto& inst : train) {
        if (inst.series.size() != n) {
            throw std::invalid_argument("shapelet_select: length mismatch");
        }
        classes = std::max(classes, inst.label + 1);
    }
    if (classes < 2) {
        throw std::invalid_argument("shapelet_select: needs at least 2 classes");
    }

    const std::size_t w_lo = std::max<std::size_t>(3, n / 10);
    const std::size_t w_hi = std::max(w_lo, (n * 4) / 10);

    std::vector<Shapelet> candidates;
    candidates.reserve(static_cast<std::size_t>(candidate_count));
    for (int c = 0; c < candidate_count; ++c) {
        Shapelet candidate;
        candidate.source_instance = static_cast<std::size_t>(
            rng.next_int(0, static_cast<std::int64_t>(train.size()) - 1));
        const auto w = static_cast<std::size_t>(
            rng.next_int(static_cast<std::int64_t>(w_lo), static_cast<std::int64_t>(w_hi)));
        candidate.start =
            static_cast<std::size_t>(rng.next_int(0, static_cast<std::int64_t>(n - w)));
        const auto& source = train[candidate.source_instance].series;
        candidate.values = z_normalize(
            TimeSeries(source.begin() + static_cast<std::ptrdiff_t>(candidate.start),
                       source.begin() + static_cast<std::ptrdiff_t>(candidate.start + w)));

        std::vector<std::pair<double, int>> profile;
        profile.reserve(train.size());
        for (const auto& inst : train) {
            profile.emplace_back(shapelet_min_distance(candidate.values, inst.series), inst.label);
        }
        candidate.gain = information_gain_best_split(std::move(profile), classes);
        candidates.push_back(std::move(candidate));
    }

    // Stable sort keeps the earlier candidate ahead on gain ties.
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return candidates[a].gain > candidates[b].gain;
    });

    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(keep_count), candidates.size());
    std::vector<Shapelet> selected;
    selected.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        selected.push_back(candidates[order[i]]);
    }
    return selected;
}

FeatureMatrix shapelet_feature_matrix(std::span<const LabeledInstance> instances,
                                      std::span<const Shapelet> shapelets) {
    FeatureMatrix features(instances.size(), shapelets.size());
    for (std::size_t r = 0; r < instances.size(); ++r) {
        for (std::size_t k = 0; k < shapelets.size(); ++k) {
            features.at(r, k) = shapelet_min_distance(shapelets[k].values, instances[r].series);
        }
    }
    return features;
}

} // namespace tempobench
