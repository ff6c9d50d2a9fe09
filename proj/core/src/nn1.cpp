#include "tempobench/classifiers.hpp"

#include <limits>
#include <stdexcept>

namespace tempobench {

std::vector<int> nn1(Nn1Metric metric, double band_fraction,
                     std::span<const LabeledInstance> train,
                     std::span<const LabeledInstance> test) {
    if (train.empty()) {
        throw std::invalid_argument("nn1: empty training set");
    }
    const std::size_t length = train.front().series.size();
    for (const auto& inst : train) {
        if (inst.series.size() != length) {
            throw std::invalid_argument("nn1: train length mismatch");
        }
    }
    for (const auto& inst : test) {
        if (inst.series.size() != length) {
            throw std::invalid_argument("nn1: test length mismatch");
        }
    }

    std::vector<int> predictions;
    predictions.reserve(test.size());
    for (const auto& query : test) {
        double best = std::numeric_limits<double>::infinity();
        int best_label = train.front().label;
        for (const auto& candidate : train) {
            double d;
            if (metric == Nn1Metric::euclid) {
                d = squared_euclidean(query.series, candidate.series);
            } else {
                // A candidate abandoned against the current best has a true
                // distance strictly above it, so it can neither win nor tie.
                d = dtw_distance_bounded(query.series, candidate.series, band_fraction, best);
            }
            if (d < best) {
                best = d;
                best_label = candidate.label;
            }
        }
        predictions.push_back(best_label);
    }
    return predictions;
}

} // namespace tempobench
