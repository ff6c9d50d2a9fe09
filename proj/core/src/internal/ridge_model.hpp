#pragma once

#include "tempobench/classifiers.hpp"
#include "tempobench/prng.hpp"

#include <span>
#include <vector>

namespace tempobench::internal {

/// Fitted ridge read-out: train-column standardization + one-vs-rest weights.
struct RidgeModel {
    std::vector<double> column_mean;
    std::vector<double> column_scale; // 1/std, or 0 for zero-variance columns
    FeatureMatrix weights;            // cols x classes
    int classes = 0;
    double lambda = 0.0;
    bool degenerate = false; // all standardized training rows identical
    int majority_label = 0;
};

RidgeModel ridge_fit(const FeatureMatrix& train_features, std::span<const int> train_labels,
                     std::span<const double> lambda_grid, Prng& rng);

std::vector<int> ridge_predict(const RidgeModel& model, const FeatureMatrix& features);

} // namespace tempobench::internal
