#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tempobench {

/// A univariate series of real values. Fixed length, finite entries.
using TimeSeries = std::vector<double>;

/// One series with its interned class label (0..C-1).
struct LabeledInstance {
    TimeSeries series;
    int label = 0;

    bool operator==(const LabeledInstance&) const = default;
};

/// Named train/test split of equal-length labeled instances.
/// `label_names` maps the interned class id back to the label text the
/// dataset was loaded with (its size is the class count C).
struct SplitDataset {
    std::string name;
    std::vector<LabeledInstance> train;
    std::vector<LabeledInstance> test;
    std::size_t series_length = 0;
    std::vector<std::string> label_names;

    bool operator==(const SplitDataset&) const = default;
};

/// Number of classes (max label + 1 over both splits).
int class_count(const SplitDataset& dataset);

/// Checks the SplitDataset invariants: non-empty splits, uniform series
/// length >= 2, finite values, labels in 0..C-1 with C >= 2, and every test
/// class present in train. Throws std::invalid_argument on violation.
void validate(const SplitDataset& dataset);

/// Rescales to mean 0 and population standard deviation 1 (divisor n).
/// A series whose population std is below 1e-12 maps to the all-zeros
/// series of the same length. Requires length >= 2.
TimeSeries z_normalize(const TimeSeries& series);

/// z-normalizes every train and test instance.
SplitDataset z_normalize_dataset(SplitDataset dataset);

/// Fraction of positions where prediction == truth. Requires equal,
/// non-zero lengths.
double accuracy(std::span<const int> predictions, std::span<const int> truth);

/// Squared Euclidean distance between equal-length series. The terms are
/// accumulated with an exactly rounded (Shewchuk) summation, so the result
/// is invariant under any common reordering of the coordinates, which makes
/// permutation invariance of 1NN-Euclid hold bit-exactly rather than only
/// up to floating-point noise.
double squared_euclidean(const TimeSeries& x, const TimeSeries& y);

/// Exactly rounded sum of the given doubles (order-independent).
double exact_sum(std::span<const double> values);

} // namespace tempobench
