#pragma once

#include "tempobench/prng.hpp"
#include "tempobench/series.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tempobench {

/// Desk-scale representatives of the major classifier families:
/// distance-based (1NN Euclid / 1NN DTW), kernel convolution features,
/// shapelet features, fixed-interval features and global summary features,
/// the last four sharing a ridge read-out.
enum class ClassifierKind {
    nn1_euclid,
    nn1_dtw,
    kernel_conv,
    shapelet,
    interval,
    global_feature,
};

std::string to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from_string(const std::string& name);
std::vector<ClassifierKind> all_classifier_kinds();

std::vector<double> default_lambda_grid(); // 1e-3 .. 1e3 by decades

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::nn1_euclid;
    /// Sakoe-Chiba band as a fraction of max length, in (0, 1]; 1 = unconstrained.
    double dtw_band = 1.0;
    int kernel_count = 500;
    int shapelet_candidates = 200;
    int shapelet_keep = 20;
    int interval_count = 32;
    std::vector<double> lambda_grid = default_lambda_grid();
    std::uint64_t seed = 0;
};

/// Row-major dense feature matrix.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    FeatureMatrix() = default;
    FeatureMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

/// Trains the pipeline selected by `spec` and predicts one label per test
/// instance. Deterministic given (spec, train, test); internal randomness
/// comes from sub-streams derived from spec.seed ("features" for kernel /
/// shapelet / interval generation, "ridge" for fold assignment).
/// Requires a non-empty train split with >= 2 classes and uniform lengths.
std::vector<int> train_predict(const ClassifierSpec& spec,
                               std::span<const LabeledInstance> train,
                               std::span<const LabeledInstance> test);

struct TimedPredictions {
    std::vector<int> labels;
    double train_ms = 0.0;
    double test_ms = 0.0;
};

/// Same as train_predict but reports the model-building and scoring phases
/// separately (for the experiment harness).
TimedPredictions train_predict_timed(const ClassifierSpec& spec,
                                     std::span<const LabeledInstance> train,
                                     std::span<const LabeledInstance> test);

/// Banded DTW with squared point costs. D(i,j) = (x_i - y_j)^2 +
/// min(D(i-1,j), D(i,j-1), D(i-1,j-1)); cells with |i - j| >
/// ceil(band_fraction * max(n, m)) are excluded. No square root is taken.
double dtw_distance(const TimeSeries& x, const TimeSeries& y, double band_fraction);

/// DTW that abandons once the distance provably exceeds `cutoff` and then
/// returns +infinity. When the true distance is <= cutoff the result equals
/// dtw_distance exactly (same arithmetic, same order).
double dtw_distance_bounded(const TimeSeries& x, const TimeSeries& y, double band_fraction,
                            double cutoff);

enum class Nn1Metric { euclid, dtw };

/// 1-nearest-neighbour with ties broken by the smallest training index.
/// Euclidean is the squared L2 (monotone-equivalent, cheaper).
std::vector<int> nn1(Nn1Metric metric, double band_fraction,
                     std::span<const LabeledInstance> train,
                     std::span<const LabeledInstance> test);

/// One random convolution kernel. Draw order (all from one Prng):
/// length from {7,9,11}, `length` N(0,1) weights then mean-centering, bias
/// uniform in (-1,1), dilation floor(2^a) with a uniform in
/// [0, log2((n-1)/(length-1))), then a same-padding coin flip.
struct ConvKernel {
    std::vector<double> weights;
    double bias = 0.0;
    std::size_t dilation = 1;
    std::size_t padding = 0; // zeros added on each side
};

std::vector<ConvKernel> make_conv_kernels(std::size_t series_length, int count, Prng& rng);

/// PPV (fraction of strictly positive outputs) and max of the convolution
/// output (dot product + bias over every valid position).
std::pair<double, double> apply_conv_kernel(const ConvKernel& kernel, const TimeSeries& series);

/// (PPV, max) per kernel for each instance: 2K columns.
FeatureMatrix conv_feature_matrix(std::span<const LabeledInstance> instances,
                                  std::span<const ConvKernel> kernels);

/// Two features per kernel (PPV, max); kernels are generated once and
/// applied identically to train and test. Requires series length >= 12.
std::pair<FeatureMatrix, FeatureMatrix> kernel_conv_features(std::span<const LabeledInstance> train,
                                                             std::span<const LabeledInstance> test,
                                                             int kernel_count, Prng& rng);

/// Fixed window shared by all instances of a dataset.
struct Interval {
    std::size_t start = 0;
    std::size_t width = 0;
};

/// Per interval: width uniform in {3..n/2}, then start uniform in {0..n-w}.
std::vector<Interval> make_intervals(std::size_t series_length, int count, Prng& rng);

/// Mean, population std and OLS slope per interval: 3M columns.
FeatureMatrix interval_feature_matrix(std::span<const LabeledInstance> instances,
                                      std::span<const Interval> intervals);

/// Fixed random intervals with identical positions for train and test; the
/// fixed positions are what make this family phase-dependent. Requires
/// series length >= 6.
std::pair<FeatureMatrix, FeatureMatrix> interval_features(std::span<const LabeledInstance> train,
                                                          std::span<const LabeledInstance> test,
                                                          int interval_count, Prng& rng);

struct Shapelet {
    TimeSeries values; // z-normalized
    double gain = 0.0;
    std::size_t source_instance = 0;
    std::size_t start = 0;
};

/// Best information gain (bits) over thresholds on a (distance, label)
/// profile; thresholds sit at midpoints between consecutive distinct
/// distances and split into d <= t vs d > t.
double information_gain_best_split(std::vector<std::pair<double, int>> profile, int classes);

/// Draws `candidate_count` windows (random instance, length uniform in
/// {max(3, floor(0.1 n))..floor(0.4 n)}, random start), z-normalizes each,
/// scores it by the best information gain over thresholds on its
/// min-distance profile across the training set, and keeps the
/// `keep_count` best (gain ties resolved toward the earlier candidate).
/// Requires series length >= 10 and >= 2 classes.
std::vector<Shapelet> shapelet_select(std::span<const LabeledInstance> train, int candidate_count,
                                      int keep_count, Prng& rng);

/// Minimum over all windows of the shapelet's length of the squared
/// Euclidean distance between the z-normalized window and the (already
/// z-normalized) shapelet, divided by the window length. Sliding over the
/// series makes this feature phase-independent: padding can only add
/// windows, never remove them.
double shapelet_min_distance(const TimeSeries& shapelet, const TimeSeries& series);

/// Min-distance to each shapelet: one column per shapelet.
FeatureMatrix shapelet_feature_matrix(std::span<const LabeledInstance> instances,
                                      std::span<const Shapelet> shapelets);

/// Fixed 8-feature summary: mean, population std, skewness, autocorrelation
/// at lags 1 and 2, mean-crossing rate, longest run strictly above the mean
/// divided by n, and OLS slope against the index. Requires length >= 4.
std::array<double, 8> global_features(const TimeSeries& series);

FeatureMatrix global_feature_matrix(std::span<const LabeledInstance> instances);

/// Solves (Z'Z + lambda I) W = Z'Y (one-vs-rest ridge read-out). Uses the
/// dual form (ZZ' + lambda I) when there are more columns than rows; both
/// routes satisfy the primal normal equations. A diagonal jitter of
/// 1e-8 * trace/dim is added once if the Cholesky factorization fails.
FeatureMatrix solve_ridge(const FeatureMatrix& z, const FeatureMatrix& targets, double lambda);

/// Standardizes by train column mean/std (zero-variance columns become all
/// zeros), builds +/-1 one-vs-rest targets, picks lambda from the grid by
/// 5-fold stratified cross-validated accuracy (folds drawn from rng, ties
/// toward the smaller lambda) and predicts the argmax class (score ties
/// toward the smaller class index). Falls back to the majority train label
/// when every standardized training row is identical.
std::vector<int> ridge_fit_predict(const FeatureMatrix& train_features,
                                   std::span<const int> train_labels,
                                   const FeatureMatrix& test_features,
                                   std::span<const double> lambda_grid, Prng& rng);

} // namespace tempobench
