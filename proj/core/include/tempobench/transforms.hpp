#pragma once

#include "tempobench/prng.hpp"
#include "tempobench/series.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace tempobench {

/// A permutation of 0..n-1.
using PermutationIndex = std::vector<std::size_t>;

/// Throws std::invalid_argument unless `perm` contains each of 0..n-1
/// exactly once.
void validate_permutation(const PermutationIndex& perm);

/// Fisher-Yates shuffle of [0..n-1] drawn from Prng(seed). Requires n >= 2.
PermutationIndex make_permutation(std::size_t n, std::uint64_t seed);

/// Reorders every train and test instance with the same index permutation:
/// out[k] = in[perm[k]]. Labels, split membership and instance order are
/// unchanged. This destroys ordering information while preserving each
/// instance's value multiset, so coordinate-wise (tabular) evidence and all
/// pairwise Euclidean distances survive the transform.
SplitDataset apply_shared_permutation(const SplitDataset& dataset, const PermutationIndex& perm);

/// Misalignment augmentation parameters. The padding budget l is a fraction
/// of the series length; sigma is the random-walk step standard deviation.
struct AugmentSpec {
    double l_fraction = 0.2;
    double sigma = 0.01;
    std::uint64_t seed = 0;
};

/// Head/tail padding lengths drawn for one instance (head + tail == l).
struct PaddingRecord {
    std::size_t head = 0;
    std::size_t tail = 0;

    bool operator==(const PaddingRecord&) const = default;
};

/// Total padding length for a series of length n: round(l_fraction * n),
/// half away from zero.
std::size_t padding_length(double l_fraction, std::size_t n);

/// Gaussian random walk p_1..p_length with p_i ~ N(p_{i-1}, sigma^2) and
/// p_0 = anchor. The anchor itself is not emitted; it only seeds the walk.
std::vector<double> random_walk_pad(double anchor, std::int64_t length, double sigma, Prng& rng);

/// Pads one (already z-normalized) instance with l extra points split as
/// n_h ~ U{0..l}, n_t = l - n_h. The head walk is anchored at the first
/// value and reversed before prepending; the tail walk is anchored at the
/// last value and appended as-is. Draw order: n_h, head walk, tail walk.
/// The original series appears verbatim at offset n_h of the output, and
/// the output is not re-normalized.
std::pair<TimeSeries, PaddingRecord> augment_instance(const TimeSeries& series, std::int64_t l,
                                                      double sigma, Prng& rng);

/// Augmented dataset plus the per-instance padding draws (for sidecar
/// metadata and structural tests).
struct AugmentedDataset {
    SplitDataset dataset;
    std::vector<PaddingRecord> train_records;
    std::vector<PaddingRecord> test_records;
};

/// Augments every train and test instance independently. Each instance uses
/// its own sub-stream, Prng(derive_seed_from_fields({dec(spec.seed),
/// split_tag, dec(index)})) with split_tag "train"/"test", so the result is
/// independent of processing order.
AugmentedDataset augment_dataset(const SplitDataset& dataset, const AugmentSpec& spec);

} // namespace tempobench
