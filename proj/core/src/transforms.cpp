#include "tempobench/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tempobench {

void validate_permutation(const PermutationIndex& perm) {
    std::vector<bool> seen(perm.size(), false);
    for (const std::size_t idx : perm) {
        if (idx >= perm.size() || seen[idx]) {
            throw std::invalid_argument("not a permutation of 0..n-1");
        }
        seen[idx] = true;
    }
}

PermutationIndex make_permutation(std::size_t n, std::uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("make_permutation: n must be >= 2");
    }
    PermutationIndex perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Prng rng(seed);
    rng.shuffle(perm);
    return perm;
}

SplitDataset apply_shared_permutation(const SplitDataset& dataset, const PermutationIndex& perm) {
    if (perm.size() != dataset.series_length) {
        throw std::invalid_argument("apply_shared_permutation: permutation length "
                                    "does not match series length");
    }
    validate_permutation(perm);
    SplitDataset out = dataset;
    auto permute_split = [&](std::vector<LabeledInstance>& split) {
        for (auto& inst : split) {
            TimeSeries reordered(perm.size());
            for (std::size_t k = 0; k < perm.size(); ++k) {
                reordered[k] = inst.series[perm[k]];
            }
            inst.series = std::move(reordered);
        }
    };
    permute_split(out.train);
    permute_split(out.test);
    return out;
}

std::size_t padding_length(double l_fraction, std::size_t n) {
    if (l_fraction < 0.0 || l_fraction > 1.0) {
        throw std::invalid_argument("padding_length: l_fraction must be in [0, 1]");
    }
    // Round half away from zero; the operand is non-negative here.
    return static_cast<std::size_t>(std::floor(l_fraction * static_cast<double>(n) + 0.5));
}

std::vector<double> random_walk_pad(double anchor, std::int64_t length, double sigma, Prng& rng) {
    if (length < 0) {
        throw std::invalid_argument("random_walk_pad: negative length");
    }
    if (sigma < 0.0) {
        throw std::invalid_argument("random_walk_pad: sigma must be >= 0");
    }
    std::vector<double> walk;
    walk.reserve(static_cast<std::size_t>(length));
    double previous = anchor;
    for (std::int64_t i = 0; i < length; ++i) {
        previous = rng.next_gaussian(previous, sigma);
        walk.push_back(previous);
    }
    return walk;
}

std::pair<TimeSeries, PaddingRecord> augment_instance(const TimeSeries& series, std::int64_t l,
                                                      double sigma, Prng& rng) {
    if (l < 0) {
        throw std::invalid_argument("augment_instance: negative padding length");
    }
    if (series.size() < 2) {
        throw std::invalid_argument("augment_instance: series length must be >= 2");
    }
    const std::int64_t head_len = rng.next_int(0, l);
    const std::int64_t tail_len = l - head_len;

    std::vector<double> head = random_walk_pad(series.front(), head_len, sigma, rng);
    const std::vector<double> tail = random_walk_pad(series.back(), tail_len, sigma, rng);
    // The head walk runs outward from the first value; reversing it makes
    // the walk's first step land adjacent to the series start.
    std::reverse(head.begin(), head.end());

    TimeSeries out;
    out.reserve(series.size() + static_cast<std::size_t>(l));
    out.insert(out.end(), head.begin(), head.end());
    out.insert(out.end(), series.begin(), series.end());
    out.insert(out.end(), tail.begin(), tail.end());

    return {std::move(out), PaddingRecord{static_cast<std::size_t>(head_len),
                                          static_cast<std::size_t>(tail_len)}};
}

AugmentedDataset augment_dataset(const SplitDataset& dataset, const AugmentSpec& spec) {
    validate(dataset);
    if (spec.sigma < 0.0) {
        throw std::invalid_argument("augment_dataset: sigma must be >= 0");
    }
    const auto l = static_cast<std::int64_t>(padding_length(spec.l_fraction, dataset.series_length));

    AugmentedDataset result;
    result.dataset = dataset;
    result.dataset.series_length = dataset.series_length + static_cast<std::size_t>(l);

    const std::string seed_text = std::to_string(spec.seed);
    auto augment_split = [&](std::vector<LabeledInstance>& split, const std::string& tag,
                             std::vector<PaddingRecord>& records) {
        records.reserve(split.size());
        for (std::size_t i = 0; i < split.size(); ++i) {
            Prng rng(derive_seed_from_fields({seed_text, tag, std::to_string(i)}));
            auto [padded, record] = augment_instance(split[i].series, l, spec.sigma, rng);
            split[i].series = std::move(padded);
            records.push_back(record);
        }
    };
    augment_split(result.dataset.train, "train", result.train_records);
    augment_split(result.dataset.test, "test", result.test_records);
    return result;
}

} // namespace tempobench
