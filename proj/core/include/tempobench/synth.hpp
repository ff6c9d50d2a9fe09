#pragma once

#include "tempobench/series.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tempobench {

/// The three synthetic regimes: positional evidence at a fixed coordinate,
/// a class-specific pattern at a uniformly random offset, and the same
/// pattern pinned to the center of every instance.
enum class SynthKind { positional, temporal, aligned };

std::string to_string(SynthKind kind);
SynthKind synth_kind_from_string(const std::string& name);

struct SynthSpec {
    SynthKind kind = SynthKind::temporal;
    std::size_t length = 128;
    std::size_t train_size = 100;
    std::size_t test_size = 100;
    int classes = 2;
    std::size_t pattern_width = 16;
    double noise_std = 1.0;
    double amplitude = 3.0;
    std::uint64_t seed = 0;
    std::string name; // defaults to "synth_<kind>" when empty
};

/// Checks width <= length/2, split sizes >= classes and divisible by them,
/// classes >= 2, non-negative noise. Throws std::invalid_argument.
void validate(const SynthSpec& spec);

/// Unit-RMS class pattern of the given width: class 0 is a triangle
/// (ramp up then down), class 1 a square pulse, class k >= 2 a square wave
/// with k cycles. Equal energy across classes keeps global variance from
/// leaking class information.
std::vector<double> class_pattern(int label, std::size_t width);

/// Generates the dataset for `spec`. Instances are i.i.d. Gaussian noise
/// plus amplitude * pattern, z-normalized per instance. Labels cycle
/// round-robin (i % classes), so class balance is exact. Each instance
/// draws from its own sub-stream derived from (seed, split tag, index):
/// first the `length` noise values, then (temporal only) the offset,
/// which makes aligned and temporal instances elementwise equal whenever
/// the temporal offset draw happens to land on the centered position.
SplitDataset generate(const SynthSpec& spec);

SplitDataset gen_positional(SynthSpec spec);
SplitDataset gen_temporal(SynthSpec spec);
SplitDataset gen_aligned(SynthSpec spec);

} // namespace tempobench
