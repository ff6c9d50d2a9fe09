#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tempobench {

/// Deterministic pseudo-random stream built on SplitMix64.
///
/// Every "random" artifact in this project (permutations, padding walks,
/// synthetic noise, fold assignments) is drawn from this generator so that a
/// given seed produces bit-identical results on every platform and build.
/// No standard-library distribution is used anywhere: std::normal_distribution
/// and friends are implementation-defined and would break reproducibility.
///
/// The integer and uniform streams are exact everywhere. next_gaussian goes
/// through libm (log/cos/sin), so its stream is bit-identical for a given
/// toolchain; a libm whose last-ulp rounding differs can shift Gaussian
/// outputs by one ulp. Reruns of the same build are always bit-identical.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    /// Raw SplitMix64 word.
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 significant bits.
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Gaussian via Box-Muller. Each pair of uniforms yields two variates;
    /// the second is cached (as a standard normal) and returned by the next
    /// call, so calls consume the underlying stream two uniforms at a time.
    double next_gaussian(double mu, double sigma);

    /// Uniform integer in [lo, hi], both bounds inclusive. Rejection-free:
    /// the result is lo + floor(next_uniform() * (hi - lo + 1)).
    std::int64_t next_int(std::int64_t lo, std::int64_t hi);

    /// In-place Fisher-Yates shuffle, iterating from the last index downward.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(next_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t state_;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

/// FNV-1a 64-bit hash over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text);

/// SplitMix64 output scramble applied directly to `z` (no state increment):
///   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///   return z ^ (z >> 31)
std::uint64_t mix64(std::uint64_t z);

/// Canonical sub-stream seed derivation used across the whole toolkit:
/// the fields are joined with a single 0x1F separator byte, hashed with
/// fnv1a64, and scrambled once with mix64. Numeric fields must be rendered
/// as decimal strings by the caller.
std::uint64_t derive_seed_from_fields(std::span<const std::string> fields);

/// Convenience overload for call sites with a fixed field list.
std::uint64_t derive_seed_from_fields(std::initializer_list<std::string> fields);

} // namespace tempobench
