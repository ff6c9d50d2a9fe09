#include "tempobench/prng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tempobench {

double Prng::next_gaussian(double mu, double sigma) {
    if (sigma < 0.0) {
        throw std::invalid_argument("next_gaussian: sigma must be >= 0");
    }
    double z;
    if (has_cached_gaussian_) {
        z = cached_gaussian_;
        has_cached_gaussian_ = false;
    } else {
        // u1 is mapped to (0, 1] so the log is always finite.
        const double u1 = 1.0 - next_uniform();
        const double u2 = next_uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        z = radius * std::cos(angle);
        cached_gaussian_ = radius * std::sin(angle);
        has_cached_gaussian_ = true;
    }
    return mu + sigma * z;
}

std::int64_t Prng::next_int(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) {
        throw std::invalid_argument("next_int: lo must be <= hi");
    }
    const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) {
        // hi - lo covers the whole 64-bit range.
        return static_cast<std::int64_t>(next_u64());
    }
    auto k = static_cast<std::uint64_t>(next_uniform() * static_cast<double>(span));
    if (k >= span) {
        k = span - 1;
    }
    return lo + static_cast<std::int64_t>(k);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed_from_fields(std::span<const std::string> fields) {
    std::string joined;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            joined += '\x1f';
        }
        joined += fields[i];
    }
    return mix64(fnv1a64(joined));
}

std::uint64_t derive_seed_from_fields(std::initializer_list<std::string> fields) {
    return derive_seed_from_fields(std::span<const std::string>(fields.begin(), fields.size()));
}

} // namespace tempobench
