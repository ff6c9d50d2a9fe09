#pragma once

// Independent reference implementations used as test oracles. These are
// deliberately written from the published definitions, not by calling into
// the library, so they stay meaningful as cross-checks.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace testsupport {

// ---- SplitMix64 reference (constants from the published algorithm) ----

struct SplitMixRef {
    std::uint64_t x;

    std::uint64_t next() {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
};

// ---- FNV-1a + finalization reference for seed derivation ----

inline std::uint64_t derive_seed_ref(const std::vector<std::string>& fields) {
    std::uint64_t h = 14695981039346656037ULL;
    bool first = true;
    for (const auto& field : fields) {
        if (!first) {
            h ^= 0x1fULL;
            h *= 1099511628211ULL;
        }
        first = false;
        for (const char c : field) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
    }
    std::uint64_t z = h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// ---- DTW by exhaustive enumeration of monotone warping paths ----
//
// Costs are accumulated from the path start exactly like the dynamic
// program (new = cost + previous), so agreement is bitwise, not just
// approximate.

inline double dtw_brute_force(std::span<const double> x, std::span<const double> y,
                              double band_fraction) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    const auto w = static_cast<std::size_t>(
        std::ceil(band_fraction * static_cast<double>(std::max(n, m))));
    double best = std::numeric_limits<double>::infinity();

    struct Walker {
        std::span<const double> x, y;
        std::size_t n, m, w;
        double* best;

        void walk(std::size_t i, std::size_t j, double acc) const {
            if (i + 1 == n && j + 1 == m) {
                if (acc < *best) {
                    *best = acc;
                }
                return;
            }
            step(i + 1, j, acc);
            step(i, j + 1, acc);
            step(i + 1, j + 1, acc);
        }

        void step(std::size_t i, std::size_t j, double acc) const {
            if (i >= n || j >= m) {
                return;
            }
            const std::size_t gap = i > j ? i - j : j - i;
            if (gap > w) {
                return;
            }
            const double d = x[i] - y[j];
            walk(i, j, d * d + acc);
        }
    };

    const double d0 = x[0] - y[0];
    Walker{x, y, n, m, w, &best}.walk(0, 0, d0 * d0);
    return best;
}

// ---- Wilcoxon signed-rank by brute-force sign enumeration ----
//
// Ranks are computed by direct counting (not sorting) and the tail by a
// literal loop over all 2^n sign assignments.

struct WilcoxonOracle {
    double p_greater = 1.0;
    double p_two_sided = 1.0;
    double w_plus = 0.0;
    std::size_t n_effective = 0;
};

inline WilcoxonOracle wilcoxon_brute_force(std::span<const double> a, std::span<const double> b) {
    std::vector<double> abs_d;
    std::vector<int> sign;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) {
            abs_d.push_back(std::fabs(d));
            sign.push_back(d > 0.0 ? 1 : -1);
        }
    }
    WilcoxonOracle oracle;
    oracle.n_effective = abs_d.size();
    if (abs_d.empty()) {
        return oracle;
    }
    const std::size_t n = abs_d.size();
    std::vector<double> rank(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t below = 0;
        std::size_t equal = 0;
        for (std::size_t j = 0; j < n; ++j) {
            below += abs_d[j] < abs_d[i] ? 1 : 0;
            equal += abs_d[j] == abs_d[i] ? 1 : 0;
        }
        rank[i] = static_cast<double>(below) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    double observed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sign[i] > 0) {
            observed += rank[i];
        }
    }
    oracle.w_plus = observed;

    std::uint64_t ge = 0;
    std::uint64_t le = 0;
    const std::uint64_t total = 1ULL << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        double w = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1ULL << i)) {
                w += rank[i];
            }
        }
        if (w >= observed) {
            ++ge;
        }
        if (w <= observed) {
            ++le;
        }
    }
    oracle.p_greater = static_cast<double>(ge) / static_cast<double>(total);
    const double smaller = std::min(ge, le);
    oracle.p_two_sided = std::min(1.0, 2.0 * smaller / static_cast<double>(total));
    return oracle;
}

} // namespace testsupport
