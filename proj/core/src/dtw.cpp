#include "tempobench/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tempobench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t band_width(std::size_t n, std::size_t m, double band_fraction) {
    if (!(band_fraction > 0.0) || band_fraction > 1.0) {
        throw std::invalid_argument("dtw_distance: band fraction must be in (0, 1]");
    }
    const auto longest = static_cast<double>(std::max(n, m));
    return static_cast<std::size_t>(std::ceil(band_fraction * longest));
}

/// Shared DP. `cutoff` of +inf disables early abandoning.
double dtw_impl(const TimeSeries& x, const TimeSeries& y, double band_fraction, double cutoff) {
    const std::size_t n = x.size();
    const std::size_t m = y.size();
    if (n == 0 || m == 0) {
        throw std::invalid_argument("dtw_distance: empty series");
    }
    const std::size_t w = band_width(n, m, band_fraction);
    const std::size_t diff = n > m ? n - m : m - n;
    if (diff > w) {
        throw std::invalid_argument("dtw_distance: band too narrow, no warping path exists");
    }

    // Two-row DP over 1-based (i, j); row 0 is the virtual border.
    std::vector<double> prev(m + 1, kInf);
    std::vector<double> curr(m + 1, kInf);
    prev[0] = 0.0;

    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t j_lo = i > w ? i - w : 1;
        const std::size_t j_hi = std::min(m, i + w);
        std::fill(curr.begin(), curr.end(), kInf);
        // The border cell D(i, 0) only feeds D(1, 1) through prev[0].
        double row_min = kInf;
        const double xi = x[i - 1];
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
            const double d = xi - y[j - 1];
            const double cost = d * d;
            const double best_prev = std::min(curr[j - 1], std::min(prev[j], prev[j - 1]));
            const double value = cost + best_prev;
            curr[j] = value;
            row_min = std::min(row_min, value);
        }
        if (row_min > cutoff) {
            return kInf;
        }
        prev.swap(curr);
        prev[0] = kInf; // the border only exists before the first row
    }
    return prev[m];
}

} // namespace

double dtw_distance(const TimeSeries& x, const TimeSeries& y, double band_fraction) {
    return dtw_impl(x, y, band_fraction, kInf);
}

double dtw_distance_bounded(const TimeSeries& x, const TimeSeries& y, double band_fraction,
                            double cutoff) {
    return dtw_impl(x, y, band_fraction, cutoff);
}

} // namespace tempobench
