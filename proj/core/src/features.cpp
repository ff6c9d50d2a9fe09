#include "tempobench/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tempobench {

namespace {

constexpr std::size_t kKernelLengths[] = {7, 9, 11};

void require_uniform_length(std::span<const LabeledInstance> instances, std::size_t length,
                            const char* where) {
    for (const auto& inst : instances) {
        if (inst.series.size() != length) {
            throw std::invalid_argument(std::string(where) + ": length mismatch");
        }
    }
}

/// OLS slope of values against their 0-based position.
double ols_slope(std::span<const double> values) {
    const std::size_t n = values.size();
    const double x_mean = static_cast<double>(n - 1) / 2.0;
    double y_mean = 0.0;
    for (const double v : values) {
        y_mean += v;
    }
    y_mean /= static_cast<double>(n);
    double cov = 0.0;
    double var_x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - x_mean;
        cov += dx * (values[i] - y_mean);
        var_x += dx * dx;
    }
    return var_x > 0.0 ? cov / var_x : 0.0;
}

} // namespace

std::vector<ConvKernel> make_conv_kernels(std::size_t series_length, int count, Prng& rng) {
    if (series_length < 12) {
        throw std::invalid_argument("make_conv_kernels: series length must be >= 12");
    }
    if (count < 1) {
        throw std::invalid_argument("make_conv_kernels: kernel count must be >= 1");
    }
    std::vector<ConvKernel> kernels;
    kernels.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        ConvKernel kernel;
        const std::size_t length = kKernelLengths[rng.next_int(0, 2)];
        kernel.weights.resize(length);
        double mean = 0.0;
        for (auto& w : kernel.weights) {
            w = rng.next_gaussian(0.0, 1.0);
            mean += w;
        }
        mean /= static_cast<double>(length);
        for (auto& w : kernel.weights) {
            w -= mean;
        }
        kernel.bias = -1.0 + 2.0 * rng.next_uniform();
        const double max_exponent =
            std::log2(static_cast<double>(series_length - 1) / static_cast<double>(length - 1));
        kernel.dilation = static_cast<std::size_t>(std::exp2(rng.next_uniform() * max_exponent));
        if (rng.next_uniform() < 0.5) {
            kernel.padding = (length - 1) * kernel.dilation / 2;
        }
        kernels.push_back(std::move(kernel));
    }
    return kernels;
}

std::pair<double, double> apply_conv_kernel(const ConvKernel& kernel, const TimeSeries& series) {
    const auto n = static_cast<std::int64_t>(series.size());
    const auto length = static_cast<std::int64_t>(kernel.weights.size());
    const auto dilation = static_cast<std::int64_t>(kernel.dilation);
    const auto pad = static_cast<std::int64_t>(kernel.padding);
    const std::int64_t reach = (length - 1) * dilation;
    const std::int64_t first = -pad;
    const std::int64_t last = n - 1 + pad - reach;
    if (last < first) {
        throw std::invalid_argument("apply_conv_kernel: series too short for kernel");
    }
    std::size_t positive = 0;
    double max_value = -std::numeric_limits<double>::infinity();
    for (std::int64_t start = first; start <= last; ++start) {
        double sum = kernel.bias;
        for (std::int64_t j = 0; j < length; ++j) {
            const std::int64_t pos = start + j * dilation;
            if (pos >= 0 && pos < n) {
                sum += kernel.weights[static_cast<std::size_t>(j)] *
                       series[static_cast<std::size_t>(pos)];
            }
        }
        if (sum > 0.0) {
            ++positive;
        }
        max_value = std::max(max_value, sum);
    }
    const auto outputs = static_cast<double>(last - first + 1);
    return {static_cast<double>(positive) / outputs, max_value};
}

FeatureMatrix conv_feature_matrix(std::span<const LabeledInstance> instances,
                                  std::span<const ConvKernel> kernels) {
    FeatureMatrix features(instances.size(), kernels.size() * 2);
    for (std::size_t r = 0; r < instances.size(); ++r) {
        for (std::size_t k = 0; k < kernels.size(); ++k) {
            const auto [ppv, max_value] = apply_conv_kernel(kernels[k], instances[r].series);
            features.at(r, 2 * k) = ppv;
            features.at(r, 2 * k + 1) = max_value;
        }
    }
    return features;
}

std::pair<FeatureMatrix, FeatureMatrix> kernel_conv_features(std::span<const LabeledInstance> train,
                                                             std::span<const LabeledInstance> test,
                                                             int kernel_count, Prng& rng) {
    if (train.empty()) {
        throw std::invalid_argument("kernel_conv_features: empty training set");
    }
    const std::size_t length = train.front().series.size();
    require_uniform_length(train, length, "kernel_conv_features");
    require_uniform_length(test, length, "kernel_conv_features");
    const auto kernels = make_conv_kernels(length, kernel_count, rng);
    return {conv_feature_matrix(train, kernels), conv_feature_matrix(test, kernels)};
}

std::vector<Interval> make_intervals(std::size_t series_length, int count, Prng& rng) {
    if (series_length < 6) {
        throw std::invalid_argument("make_intervals: series length must be >= 6");
    }
    if (count < 1) {
        throw std::invalid_argument("make_intervals: interval count must be >= 1");
    }
    std::vector<Interval> intervals;
    intervals.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Interval interval;
        interval.width = static_cast<std::size_t>(
            rng.next_int(3, static_cast<std::int64_t>(series_length / 2)));
        interval.start = static_cast<std::size_t>(
            rng.next_int(0, static_cast<std::int64_t>(series_length - interval.width)));
        intervals.push_back(interval);
    }
    return intervals;
}

FeatureMatrix interval_feature_matrix(std::span<const LabeledInstance> instances,
                                      std::span<const Interval> intervals) {
    FeatureMatrix features(instances.size(), intervals.size() * 3);
    for (std::size_t r = 0; r < instances.size(); ++r) {
        const auto& series = instances[r].series;
        for (std::size_t k = 0; k < intervals.size(); ++k) {
            const auto& iv = intervals[k];
            const std::span<const double> window(series.data() + iv.start, iv.width);
            double mean = 0.0;
            for (const double v : window) {
                mean += v;
            }
            mean /= static_cast<double>(iv.width);
            double sq = 0.0;
            for (const double v : window) {
                const double d = v - mean;
                sq += d * d;
            }
            features.at(r, 3 * k) = mean;
            features.at(r, 3 * k + 1) = std::sqrt(sq / static_cast<double>(iv.width));
            features.at(r, 3 * k + 2) = ols_slope(window);
        }
    }
    return features;
}

std::pair<FeatureMatrix, FeatureMatrix> interval_features(std::span<const LabeledInstance> train,
                                                          std::span<const LabeledInstance> test,
                                                          int interval_count, Prng& rng) {
    if (train.empty()) {
        throw std::invalid_argument("interval_features: empty training set");
    }
    const std::size_t length = train.front().series.size();
    require_uniform_length(train, length, "interval_features");
    require_uniform_length(test, length, "interval_features");
    const auto intervals = make_intervals(length, interval_count, rng);
    return {interval_feature_matrix(train, intervals), interval_feature_matrix(test, intervals)};
}

std::array<double, 8> global_features(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 4) {
        throw std::invalid_argument("global_features: series length must be >= 4");
    }
    double mean = 0.0;
    for (const double v : series) {
        mean += v;
    }
    mean /= static_cast<double>(n);

    double m2 = 0.0;
    double m3 = 0.0;
    for (const double v : series) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);

    const double std_dev = std::sqrt(m2);
    const double skewness = m2 < 1e-12 ? 0.0 : m3 / std::pow(m2, 1.5);

    auto autocorrelation = [&](std::size_t lag) {
        if (m2 < 1e-12) {
            return 0.0;
        }
        double num = 0.0;
        for (std::size_t t = 0; t + lag < n; ++t) {
            num += (series[t] - mean) * (series[t + lag] - mean);
        }
        return num / (m2 * static_cast<double>(n));
    };

    std::size_t crossings = 0;
    std::size_t longest_run = 0;
    std::size_t run = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double d = series[t] - mean;
        if (t + 1 < n && d * (series[t + 1] - mean) < 0.0) {
            ++crossings;
        }
        if (d > 0.0) {
            longest_run = std::max(longest_run, ++run);
        } else {
            run = 0;
        }
    }

    return {mean,
            std_dev,
            skewness,
            autocorrelation(1),
            autocorrelation(2),
            static_cast<double>(crossings) / static_cast<double>(n - 1),
            static_cast<double>(longest_run) / static_cast<double>(n),
            ols_slope(series)};
}

FeatureMatrix global_feature_matrix(std::span<const LabeledInstance> instances) {
    FeatureMatrix features(instances.size(), 8);
    for (std::size_t r = 0; r < instances.size(); ++r) {
        const auto row = global_features(instances[r].series);
        std::copy(row.begin(), row.end(), features.values.begin() + static_cast<std::ptrdiff_t>(r * 8));
    }
    return features;
}

} // namespace tempobench
