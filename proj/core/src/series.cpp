#include "tempobench/series.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace tempobench {

namespace {

/// Exactly rounded running sum (Shewchuk's non-overlapping partials, with
/// the final half-ulp correction as in the classic fsum). 64 slots is far
/// above the theoretical maximum number of partials for doubles.
class ExactAccumulator {
public:
    void add(double x) {
        int used = 0;
        for (int i = 0; i < count_; ++i) {
            double y = partials_[i];
            if (std::fabs(x) < std::fabs(y)) {
                std::swap(x, y);
            }
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) {
                partials_[used++] = lo;
            }
            x = hi;
        }
        partials_[used++] = x;
        count_ = used;
    }

    double rounded() const {
        int n = count_;
        if (n == 0) {
            return 0.0;
        }
        double hi = partials_[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials_[--n];
            hi = x + y;
            const double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) {
                break;
            }
        }
        // Round-half-even correction against the next partial down.
        if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            if (y == x - hi) {
                hi = x;
            }
        }
        return hi;
    }

private:
    std::array<double, 64> partials_{};
    int count_ = 0;
};

} // namespace

double exact_sum(std::span<const double> values) {
    ExactAccumulator acc;
    for (const double v : values) {
        acc.add(v);
    }
    return acc.rounded();
}

double squared_euclidean(const TimeSeries& x, const TimeSeries& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("squared_euclidean: length mismatch");
    }
    ExactAccumulator acc;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        acc.add(d * d);
    }
    return acc.rounded();
}

int class_count(const SplitDataset& dataset) {
    int max_label = -1;
    for (const auto& inst : dataset.train) {
        max_label = std::max(max_label, inst.label);
    }
    for (const auto& inst : dataset.test) {
        max_label = std::max(max_label, inst.label);
    }
    return max_label + 1;
}

void validate(const SplitDataset& dataset) {
    if (dataset.train.empty() || dataset.test.empty()) {
        throw std::invalid_argument("dataset '" + dataset.name + "': empty split");
    }
    if (dataset.series_length < 2) {
        throw std::invalid_argument("dataset '" + dataset.name + "': series length must be >= 2");
    }
    const int classes = class_count(dataset);
    if (classes < 2) {
        throw std::invalid_argument("dataset '" + dataset.name + "': needs at least 2 classes");
    }
    std::vector<bool> in_train(static_cast<std::size_t>(classes), false);
    auto check_split = [&](const std::vector<LabeledInstance>& split, bool is_train) {
        for (const auto& inst : split) {
            if (inst.series.size() != dataset.series_length) {
                throw std::invalid_argument("dataset '" + dataset.name + "': ragged series length");
            }
            if (inst.label < 0 || inst.label >= classes) {
                throw std::invalid_argument("dataset '" + dataset.name + "': label out of range");
            }
            for (const double v : inst.series) {
                if (!std::isfinite(v)) {
                    throw std::invalid_argument("dataset '" + dataset.name + "': non-finite value");
                }
            }
            if (is_train) {
                in_train[static_cast<std::size_t>(inst.label)] = true;
            }
        }
    };
    check_split(dataset.train, true);
    check_split(dataset.test, false);
    for (const auto& inst : dataset.test) {
        if (!in_train[static_cast<std::size_t>(inst.label)]) {
            throw std::invalid_argument("dataset '" + dataset.name + "': test class absent from train");
        }
    }
}

TimeSeries z_normalize(const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 2) {
        throw std::invalid_argument("z_normalize: series length must be >= 2");
    }
    double sum = 0.0;
    for (const double v : series) {
        sum += v;
    }
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (const double v : series) {
        const double d = v - mean;
        sq += d * d;
    }
    const double std_dev = std::sqrt(sq / static_cast<double>(n));
    TimeSeries out(n, 0.0);
    if (std_dev < 1e-12) {
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = (series[i] - mean) / std_dev;
    }
    return out;
}

SplitDataset z_normalize_dataset(SplitDataset dataset) {
    for (auto& inst : dataset.train) {
        inst.series = z_normalize(inst.series);
    }
    for (auto& inst : dataset.test) {
        inst.series = z_normalize(inst.series);
    }
    return dataset;
}

double accuracy(std::span<const int> predictions, std::span<const int> truth) {
    if (predictions.size() != truth.size() || predictions.empty()) {
        throw std::invalid_argument("accuracy: sequences must have equal non-zero length");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i] == truth[i]) {
            ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

} // namespace tempobench
