#include "tempobench/classifiers.hpp"

#include "internal/ridge_model.hpp"

#include <chrono>
#include <stdexcept>

namespace tempobench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start, Clock::time_point stop) {
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

void validate_inputs(std::span<const LabeledInstance> train,
                     std::span<const LabeledInstance> test) {
    if (train.empty()) {
        throw std::invalid_argument("train_predict: empty training set");
    }
    const std::size_t length = train.front().series.size();
    bool multi_class = false;
    for (const auto& inst : train) {
        if (inst.series.size() != length) {
            throw std::invalid_argument("train_predict: train length mismatch");
        }
        multi_class = multi_class || inst.label != train.front().label;
    }
    if (!multi_class) {
        throw std::invalid_argument("train_predict: single-class training set");
    }
    for (const auto& inst : test) {
        if (inst.series.size() != length) {
            throw std::invalid_argument("train_predict: test length mismatch");
        }
    }
}

Prng features_rng(const ClassifierSpec& spec) {
    return Prng(derive_seed_from_fields({std::to_string(spec.seed), "features"}));
}

Prng ridge_rng(const ClassifierSpec& spec) {
    return Prng(derive_seed_from_fields({std::to_string(spec.seed), "ridge"}));
}

} // namespace

TimedPredictions train_predict_timed(const ClassifierSpec& spec,
                                     std::span<const LabeledInstance> train,
                                     std::span<const LabeledInstance> test) {
    validate_inputs(train, test);

    std::vector<int> train_labels;
    train_labels.reserve(train.size());
    for (const auto& inst : train) {
        train_labels.push_back(inst.label);
    }

    TimedPredictions result;
    const auto t0 = Clock::now();

    switch (spec.kind) {
    case ClassifierKind::nn1_euclid: {
        const auto t1 = Clock::now();
        result.labels = nn1(Nn1Metric::euclid, 1.0, train, test);
        const auto t2 = Clock::now();
        result.train_ms = elapsed_ms(t0, t1);
        result.test_ms = elapsed_ms(t1, t2);
        return result;
    }
    case ClassifierKind::nn1_dtw: {
        const auto t1 = Clock::now();
        result.labels = nn1(Nn1Metric::dtw, spec.dtw_band, train, test);
        const auto t2 = Clock::now();
        result.train_ms = elapsed_ms(t0, t1);
        result.test_ms = elapsed_ms(t1, t2);
        return result;
    }
    case ClassifierKind::kernel_conv: {
        auto frng = features_rng(spec);
        auto rrng = ridge_rng(spec);
        const auto kernels = make_conv_kernels(train.front().series.size(), spec.kernel_count, frng);
        const auto train_features = conv_feature_matrix(train, kernels);
        const auto model = internal::ridge_fit(train_features, train_labels, spec.lambda_grid, rrng);
        const auto t1 = Clock::now();
        const auto test_features = conv_feature_matrix(test, kernels);
        result.labels = internal::ridge_predict(model, test_features);
        const auto t2 = Clock::now();
        result.train_ms = elapsed_ms(t0, t1);
        result.test_ms = elapsed_ms(t1, t2);
        return result;
    }
    case ClassifierKind::shapelet: {
        auto frng = features_rng(spec);
        auto rrng = ridge_rng(spec);
        const auto shapelets =
            shapelet_select(train, spec.shapelet_candidates, spec.shapelet_keep, frng);
        const auto train_features = shapelet_feature_matrix(train, shapelets);
        const auto model = internal::ridge_fit(train_features, train_labels, spec.lambda_grid, rrng);
        const auto t1 = Clock::now();
        const auto test_features = shapelet_feature_matrix(test, shapelets);
        result.labels = internal::ridge_predict(model, test_features);
        const auto t2 = Clock::now();
        result.train_ms = elapsed_ms(t0, t1);
        result.test_ms = elapsed_ms(t1, t2);
        return result;
    }
    case ClassifierKind::interval: {
        auto frng = features_rng(spec);
        auto rrng = ridge_rng(spec);
        const auto intervals =
            make_intervals(train.front().series.size(), spec.interval_count, frng);
        const auto train_features = interval_feature_matrix(train, intervals);
        const auto model = internal::ridge_fit(train_features, train_labels, spec.lambda_grid, rrng);
        const auto t1 = Clock::now();
        const auto test_features = interval_feature_matrix(test, intervals);
        result.labels = internal::ridge_predict(model, test_features);
        const auto t2 = Clock::now();
        result.train_ms = elapsed_ms(t0, t1);
        result.test_ms = elapsed_ms(t1, t2);
        return result;
    }
    case ClassifierKind::global_feature: {
        auto rrng = ridge_rng(spec);
        const auto train_features = global_feature_matrix(train);
        const auto model = internal::ridge_fit(train_features, train_labels, spec.lambda_grid, rrng);
        const auto t1 = Clock::now();
        const auto test_features = global_feature_matrix(test);
        result.labels = internal::ridge_predict(model, test_features);
        const auto t2 = Clock::now();
        result.train_ms = elapsed_ms(t0, t1);
        result.test_ms = elapsed_ms(t1, t2);
        return result;
    }
    }
    throw std::invalid_argument("train_predict: unknown classifier kind");
}

std::vector<int> train_predict(const ClassifierSpec& spec,
                               std::span<const LabeledInstance> train,
                               std::span<const LabeledInstance> test) {
    return train_predict_timed(spec, train, test).labels;
}

std::string to_string(ClassifierKind kind) {
    switch (kind) {
    case ClassifierKind::nn1_euclid: return "nn1_euclid";
    case ClassifierKind::nn1_dtw: return "nn1_dtw";
    case ClassifierKind::kernel_conv: return "kernel_conv";
    case ClassifierKind::shapelet: return "shapelet";
    case ClassifierKind::interval: return "interval";
    case ClassifierKind::global_feature: return "global_feature";
    }
    return "unknown";
}

ClassifierKind classifier_kind_from_string(const std::string& name) {
    for (const auto kind : all_classifier_kinds()) {
        if (to_string(kind) == name) {
            return kind;
        }
    }
    throw std::invalid_argument("unknown classifier kind '" + name + "'");
}

std::vector<ClassifierKind> all_classifier_kinds() {
    return {ClassifierKind::nn1_euclid, ClassifierKind::nn1_dtw,   ClassifierKind::kernel_conv,
            ClassifierKind::shapelet,   ClassifierKind::interval,  ClassifierKind::global_feature};
}

} // namespace tempobench
