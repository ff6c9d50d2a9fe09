#include "tempobench/classifiers.hpp"

#include "internal/ridge_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tempobench {

namespace {

/// In-place lower Cholesky of a symmetric matrix stored in a row-major
/// FeatureMatrix. Returns false when a non-positive pivot appears.
bool cholesky_factor(FeatureMatrix& a) {
    const std::size_t n = a.rows;
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a.at(j, j);
        for (std::size_t k = 0; k < j; ++k) {
            diag -= a.at(j, k) * a.at(j, k);
        }
        if (!(diag > 0.0)) {
            return false;
        }
        const double root = std::sqrt(diag);
        a.at(j, j) = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a.at(i, j);
            for (std::size_t k = 0; k < j; ++k) {
                v -= a.at(i, k) * a.at(j, k);
            }
            a.at(i, j) = v / root;
        }
    }
    return true;
}

/// Solves L L' X = B for every column of B given the factored lower L.
FeatureMatrix cholesky_solve(const FeatureMatrix& chol, const FeatureMatrix& b) {
    const std::size_t n = chol.rows;
    FeatureMatrix x = b;
    for (std::size_t col = 0; col < b.cols; ++col) {
        for (std::size_t i = 0; i < n; ++i) {
            double v = x.at(i, col);
            for (std::size_t k = 0; k < i; ++k) {
                v -= chol.at(i, k) * x.at(k, col);
            }
            x.at(i, col) = v / chol.at(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double v = x.at(ii, col);
            for (std::size_t k = ii + 1; k < n; ++k) {
                v -= chol.at(k, ii) * x.at(k, col);
            }
            x.at(ii, col) = v / chol.at(ii, ii);
        }
    }
    return x;
}

/// A' * B for row-major matrices with matching row counts.
FeatureMatrix transpose_times(const FeatureMatrix& a, const FeatureMatrix& b) {
    FeatureMatrix out(a.cols, b.cols);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t i = 0; i < a.cols; ++i) {
            const double av = a.at(r, i);
            if (av == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols; ++j) {
                out.at(i, j) += av * b.at(r, j);
            }
        }
    }
    return out;
}

/// A * B' for row-major matrices with matching column counts.
FeatureMatrix times_transpose(const FeatureMatrix& a, const FeatureMatrix& b) {
    FeatureMatrix out(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < b.rows; ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) {
                sum += a.at(i, k) * b.at(j, k);
            }
            out.at(i, j) = sum;
        }
    }
    return out;
}

void add_diagonal(FeatureMatrix& a, double value) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        a.at(i, i) += value;
    }
}

double trace(const FeatureMatrix& a) {
    double t = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) {
        t += a.at(i, i);
    }
    return t;
}

/// Factors `gram` (already including lambda on the diagonal), retrying once
/// with the documented jitter, then solves for every column of `rhs`.
FeatureMatrix factor_and_solve(FeatureMatrix gram, const FeatureMatrix& rhs) {
    FeatureMatrix factored = gram;
    if (!cholesky_factor(factored)) {
        const double jitter = 1e-8 * trace(gram) / static_cast<double>(gram.rows);
        add_diagonal(gram, jitter);
        factored = gram;
        if (!cholesky_factor(factored)) {
            throw std::runtime_error("ridge: Gram matrix is not positive definite even after jitter");
        }
    }
    return cholesky_solve(factored, rhs);
}

FeatureMatrix one_vs_rest_targets(std::span<const int> labels, int classes) {
    FeatureMatrix y(labels.size(), static_cast<std::size_t>(classes));
    for (std::size_t r = 0; r < labels.size(); ++r) {
        for (int c = 0; c < classes; ++c) {
            y.at(r, static_cast<std::size_t>(c)) = labels[r] == c ? 1.0 : -1.0;
        }
    }
    return y;
}

/// Ridge weights for each lambda with the Gram matrix built once. Uses the
/// dual form (Z Z' + lambda I) when there are more columns than rows.
std::vector<FeatureMatrix> solve_ridge_grid(const FeatureMatrix& z, const FeatureMatrix& y,
                                            std::span<const double> lambdas) {
    std::vector<FeatureMatrix> solutions;
    solutions.reserve(lambdas.size());
    if (z.cols <= z.rows) {
        const FeatureMatrix gram = transpose_times(z, z);
        const FeatureMatrix rhs = transpose_times(z, y);
        for (const double lambda : lambdas) {
            FeatureMatrix regularized = gram;
            add_diagonal(regularized, lambda);
            solutions.push_back(factor_and_solve(std::move(regularized), rhs));
        }
    } else {
        const FeatureMatrix gram = times_transpose(z, z);
        for (const double lambda : lambdas) {
            FeatureMatrix regularized = gram;
            add_diagonal(regularized, lambda);
            const FeatureMatrix alpha = factor_and_solve(std::move(regularized), y);
            solutions.push_back(transpose_times(z, alpha));
        }
    }
    return solutions;
}

std::vector<int> predict_from_weights(const FeatureMatrix& features, const FeatureMatrix& weights) {
    std::vector<int> labels(features.rows, 0);
    for (std::size_t r = 0; r < features.rows; ++r) {
        int best_class = 0;
        double best_score = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < weights.cols; ++c) {
            double score = 0.0;
            for (std::size_t k = 0; k < features.cols; ++k) {
                score += features.at(r, k) * weights.at(k, c);
            }
            if (score > best_score) { // ties keep the smaller class index
                best_score = score;
                best_class = static_cast<int>(c);
            }
        }
        labels[r] = best_class;
    }
    return labels;
}

FeatureMatrix standardize(const FeatureMatrix& features, const std::vector<double>& mean,
                          const std::vector<double>& scale) {
    FeatureMatrix out(features.rows, features.cols);
    for (std::size_t r = 0; r < features.rows; ++r) {
        for (std::size_t c = 0; c < features.cols; ++c) {
            out.at(r, c) = (features.at(r, c) - mean[c]) * scale[c];
        }
    }
    return out;
}

FeatureMatrix select_rows(const FeatureMatrix& features, std::span<const std::size_t> rows) {
    FeatureMatrix out(rows.size(), features.cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::copy_n(features.values.begin() + static_cast<std::ptrdiff_t>(rows[i] * features.cols),
                    features.cols, out.values.begin() + static_cast<std::ptrdiff_t>(i * features.cols));
    }
    return out;
}

} // namespace

FeatureMatrix solve_ridge(const FeatureMatrix& z, const FeatureMatrix& targets, double lambda) {
    if (z.rows != targets.rows || z.rows == 0 || z.cols == 0) {
        throw std::invalid_argument("solve_ridge: shape mismatch or empty input");
    }
    const double lambdas[] = {lambda};
    return solve_ridge_grid(z, targets, lambdas).front();
}

namespace internal {

RidgeModel ridge_fit(const FeatureMatrix& train_features, std::span<const int> train_labels,
                     std::span<const double> lambda_grid, Prng& rng) {
    const std::size_t rows = train_features.rows;
    const std::size_t cols = train_features.cols;
    if (rows == 0 || cols == 0 || rows != train_labels.size()) {
        throw std::invalid_argument("ridge_fit: shape mismatch or empty input");
    }
    if (lambda_grid.empty()) {
        throw std::invalid_argument("ridge_fit: empty lambda grid");
    }

    RidgeModel model;
    for (const int label : train_labels) {
        model.classes = std::max(model.classes, label + 1);
    }

    // Train-only standardization statistics (population std).
    model.column_mean.assign(cols, 0.0);
    model.column_scale.assign(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            mean += train_features.at(r, c);
        }
        mean /= static_cast<double>(rows);
        double sq = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            const double d = train_features.at(r, c) - mean;
            sq += d * d;
        }
        const double std_dev = std::sqrt(sq / static_cast<double>(rows));
        model.column_mean[c] = mean;
        model.column_scale[c] = std_dev < 1e-12 ? 0.0 : 1.0 / std_dev;
    }

    const FeatureMatrix z = standardize(train_features, model.column_mean, model.column_scale);

    bool all_rows_identical = true;
    for (std::size_t r = 1; r < rows && all_rows_identical; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (z.at(r, c) != z.at(0, c)) {
                all_rows_identical = false;
                break;
            }
        }
    }
    if (all_rows_identical) {
        model.degenerate = true;
        std::vector<std::size_t> counts(static_cast<std::size_t>(model.classes), 0);
        for (const int label : train_labels) {
            ++counts[static_cast<std::size_t>(label)];
        }
        model.majority_label = static_cast<int>(
            std::max_element(counts.begin(), counts.end()) - counts.begin());
        model.lambda = lambda_grid.front();
        return model;
    }

    std::vector<double> lambdas(lambda_grid.begin(), lambda_grid.end());
    std::sort(lambdas.begin(), lambdas.end());

    const FeatureMatrix y = one_vs_rest_targets(train_labels, model.classes);

    double chosen = lambdas.front();
    if (lambdas.size() > 1 && rows >= 2) {
        const std::size_t folds = std::min<std::size_t>(5, rows);
        // Stratified assignment: shuffle each class's rows, deal round-robin.
        std::vector<std::size_t> fold_of(rows, 0);
        for (int cls = 0; cls < model.classes; ++cls) {
            std::vector<std::size_t> members;
            for (std::size_t r = 0; r < rows; ++r) {
                if (train_labels[r] == cls) {
                    members.push_back(r);
                }
            }
            rng.shuffle(members);
            for (std::size_t i = 0; i < members.size(); ++i) {
                fold_of[members[i]] = i % folds;
            }
        }

        std::vector<std::size_t> hits(lambdas.size(), 0);
        for (std::size_t fold = 0; fold < folds; ++fold) {
            std::vector<std::size_t> fit_rows;
            std::vector<std::size_t> val_rows;
            for (std::size_t r = 0; r < rows; ++r) {
                (fold_of[r] == fold ? val_rows : fit_rows).push_back(r);
            }
            if (fit_rows.empty() || val_rows.empty()) {
                continue;
            }
            const FeatureMatrix z_fit = select_rows(z, fit_rows);
            const FeatureMatrix y_fit = select_rows(y, fit_rows);
            const FeatureMatrix z_val = select_rows(z, val_rows);
            const auto weights_per_lambda = solve_ridge_grid(z_fit, y_fit, lambdas);
            for (std::size_t li = 0; li < lambdas.size(); ++li) {
                const auto predicted = predict_from_weights(z_val, weights_per_lambda[li]);
                for (std::size_t i = 0; i < val_rows.size(); ++i) {
                    if (predicted[i] == train_labels[val_rows[i]]) {
                        ++hits[li];
                    }
                }
            }
        }
        std::size_t best_index = 0;
        for (std::size_t li = 1; li < lambdas.size(); ++li) {
            if (hits[li] > hits[best_index]) { // ties keep the smaller lambda
                best_index = li;
            }
        }
        chosen = lambdas[best_index];
    }

    model.lambda = chosen;
    model.weights = solve_ridge(z, y, chosen);
    return model;
}

std::vector<int> ridge_predict(const RidgeModel& model, const FeatureMatrix& features) {
    if (model.degenerate) {
        return std::vector<int>(features.rows, model.majority_label);
    }
    const FeatureMatrix z = standardize(features, model.column_mean, model.column_scale);
    return predict_from_weights(z, model.weights);
}

} // namespace internal

std::vector<int> ridge_fit_predict(const FeatureMatrix& train_features,
                                   std::span<const int> train_labels,
                                   const FeatureMatrix& test_features,
                                   std::span<const double> lambda_grid, Prng& rng) {
    const auto model = internal::ridge_fit(train_features, train_labels, lambda_grid, rng);
    return internal::ridge_predict(model, test_features);
}

std::vector<double> default_lambda_grid() {
    return {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
}

} // namespace tempobench
