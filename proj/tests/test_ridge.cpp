#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tempobench/classifiers.hpp"
#include "tempobench/prng.hpp"

#include <cmath>

using namespace tempobench;

namespace {

FeatureMatrix random_matrix(Prng& rng, std::size_t rows, std::size_t cols) {
    FeatureMatrix m(rows, cols);
    for (auto& v : m.values) {
        v = rng.next_gaussian(0.0, 1.0);
    }
    return m;
}

/// inf-norm of (Z'Z + lambda I) W - Z'Y, the normal-equation residual.
double normal_equation_residual(const FeatureMatrix& z, const FeatureMatrix& y,
                                const FeatureMatrix& w, double lambda) {
    FeatureMatrix gram(z.cols, z.cols);
    for (std::size_t r = 0; r < z.rows; ++r) {
        for (std::size_t i = 0; i < z.cols; ++i) {
            for (std::size_t j = 0; j < z.cols; ++j) {
                gram.at(i, j) += z.at(r, i) * z.at(r, j);
            }
        }
    }
    for (std::size_t i = 0; i < z.cols; ++i) {
        gram.at(i, i) += lambda;
    }
    FeatureMatrix rhs(z.cols, y.cols);
    for (std::size_t r = 0; r < z.rows; ++r) {
        for (std::size_t i = 0; i < z.cols; ++i) {
            for (std::size_t c = 0; c < y.cols; ++c) {
                rhs.at(i, c) += z.at(r, i) * y.at(r, c);
            }
        }
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < z.cols; ++i) {
        for (std::size_t c = 0; c < y.cols; ++c) {
            double lhs = 0.0;
            for (std::size_t k = 0; k < z.cols; ++k) {
                lhs += gram.at(i, k) * w.at(k, c);
            }
            worst = std::max(worst, std::fabs(lhs - rhs.at(i, c)));
        }
    }
    return worst;
}

double frobenius(const FeatureMatrix& m) {
    double sq = 0.0;
    for (const double v : m.values) {
        sq += v * v;
    }
    return std::sqrt(sq);
}

double ridge_objective(const FeatureMatrix& z, const FeatureMatrix& y, const FeatureMatrix& w,
                       double lambda) {
    double loss = 0.0;
    for (std::size_t r = 0; r < z.rows; ++r) {
        for (std::size_t c = 0; c < y.cols; ++c) {
            double fit = 0.0;
            for (std::size_t k = 0; k < z.cols; ++k) {
                fit += z.at(r, k) * w.at(k, c);
            }
            const double d = fit - y.at(r, c);
            loss += d * d;
        }
    }
    double penalty = 0.0;
    for (const double v : w.values) {
        penalty += v * v;
    }
    return loss + lambda * penalty;
}

} // namespace

TEST_CASE("normal-equation residual stays below 1e-8 on random 50x20 problems") {
    Prng rng(1);
    for (int round = 0; round < 20; ++round) {
        const auto z = random_matrix(rng, 50, 20);
        const auto y = random_matrix(rng, 50, 3);
        for (const double lambda : {1e-3, 1.0, 1e3}) {
            const auto w = solve_ridge(z, y, lambda);
            CHECK(normal_equation_residual(z, y, w, lambda) < 1e-8);
        }
    }
}

TEST_CASE("dual route (cols > rows) satisfies the same normal equations") {
    Prng rng(2);
    for (int round = 0; round < 10; ++round) {
        const auto z = random_matrix(rng, 15, 40);
        const auto y = random_matrix(rng, 15, 2);
        for (const double lambda : {1e-2, 1.0, 1e2}) {
            const auto w = solve_ridge(z, y, lambda);
            CHECK(w.rows == 40);
            CHECK(normal_equation_residual(z, y, w, lambda) < 1e-8);
        }
    }
}

TEST_CASE("stronger regularization shrinks the weights") {
    Prng rng(3);
    const auto z = random_matrix(rng, 12, 6);
    const auto y = random_matrix(rng, 12, 2);
    const auto small = solve_ridge(z, y, 1e-3);
    const auto large = solve_ridge(z, y, 1e3);
    CHECK(frobenius(large) < frobenius(small));
}

TEST_CASE("identity design at tiny lambda reproduces the targets") {
    const std::size_t n = 10;
    FeatureMatrix z(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        z.at(i, i) = 1.0;
    }
    Prng rng(4);
    const auto y = random_matrix(rng, n, 2);
    const auto w = solve_ridge(z, y, 1e-3);
    double residual_sq = 0.0;
    double target_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < 2; ++c) {
            const double d = w.at(i, c) - y.at(i, c);
            residual_sq += d * d;
            target_sq += y.at(i, c) * y.at(i, c);
        }
    }
    CHECK(std::sqrt(residual_sq) <= 0.01 * std::sqrt(target_sq));
}

TEST_CASE("solution is a local minimum of the regularized objective") {
    Prng rng(5);
    const auto z = random_matrix(rng, 16, 5);
    const auto y = random_matrix(rng, 16, 2);
    const double lambda = 0.5;
    const auto w = solve_ridge(z, y, lambda);
    const double at_solution = ridge_objective(z, y, w, lambda);
    for (int round = 0; round < 100; ++round) {
        auto perturbed = w;
        for (auto& v : perturbed.values) {
            v += 1e-3 * rng.next_gaussian(0.0, 1.0);
        }
        CHECK(ridge_objective(z, y, perturbed, lambda) >= at_solution);
    }
}

TEST_CASE("ridge_fit_predict separates a linearly separable problem") {
    Prng rng(6);
    FeatureMatrix train(40, 3);
    std::vector<int> labels(40);
    for (std::size_t r = 0; r < 40; ++r) {
        labels[r] = static_cast<int>(r % 2);
        train.at(r, 0) = (labels[r] == 0 ? -2.0 : 2.0) + 0.1 * rng.next_gaussian(0.0, 1.0);
        train.at(r, 1) = rng.next_gaussian(0.0, 1.0);
        train.at(r, 2) = rng.next_gaussian(0.0, 1.0);
    }
    FeatureMatrix test(10, 3);
    std::vector<int> expected(10);
    for (std::size_t r = 0; r < 10; ++r) {
        expected[r] = static_cast<int>(r % 2);
        test.at(r, 0) = expected[r] == 0 ? -2.0 : 2.0;
    }
    const auto grid = default_lambda_grid();
    Prng cv_rng(7);
    const auto predictions = ridge_fit_predict(train, labels, test, grid, cv_rng);
    CHECK(predictions == expected);

    Prng cv_rng2(7);
    CHECK(ridge_fit_predict(train, labels, test, grid, cv_rng2) == predictions);
}

TEST_CASE("identical training rows fall back to the majority class") {
    FeatureMatrix train(5, 2);
    for (std::size_t r = 0; r < 5; ++r) {
        train.at(r, 0) = 1.5;
        train.at(r, 1) = -4.0;
    }
    const std::vector<int> labels = {1, 0, 1, 1, 0};
    FeatureMatrix test(3, 2);
    Prng rng(8);
    const auto grid = default_lambda_grid();
    const auto predictions = ridge_fit_predict(train, labels, test, grid, rng);
    CHECK(predictions == std::vector<int>{1, 1, 1});
}

TEST_CASE("fewer rows than folds still works") {
    FeatureMatrix train(3, 2);
    train.at(0, 0) = -1.0;
    train.at(1, 0) = 1.0;
    train.at(2, 0) = 1.1;
    const std::vector<int> labels = {0, 1, 1};
    FeatureMatrix test(2, 2);
    test.at(0, 0) = -0.9;
    test.at(1, 0) = 0.95;
    Prng rng(9);
    const auto grid = default_lambda_grid();
    const auto predictions = ridge_fit_predict(train, labels, test, grid, rng);
    CHECK(predictions.size() == 2);
    CHECK(predictions[0] == 0);
    CHECK(predictions[1] == 1);
}
