#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tempobench/dataset_io.hpp"
#include "tempobench/prng.hpp"
#include "tempobench/series.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

using namespace tempobench;

TEST_CASE("z_normalize hand-computed example") {
    const auto out = z_normalize({1.0, 2.0, 3.0});
    CHECK(out[0] == doctest::Approx(-1.2247448713915889).epsilon(1e-12));
    CHECK(out[1] == doctest::Approx(0.0));
    CHECK(out[2] == doctest::Approx(1.2247448713915889).epsilon(1e-12));
}

TEST_CASE("z_normalize constant series maps to zeros") {
    CHECK(z_normalize({7.0, 7.0, 7.0, 7.0}) == TimeSeries{0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("z_normalize rejects too-short input") {
    CHECK_THROWS_AS(z_normalize({1.0}), std::invalid_argument);
}

TEST_CASE("z_normalize output statistics and idempotence") {
    Prng rng(11);
    for (int round = 0; round < 50; ++round) {
        TimeSeries series(32);
        for (auto& v : series) {
            v = rng.next_gaussian(3.0, 5.0);
        }
        const auto normalized = z_normalize(series);
        double mean = 0.0;
        for (const double v : normalized) {
            mean += v;
        }
        mean /= static_cast<double>(normalized.size());
        double sq = 0.0;
        for (const double v : normalized) {
            sq += (v - mean) * (v - mean);
        }
        const double std_dev = std::sqrt(sq / static_cast<double>(normalized.size()));
        CHECK(std::fabs(mean) < 1e-10);
        CHECK(std::fabs(std_dev - 1.0) < 1e-10);

        const auto twice = z_normalize(normalized);
        for (std::size_t i = 0; i < normalized.size(); ++i) {
            CHECK(twice[i] == doctest::Approx(normalized[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("accuracy examples and errors") {
    CHECK(accuracy(std::vector<int>{0, 1, 1}, std::vector<int>{0, 1, 1}) == 1.0);
    CHECK(accuracy(std::vector<int>{0, 0, 0, 0}, std::vector<int>{1, 1, 1, 1}) == 0.0);
    CHECK(accuracy(std::vector<int>{0, 1, 0, 1}, std::vector<int>{0, 1, 1, 1}) == 0.75);
    CHECK_THROWS_AS(accuracy(std::vector<int>{0}, std::vector<int>{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(accuracy(std::vector<int>{}, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("exact_sum is invariant under reordering") {
    Prng rng(21);
    std::vector<double> values(200);
    for (auto& v : values) {
        v = rng.next_gaussian(0.0, 1.0) * std::exp2(rng.next_int(-30, 30));
    }
    const double forward = exact_sum(values);
    auto reversed = values;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(exact_sum(reversed) == forward);
    auto shuffled = values;
    rng.shuffle(shuffled);
    CHECK(exact_sum(shuffled) == forward);
    // Known catastrophic-cancellation case a naive sum gets wrong.
    CHECK(exact_sum(std::vector<double>{1e16, 1.0, -1e16}) == 1.0);
}

TEST_CASE("squared_euclidean is exactly coordinate-order invariant") {
    Prng rng(31);
    TimeSeries x(64);
    TimeSeries y(64);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.next_gaussian(0.0, 1.0);
        y[i] = rng.next_gaussian(0.0, 1.0);
    }
    const double base = squared_euclidean(x, y);
    std::vector<std::size_t> perm(x.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        perm[i] = i;
    }
    rng.shuffle(perm);
    TimeSeries xp(x.size());
    TimeSeries yp(y.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        xp[i] = x[perm[i]];
        yp[i] = y[perm[i]];
    }
    CHECK(squared_euclidean(xp, yp) == base);
    CHECK_THROWS_AS(squared_euclidean(x, TimeSeries{1.0}), std::invalid_argument);
}

TEST_CASE("dataset validation catches broken invariants") {
    SplitDataset dataset;
    dataset.name = "toy";
    dataset.series_length = 3;
    dataset.train = {{{1.0, 2.0, 3.0}, 0}, {{0.0, 1.0, 0.0}, 1}};
    dataset.test = {{{1.0, 0.0, 2.0}, 1}};
    dataset.label_names = {"a", "b"};
    CHECK_NOTHROW(validate(dataset));

    auto ragged = dataset;
    ragged.train[0].series.push_back(4.0);
    CHECK_THROWS_AS(validate(ragged), std::invalid_argument);

    auto nan_case = dataset;
    nan_case.test[0].series[1] = std::nan("");
    CHECK_THROWS_AS(validate(nan_case), std::invalid_argument);

    auto single_class = dataset;
    single_class.train[1].label = 0;
    single_class.test[0].label = 0;
    CHECK_THROWS_AS(validate(single_class), std::invalid_argument);

    auto missing_class = dataset;
    missing_class.test[0].label = 1;
    missing_class.train[1].label = 0;
    CHECK_THROWS_AS(validate(missing_class), std::invalid_argument);

    auto empty_split = dataset;
    empty_split.test.clear();
    CHECK_THROWS_AS(validate(empty_split), std::invalid_argument);
}

TEST_CASE("dataset TSV round trip preserves values and labels") {
    const auto dir = std::filesystem::temp_directory_path() / "tempobench_io_test";
    std::filesystem::remove_all(dir);

    SplitDataset dataset;
    dataset.name = "RoundTrip";
    dataset.series_length = 4;
    dataset.label_names = {"-1", "1"};
    Prng rng(17);
    for (int i = 0; i < 6; ++i) {
        LabeledInstance inst;
        inst.label = i % 2;
        for (int k = 0; k < 4; ++k) {
            inst.series.push_back(rng.next_gaussian(0.0, 1.0));
        }
        (i < 4 ? dataset.train : dataset.test).push_back(inst);
    }
    save_dataset(dataset, dir);
    const auto loaded = load_dataset(dir, "RoundTrip");
    CHECK(loaded == dataset);

    CHECK(list_datasets(dir) == std::vector<std::string>{"RoundTrip"});
    std::filesystem::remove_all(dir);
}

TEST_CASE("label interning sorts numerically when labels are integers") {
    const auto dir = std::filesystem::temp_directory_path() / "tempobench_intern_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    {
        std::ofstream train(dir / "Toy_TRAIN.tsv");
        train << "10\t1.0\t2.0\n2\t0.5\t0.25\n-1\t3.5\t4.5\n";
        std::ofstream test(dir / "Toy_TEST.tsv");
        test << "2\t1.5\t2.5\n";
    }
    const auto dataset = load_dataset(dir, "Toy");
    CHECK(dataset.label_names == std::vector<std::string>{"-1", "2", "10"});
    CHECK(dataset.train[0].label == 2); // "10" is the numerically largest
    CHECK(dataset.train[1].label == 1);
    CHECK(dataset.train[2].label == 0);
    CHECK(dataset.test[0].label == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("unknown test label is rejected") {
    const auto dir = std::filesystem::temp_directory_path() / "tempobench_badlabel_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    {
        std::ofstream train(dir / "Bad_TRAIN.tsv");
        train << "a\t1.0\t2.0\nb\t0.5\t0.25\n";
        std::ofstream test(dir / "Bad_TEST.tsv");
        test << "c\t1.5\t2.5\n";
    }
    CHECK_THROWS_AS(load_dataset(dir, "Bad"), std::invalid_argument);
    std::filesystem::remove_all(dir);
}
