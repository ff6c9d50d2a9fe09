#pragma once

#include "tempobench/classifiers.hpp"
#include "tempobench/prng.hpp"
#include "tempobench/series.hpp"
#include "tempobench/synth.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace tempobench {

/// A dataset either loaded from a TSV split pair or generated on the fly.
struct DatasetSource {
    struct TsvPair {
        std::filesystem::path dir;
        std::string name;
    };
    std::variant<TsvPair, SynthSpec> source;

    std::string display_name() const;
    SplitDataset load() const;
};

struct TransformSweep {
    bool permute = false;
    std::vector<double> l_fractions; // augmentation levels; identity always runs
    double sigma = 0.01;
};

struct ExperimentConfig {
    std::vector<DatasetSource> datasets;
    std::vector<ClassifierSpec> classifiers;
    TransformSweep transforms;
    int runs = 5;
    std::uint64_t master_seed = 0;
    std::filesystem::path out_dir;
    int workers = 0; // 0 = hardware concurrency
    /// Wall-clock timings vary between executions, so recording them trades
    /// away byte-identical results files. Off by default.
    bool record_timings = false;
};

/// Parses the experiment config JSON (see README for the schema).
/// Throws std::invalid_argument on any structural problem.
ExperimentConfig load_config(const std::filesystem::path& json_path);

/// One (dataset, classifier, transform, run) result.
struct RunRecord {
    std::string dataset;
    std::string classifier;
    std::string transform; // identity | permute | augment
    double l_fraction = 0.0;
    int run = 0;
    std::uint64_t seed = 0;
    double accuracy = 0.0;
    double train_ms = 0.0;
    double test_ms = 0.0;
};

struct SkippedCell {
    std::string dataset;
    std::string classifier;
    std::string transform;
    double l_fraction = 0.0;
    int run = 0;
    std::string reason;
};

struct ExperimentResult {
    std::vector<RunRecord> records;
    std::vector<SkippedCell> skipped;
    std::filesystem::path results_csv;
};

/// Cell seed: FNV-1a 64 over the decimal/string fields joined with 0x1F,
/// then one mix64 scramble (see derive_seed_from_fields). l_milli is the
/// augmentation fraction in thousandths (0 outside augment).
std::uint64_t derive_seed(std::uint64_t master_seed, const std::string& dataset,
                          const std::string& classifier_id, const std::string& transform_id,
                          int l_milli, int run);

/// Run 0 is the original split. Runs >= 1 pool train+test and draw a
/// stratified resample without replacement that preserves the per-class
/// counts of each split; instances come back grouped by class.
SplitDataset resample_split(const SplitDataset& dataset, int run, Prng& rng);

/// Executes the full (dataset x classifier x transform x run) grid and
/// writes results.csv (sorted, byte-stable), skipped.csv when any cell
/// failed, and manifest.json into config.out_dir. Cell failures become
/// skipped rows, not crashes. Deterministic for any worker count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Exact header of results.csv.
extern const char* const kResultsCsvHeader;

void write_results_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);
std::vector<RunRecord> load_results_csv(const std::filesystem::path& path);

} // namespace tempobench
