#include "tempobench/harness.hpp"

#include "tempobench/dataset_io.hpp"
#include "tempobench/transforms.hpp"

#include "internal/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace tempobench {

namespace {

using nlohmann::json;

int l_milli_of(double l_fraction) {
    return static_cast<int>(std::lround(l_fraction * 1000.0));
}

ClassifierSpec classifier_from_json(const json& node) {
    ClassifierSpec spec;
    if (node.is_string()) {
        spec.kind = classifier_kind_from_string(node.get<std::string>());
        return spec;
    }
    if (!node.is_object() || !node.contains("kind")) {
        throw std::invalid_argument("config: classifier entries need a 'kind'");
    }
    spec.kind = classifier_kind_from_string(node.at("kind").get<std::string>());
    spec.dtw_band = node.value("dtw_band", spec.dtw_band);
    spec.kernel_count = node.value("kernels", spec.kernel_count);
    spec.shapelet_candidates = node.value("shapelet_candidates", spec.shapelet_candidates);
    spec.shapelet_keep = node.value("shapelet_keep", spec.shapelet_keep);
    spec.interval_count = node.value("intervals", spec.interval_count);
    if (node.contains("lambda_grid")) {
        spec.lambda_grid = node.at("lambda_grid").get<std::vector<double>>();
    }
    return spec;
}

SynthSpec synth_from_json(const json& node) {
    SynthSpec spec;
    spec.kind = synth_kind_from_string(node.at("kind").get<std::string>());
    spec.length = node.value("n", spec.length);
    spec.train_size = node.value("train", spec.train_size);
    spec.test_size = node.value("test", spec.test_size);
    spec.classes = node.value("classes", spec.classes);
    spec.pattern_width = node.value("width", spec.pattern_width);
    spec.noise_std = node.value("noise", spec.noise_std);
    spec.amplitude = node.value("amplitude", spec.amplitude);
    spec.seed = node.value("seed", spec.seed);
    spec.name = node.value("name", spec.name);
    return spec;
}

} // namespace

std::string DatasetSource::display_name() const {
    if (const auto* tsv = std::get_if<TsvPair>(&source)) {
        return tsv->name;
    }
    const auto& spec = std::get<SynthSpec>(source);
    return spec.name.empty() ? "synth_" + to_string(spec.kind) : spec.name;
}

SplitDataset DatasetSource::load() const {
    if (const auto* tsv = std::get_if<TsvPair>(&source)) {
        return load_dataset(tsv->dir, tsv->name);
    }
    return generate(std::get<SynthSpec>(source));
}

ExperimentConfig load_config(const std::filesystem::path& json_path) {
    std::ifstream in(json_path);
    if (!in) {
        throw std::invalid_argument("cannot open config '" + json_path.string() + "'");
    }
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument("config parse error: " + std::string(e.what()));
    }

    ExperimentConfig config;
    if (!root.contains("datasets") || !root.at("datasets").is_array() ||
        root.at("datasets").empty()) {
        throw std::invalid_argument("config: 'datasets' must be a non-empty array");
    }
    for (const auto& node : root.at("datasets")) {
        DatasetSource source;
        if (node.is_string()) {
            const std::filesystem::path prefix = node.get<std::string>();
            source.source = DatasetSource::TsvPair{prefix.parent_path(), prefix.filename().string()};
        } else if (node.is_object()) {
            source.source = synth_from_json(node);
        } else {
            throw std::invalid_argument("config: dataset entries must be path strings or synth objects");
        }
        config.datasets.push_back(std::move(source));
    }

    if (!root.contains("classifiers") || !root.at("classifiers").is_array() ||
        root.at("classifiers").empty()) {
        throw std::invalid_argument("config: 'classifiers' must be a non-empty array");
    }
    for (const auto& node : root.at("classifiers")) {
        config.classifiers.push_back(classifier_from_json(node));
    }

    if (root.contains("transforms")) {
        const auto& t = root.at("transforms");
        config.transforms.permute = t.value("permute", false);
        if (t.contains("l_fractions")) {
            config.transforms.l_fractions = t.at("l_fractions").get<std::vector<double>>();
        }
        config.transforms.sigma = t.value("sigma", config.transforms.sigma);
    }
    for (const double l : config.transforms.l_fractions) {
        if (!(l > 0.0) || l > 1.0) {
            throw std::invalid_argument("config: l_fractions must lie in (0, 1]");
        }
    }

    config.runs = root.value("runs", config.runs);
    if (config.runs < 1) {
        throw std::invalid_argument("config: runs must be >= 1");
    }
    config.master_seed = root.value("master_seed", config.master_seed);
    config.out_dir = root.value("out_dir", std::string("results"));
    config.workers = root.value("workers", config.workers);
    config.record_timings = root.value("timings", config.record_timings);
    return config;
}

std::uint64_t derive_seed(std::uint64_t master_seed, const std::string& dataset,
                          const std::string& classifier_id, const std::string& transform_id,
                          int l_milli, int run) {
    return derive_seed_from_fields({std::to_string(master_seed), dataset, classifier_id,
                                    transform_id, std::to_string(l_milli), std::to_string(run)});
}

SplitDataset resample_split(const SplitDataset& dataset, int run, Prng& rng) {
    if (run < 0) {
        throw std::invalid_argument("resample_split: run must be >= 0");
    }
    if (run == 0) {
        return dataset;
    }
    const int classes = class_count(dataset);
    SplitDataset out = dataset;
    out.train.clear();
    out.test.clear();
    for (int cls = 0; cls < classes; ++cls) {
        std::vector<const LabeledInstance*> pool;
        std::size_t train_count = 0;
        for (const auto& inst : dataset.train) {
            if (inst.label == cls) {
                pool.push_back(&inst);
                ++train_count;
            }
        }
        for (const auto& inst : dataset.test) {
            if (inst.label == cls) {
                pool.push_back(&inst);
            }
        }
        rng.shuffle(pool);
        for (std::size_t i = 0; i < pool.size(); ++i) {
            (i < train_count ? out.train : out.test).push_back(*pool[i]);
        }
    }
    return out;
}

const char* const kResultsCsvHeader = "dataset,classifier,transform,l_fraction,run,seed,accuracy,train_ms,test_ms";

namespace {

void check_csv_safe(const std::string& text) {
    if (text.find(',') != std::string::npos || text.find('\n') != std::string::npos) {
        throw std::invalid_argument("name '" + text + "' may not contain commas or newlines");
    }
}

std::string record_to_csv(const RunRecord& r) {
    using internal::format_double;
    std::string line;
    line += r.dataset;
    line += ',';
    line += r.classifier;
    line += ',';
    line += r.transform;
    line += ',';
    line += format_double(r.l_fraction);
    line += ',';
    line += std::to_string(r.run);
    line += ',';
    line += std::to_string(r.seed);
    line += ',';
    line += format_double(r.accuracy);
    line += ',';
    line += format_double(r.train_ms);
    line += ',';
    line += format_double(r.test_ms);
    return line;
}

struct Cell {
    std::size_t dataset_index;
    std::size_t classifier_index;
    std::string transform; // identity | permute | augment
    double l_fraction;
    int run;
};

} // namespace

void write_results_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << kResultsCsvHeader << '\n';
    for (const auto& r : records) {
        out << record_to_csv(r) << '\n';
    }
}

std::vector<RunRecord> load_results_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open results '" + path.string() + "'");
    }
    std::string line;
    std::getline(in, line);
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kResultsCsvHeader) {
        throw std::invalid_argument("results '" + path.string() + "': unexpected header");
    }
    std::vector<RunRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = internal::split(line, ',');
        if (fields.size() != 9) {
            throw std::invalid_argument("results line " + std::to_string(line_no) + ": expected 9 fields");
        }
        RunRecord r;
        r.dataset = std::string(fields[0]);
        r.classifier = std::string(fields[1]);
        r.transform = std::string(fields[2]);
        r.l_fraction = internal::parse_double(fields[3], "l_fraction");
        r.run = static_cast<int>(internal::parse_int(fields[4], "run"));
        r.seed = static_cast<std::uint64_t>(internal::parse_uint(fields[5], "seed"));
        r.accuracy = internal::parse_double(fields[6], "accuracy");
        r.train_ms = internal::parse_double(fields[7], "train_ms");
        r.test_ms = internal::parse_double(fields[8], "test_ms");
        records.push_back(std::move(r));
    }
    return records;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.datasets.empty() || config.classifiers.empty() || config.runs < 1) {
        throw std::invalid_argument("run_experiment: empty dataset or classifier list");
    }

    // Load (or generate) and z-normalize each dataset once, up front.
    // A dataset that fails to load skips all of its cells, not the sweep.
    struct LoadedDataset {
        std::string name;
        SplitDataset data;
        bool ok = false;
        std::string error;
    };
    std::vector<LoadedDataset> loaded(config.datasets.size());
    std::set<std::string> names;
    for (std::size_t i = 0; i < config.datasets.size(); ++i) {
        loaded[i].name = config.datasets[i].display_name();
        check_csv_safe(loaded[i].name);
        if (!names.insert(loaded[i].name).second) {
            // Two entries under one name would silently merge in the results.
            throw std::invalid_argument("duplicate dataset name '" + loaded[i].name +
                                        "'; give synth entries distinct \"name\" fields");
        }
        try {
            loaded[i].data = z_normalize_dataset(config.datasets[i].load());
            validate(loaded[i].data);
            loaded[i].ok = true;
        } catch (const std::exception& e) {
            loaded[i].error = e.what();
        }
    }

    std::vector<std::string> transform_ids = {"identity"};
    std::vector<double> transform_ls = {0.0};
    if (config.transforms.permute) {
        transform_ids.push_back("permute");
        transform_ls.push_back(0.0);
    }
    for (const double l : config.transforms.l_fractions) {
        transform_ids.push_back("augment");
        transform_ls.push_back(l);
    }

    std::vector<Cell> cells;
    for (std::size_t d = 0; d < config.datasets.size(); ++d) {
        for (std::size_t c = 0; c < config.classifiers.size(); ++c) {
            for (std::size_t t = 0; t < transform_ids.size(); ++t) {
                for (int run = 0; run < config.runs; ++run) {
                    cells.push_back(Cell{d, c, transform_ids[t], transform_ls[t], run});
                }
            }
        }
    }
    // Output order: (dataset, classifier, transform, l, run).
    std::sort(cells.begin(), cells.end(), [&](const Cell& a, const Cell& b) {
        const auto key = [&](const Cell& cell) {
            return std::make_tuple(loaded[cell.dataset_index].name,
                                   to_string(config.classifiers[cell.classifier_index].kind),
                                   cell.transform, cell.l_fraction, cell.run);
        };
        return key(a) < key(b);
    });

    struct CellOutcome {
        bool ok = false;
        RunRecord record;
        SkippedCell skipped;
    };
    std::vector<CellOutcome> outcomes(cells.size());

    auto execute_cell = [&](std::size_t index) {
        const Cell& cell = cells[index];
        const LoadedDataset& source = loaded[cell.dataset_index];
        const std::string classifier_id = to_string(config.classifiers[cell.classifier_index].kind);
        CellOutcome& outcome = outcomes[index];

        outcome.record.dataset = source.name;
        outcome.record.classifier = classifier_id;
        outcome.record.transform = cell.transform;
        outcome.record.l_fraction = cell.l_fraction;
        outcome.record.run = cell.run;

        const int l_milli = cell.transform == "augment" ? l_milli_of(cell.l_fraction) : 0;
        const std::uint64_t cell_seed = derive_seed(config.master_seed, source.name, classifier_id,
                                                    cell.transform, l_milli, cell.run);
        outcome.record.seed = cell_seed;

        try {
            if (!source.ok) {
                throw std::runtime_error("dataset failed to load: " + source.error);
            }

            // The split depends only on (dataset, run) so every classifier
            // and transform sees the same resample, keeping cells paired.
            Prng resample_rng(
                derive_seed(config.master_seed, source.name, "", "resample", 0, cell.run));
            SplitDataset working = resample_split(source.data, cell.run, resample_rng);

            if (cell.transform == "permute") {
                // One shared index per (dataset, run), drawn independently
                // of the classifier so permuted cells stay comparable.
                const auto perm_seed =
                    derive_seed(config.master_seed, source.name, "", "permute", 0, cell.run);
                working = apply_shared_permutation(
                    working, make_permutation(working.series_length, perm_seed));
            } else if (cell.transform == "augment") {
                AugmentSpec spec;
                spec.l_fraction = cell.l_fraction;
                spec.sigma = config.transforms.sigma;
                spec.seed =
                    derive_seed(config.master_seed, source.name, "", "augment", l_milli, cell.run);
                working = augment_dataset(working, spec).dataset;
            }

            ClassifierSpec spec = config.classifiers[cell.classifier_index];
            spec.seed = cell_seed;
            const auto timed = train_predict_timed(spec, working.train, working.test);

            std::vector<int> truth;
            truth.reserve(working.test.size());
            for (const auto& inst : working.test) {
                truth.push_back(inst.label);
            }
            outcome.record.accuracy = accuracy(timed.labels, truth);
            if (config.record_timings) {
                outcome.record.train_ms = timed.train_ms;
                outcome.record.test_ms = timed.test_ms;
            }
            outcome.ok = true;
        } catch (const std::exception& e) {
            outcome.skipped = SkippedCell{source.name,      classifier_id, cell.transform,
                                          cell.l_fraction,  cell.run,      e.what()};
        }
    };

    std::size_t workers = config.workers > 0 ? static_cast<std::size_t>(config.workers)
                                             : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, cells.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            execute_cell(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t index = next.fetch_add(1);
                    if (index >= cells.size()) {
                        return;
                    }
                    execute_cell(index);
                }
            });
        }
        for (auto& thread : pool) {
            thread.join();
        }
    }

    ExperimentResult result;
    for (auto& outcome : outcomes) {
        if (outcome.ok) {
            result.records.push_back(std::move(outcome.record));
        } else {
            result.skipped.push_back(std::move(outcome.skipped));
        }
    }

    std::filesystem::create_directories(config.out_dir);
    result.results_csv = config.out_dir / "results.csv";
    write_results_csv(result.records, result.results_csv);

    if (!result.skipped.empty()) {
        std::ofstream out(config.out_dir / "skipped.csv", std::ios::binary);
        out << "dataset,classifier,transform,l_fraction,run,reason\n";
        for (const auto& s : result.skipped) {
            std::string reason = s.reason;
            for (auto& ch : reason) {
                if (ch == ',' || ch == '\n') {
                    ch = ';';
                }
            }
            out << s.dataset << ',' << s.classifier << ',' << s.transform << ','
                << internal::format_double(s.l_fraction) << ',' << s.run << ',' << reason << '\n';
        }
    }

    json manifest;
    manifest["tool"] = "tempobench";
    manifest["version"] = "0.1.0";
    json config_json;
    config_json["datasets"] = json::array();
    for (const auto& d : loaded) {
        config_json["datasets"].push_back(d.name);
    }
    config_json["classifiers"] = json::array();
    for (const auto& c : config.classifiers) {
        config_json["classifiers"].push_back(to_string(c.kind));
    }
    config_json["permute"] = config.transforms.permute;
    config_json["l_fractions"] = config.transforms.l_fractions;
    config_json["sigma"] = config.transforms.sigma;
    config_json["runs"] = config.runs;
    config_json["master_seed"] = config.master_seed;
    manifest["config_hash"] = fnv1a64(config_json.dump());
    manifest["cells"] = cells.size();
    manifest["completed"] = result.records.size();
    manifest["skipped"] = result.skipped.size();
    std::ofstream manifest_out(config.out_dir / "manifest.json", std::ios::binary);
    manifest_out << manifest.dump(2) << '\n';

    return result;
}

} // namespace tempobench
