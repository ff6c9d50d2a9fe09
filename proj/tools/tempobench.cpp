// tempobench: generate, transform and benchmark time-series classification
// datasets, then analyze the results (filter rule, Wilcoxon tests, mean
// ranks, significance cliques).

#include "tempobench/dataset_io.hpp"
#include "tempobench/harness.hpp"
#include "tempobench/report.hpp"
#include "tempobench/synth.hpp"
#include "tempobench/transforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using nlohmann::json;

int run_synth(const tempobench::SynthSpec& spec, const std::string& out_dir) {
    const auto dataset = tempobench::generate(spec);
    tempobench::save_dataset(dataset, out_dir);
    std::cout << "wrote " << dataset.name << " (" << dataset.train.size() << " train / "
              << dataset.test.size() << " test, length " << dataset.series_length << ") to "
              << out_dir << "\n";
    return 0;
}

int run_permute(const std::string& in_dir, const std::string& out_dir, std::uint64_t seed) {
    const auto names = tempobench::list_datasets(in_dir);
    if (names.empty()) {
        std::cerr << "no dataset split pairs found in '" << in_dir << "'\n";
        return 1;
    }
    for (const auto& name : names) {
        const auto dataset = tempobench::load_dataset(in_dir, name);
        const auto perm_seed = tempobench::derive_seed(seed, name, "", "permute", 0, 0);
        const auto perm = tempobench::make_permutation(dataset.series_length, perm_seed);
        tempobench::save_dataset(tempobench::apply_shared_permutation(dataset, perm), out_dir);

        json meta;
        meta["dataset"] = name;
        meta["transform"] = "permute";
        meta["master_seed"] = seed;
        meta["derived_seed"] = perm_seed;
        meta["permutation"] = perm;
        std::ofstream out(std::filesystem::path(out_dir) / (name + "_meta.json"), std::ios::binary);
        out << meta.dump(2) << '\n';
        std::cout << "permuted " << name << "\n";
    }
    return 0;
}

int run_augment(const std::string& in_dir, const std::string& out_dir, double l_fraction,
                double sigma, std::uint64_t seed) {
    const auto names = tempobench::list_datasets(in_dir);
    if (names.empty()) {
        std::cerr << "no dataset split pairs found in '" << in_dir << "'\n";
        return 1;
    }
    for (const auto& name : names) {
        // Padding is defined on z-normalized instances (the 0.01-sigma walk
        // is scaled relative to unit-variance data).
        const auto dataset =
            tempobench::z_normalize_dataset(tempobench::load_dataset(in_dir, name));
        tempobench::AugmentSpec spec;
        spec.l_fraction = l_fraction;
        spec.sigma = sigma;
        const int l_milli = static_cast<int>(std::lround(l_fraction * 1000.0));
        spec.seed = tempobench::derive_seed(seed, name, "", "augment", l_milli, 0);
        const auto augmented = tempobench::augment_dataset(dataset, spec);
        tempobench::save_dataset(augmented.dataset, out_dir);

        json meta;
        meta["dataset"] = name;
        meta["transform"] = "augment";
        meta["l_fraction"] = l_fraction;
        meta["sigma"] = sigma;
        meta["master_seed"] = seed;
        meta["derived_seed"] = spec.seed;
        auto records_json = [](const std::vector<tempobench::PaddingRecord>& records) {
            json arr = json::array();
            for (const auto& r : records) {
                arr.push_back({{"head", r.head}, {"tail", r.tail}});
            }
            return arr;
        };
        meta["train_padding"] = records_json(augmented.train_records);
        meta["test_padding"] = records_json(augmented.test_records);
        std::ofstream out(std::filesystem::path(out_dir) / (name + "_meta.json"), std::ios::binary);
        out << meta.dump(2) << '\n';
        std::cout << "augmented " << name << " (l=" << augmented.train_records.front().head +
                                                          augmented.train_records.front().tail
                  << ")\n";
    }
    return 0;
}

int run_experiment_cmd(const std::string& config_path) {
    tempobench::ExperimentConfig config;
    try {
        config = tempobench::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    const auto result = tempobench::run_experiment(config);
    std::cout << "completed " << result.records.size() << " cells, skipped "
              << result.skipped.size() << "; results in " << result.results_csv.string() << "\n";
    for (const auto& s : result.skipped) {
        std::cerr << "skipped " << s.dataset << "/" << s.classifier << "/" << s.transform << " run "
                  << s.run << ": " << s.reason << "\n";
    }
    if (result.records.empty()) {
        std::cerr << "all cells failed\n";
        return 2;
    }
    return 0;
}

int run_report(const std::string& results_path, const std::string& out_dir, double alpha,
               double k_std, bool holm, bool tables_only) {
    const auto records = tempobench::load_results_csv(results_path);
    tempobench::ReportOptions options;
    options.alpha = alpha;
    options.k_std = k_std;
    options.holm = holm;
    options.tables_only = tables_only;
    tempobench::emit_report(records, out_dir, options);
    std::cout << "report written to " << out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-series benchmark toolkit: misalignment augmentation, "
                 "shared-permutation tests and classifier comparison"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset split");
    std::string synth_kind = "temporal";
    tempobench::SynthSpec synth_spec;
    std::string synth_out = ".";
    synth->add_option("--kind", synth_kind, "positional | temporal | aligned")->capture_default_str();
    synth->add_option("--n", synth_spec.length, "series length")->capture_default_str();
    synth->add_option("--train", synth_spec.train_size, "train instances")->capture_default_str();
    synth->add_option("--test", synth_spec.test_size, "test instances")->capture_default_str();
    synth->add_option("--classes", synth_spec.classes, "class count")->capture_default_str();
    synth->add_option("--width", synth_spec.pattern_width, "pattern width")->capture_default_str();
    synth->add_option("--noise", synth_spec.noise_std, "noise std")->capture_default_str();
    synth->add_option("--amplitude", synth_spec.amplitude, "pattern amplitude")->capture_default_str();
    synth->add_option("--seed", synth_spec.seed, "seed")->capture_default_str();
    synth->add_option("--name", synth_spec.name, "dataset name (default synth_<kind>)");
    synth->add_option("--out", synth_out, "output directory")->required();

    // permute
    auto* permute = app.add_subcommand("permute", "apply one shared random permutation per dataset");
    std::string permute_in, permute_out;
    std::uint64_t permute_seed = 0;
    permute->add_option("--in", permute_in, "input directory of *_TRAIN/_TEST.tsv pairs")->required();
    permute->add_option("--out", permute_out, "output directory")->required();
    permute->add_option("--seed", permute_seed, "master seed")->capture_default_str();

    // augment
    auto* augment = app.add_subcommand(
        "augment", "pad both ends of every z-normalized instance with Gaussian random walks");
    std::string augment_in, augment_out;
    double augment_l = 0.2;
    double augment_sigma = 0.01;
    std::uint64_t augment_seed = 0;
    augment->add_option("--in", augment_in, "input directory")->required();
    augment->add_option("--out", augment_out, "output directory")->required();
    augment->add_option("--l-fraction", augment_l, "total padding as a fraction of length")
        ->capture_default_str();
    augment->add_option("--sigma", augment_sigma, "random-walk step std")->capture_default_str();
    augment->add_option("--seed", augment_seed, "master seed")->capture_default_str();

    // run
    auto* run = app.add_subcommand("run", "run the full experiment grid from a JSON config");
    std::string run_config;
    run->add_option("--config", run_config, "experiment config JSON")->required();

    // stats / report
    auto* stats = app.add_subcommand("stats", "emit analysis tables from a results CSV");
    auto* report = app.add_subcommand("report", "emit tables, SVG figures and a summary");
    std::string results_path, report_out = "report";
    double alpha = 0.05;
    double k_std = 1.0;
    bool holm = false;
    for (auto* cmd : {stats, report}) {
        cmd->add_option("--results", results_path, "results CSV from 'run'")->required();
        cmd->add_option("--alpha", alpha, "significance threshold")->capture_default_str();
        cmd->add_option("--k-std", k_std, "filter-rule std multiplier")->capture_default_str();
        cmd->add_flag("--holm", holm, "apply Holm correction to pairwise tests");
        cmd->add_option("--out", report_out, "output directory")->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) {
            synth_spec.kind = tempobench::synth_kind_from_string(synth_kind);
            return run_synth(synth_spec, synth_out);
        }
        if (permute->parsed()) {
            return run_permute(permute_in, permute_out, permute_seed);
        }
        if (augment->parsed()) {
            return run_augment(augment_in, augment_out, augment_l, augment_sigma, augment_seed);
        }
        if (run->parsed()) {
            return run_experiment_cmd(run_config);
        }
        if (stats->parsed()) {
            return run_report(results_path, report_out, alpha, k_std, holm, true);
        }
        if (report->parsed()) {
            return run_report(results_path, report_out, alpha, k_std, holm, false);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
