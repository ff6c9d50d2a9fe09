#include "tempobench/dataset_io.hpp"

#include "internal/text.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace tempobench {

namespace {

struct RawInstance {
    std::string label;
    TimeSeries values;
};

std::optional<long long> as_integer(const std::string& text) {
    long long value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

std::vector<RawInstance> read_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open '" + path.string() + "'");
    }
    std::vector<RawInstance> instances;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = internal::split(line, '\t');
        if (fields.size() < 3) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                        ": expected label + at least 2 values");
        }
        RawInstance inst;
        inst.label = std::string(fields[0]);
        inst.values.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            inst.values.push_back(internal::parse_double(fields[i], path.string().c_str()));
        }
        instances.push_back(std::move(inst));
    }
    if (instances.empty()) {
        throw std::invalid_argument(path.string() + ": no instances");
    }
    return instances;
}

} // namespace

SplitDataset load_dataset(const std::filesystem::path& dir, const std::string& name) {
    const auto train_raw = read_tsv(dir / (name + "_TRAIN.tsv"));
    const auto test_raw = read_tsv(dir / (name + "_TEST.tsv"));

    // Intern labels from the train split. Numeric sort when every distinct
    // label parses as an integer, lexicographic otherwise.
    std::set<std::string> distinct;
    for (const auto& inst : train_raw) {
        distinct.insert(inst.label);
    }
    std::vector<std::string> names(distinct.begin(), distinct.end());
    const bool all_numeric = std::all_of(names.begin(), names.end(),
                                         [](const std::string& s) { return as_integer(s).has_value(); });
    if (all_numeric) {
        std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
            return *as_integer(a) < *as_integer(b);
        });
    }
    std::map<std::string, int> intern;
    for (std::size_t i = 0; i < names.size(); ++i) {
        intern[names[i]] = static_cast<int>(i);
    }

    SplitDataset dataset;
    dataset.name = name;
    dataset.series_length = train_raw.front().values.size();
    dataset.label_names = names;
    auto convert = [&](const std::vector<RawInstance>& raw, const char* split_name) {
        std::vector<LabeledInstance> out;
        out.reserve(raw.size());
        for (const auto& inst : raw) {
            const auto it = intern.find(inst.label);
            if (it == intern.end()) {
                throw std::invalid_argument("dataset '" + name + "': " + split_name + " label '" +
                                            inst.label + "' absent from train");
            }
            out.push_back(LabeledInstance{inst.values, it->second});
        }
        return out;
    };
    dataset.train = convert(train_raw, "train");
    dataset.test = convert(test_raw, "test");
    validate(dataset);
    return dataset;
}

void save_dataset(const SplitDataset& dataset, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write_split = [&](const std::vector<LabeledInstance>& split, const std::string& suffix) {
        const auto path = dir / (dataset.name + suffix);
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write '" + path.string() + "'");
        }
        for (const auto& inst : split) {
            const auto idx = static_cast<std::size_t>(inst.label);
            if (idx < dataset.label_names.size()) {
                out << dataset.label_names[idx];
            } else {
                out << inst.label;
            }
            for (const double v : inst.series) {
                out << '\t' << internal::format_double(v);
            }
            out << '\n';
        }
    };
    write_split(dataset.train, "_TRAIN.tsv");
    write_split(dataset.test, "_TEST.tsv");
}

std::vector<std::string> list_datasets(const std::filesystem::path& dir) {
    static const std::string train_suffix = "_TRAIN.tsv";
    std::vector<std::string> names;
    if (!std::filesystem::is_directory(dir)) {
        return names;
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        const std::string file = entry.path().filename().string();
        if (file.size() <= train_suffix.size() || !file.ends_with(train_suffix)) {
            continue;
        }
        const std::string name = file.substr(0, file.size() - train_suffix.size());
        if (std::filesystem::exists(dir / (name + "_TEST.tsv"))) {
            names.push_back(name);
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

} // namespace tempobench
