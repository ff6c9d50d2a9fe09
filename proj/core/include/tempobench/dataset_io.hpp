#pragma once

#include "tempobench/series.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tempobench {

/// Loads `<dir>/<name>_TRAIN.tsv` and `<dir>/<name>_TEST.tsv`.
///
/// File format: one instance per line, tab-separated; the first field is the
/// class label (integer or arbitrary string), the remaining fields are real
/// values. Labels are interned to 0..C-1: numerically sorted when every
/// distinct train label parses as an integer, lexicographically otherwise.
/// A test label that never occurs in train is an error.
SplitDataset load_dataset(const std::filesystem::path& dir, const std::string& name);

/// Writes the two split files into `dir` (created if missing), using the
/// dataset's label_names for the label column and shortest round-trip
/// formatting for values.
void save_dataset(const SplitDataset& dataset, const std::filesystem::path& dir);

/// Names in `dir` that have both a `_TRAIN.tsv` and a `_TEST.tsv`, sorted.
std::vector<std::string> list_datasets(const std::filesystem::path& dir);

} // namespace tempobench
