#pragma once

#include "tempobench/harness.hpp"

#include <filesystem>
#include <vector>

namespace tempobench {

struct ReportOptions {
    double alpha = 0.05;
    double k_std = 1.0;
    bool holm = false;
    /// Emit only the CSV/JSON tables (the `stats` subcommand); the full
    /// report adds SVG figures and a markdown summary.
    bool tables_only = false;
};

/// Renders the analysis of a results file into `out_dir`:
///   pvalues.csv          one-sided Wilcoxon p of original vs transformed
///   mean_ranks.csv       per transform level mean ranks over datasets
///   cliques.json         no-significance cliques per transform level
///   filter_verdicts.csv  the permutation filter rule per (dataset, classifier)
///   warnings.csv         comparisons skipped for missing cells (when any)
/// and, unless tables_only:
///   pvalues.svg, mean_ranks.svg, scatter_*.svg, summary.md
void emit_report(const std::vector<RunRecord>& records, const std::filesystem::path& out_dir,
                 const ReportOptions& options);

} // namespace tempobench
