#include "tempobench/report.hpp"

#include "tempobench/stats.hpp"

#include "internal/svg.hpp"
#include "internal/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace tempobench {

namespace {

using internal::format_double;
using internal::SvgWriter;
using nlohmann::json;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string color_of(std::size_t index) { return kPalette[index % 8]; }

/// A transform level of the sweep: identity, permute, or augment at l.
struct Level {
    std::string transform;
    double l_fraction = 0.0;

    bool operator<(const Level& other) const {
        return std::tie(transform, l_fraction) < std::tie(other.transform, other.l_fraction);
    }
    std::string label() const {
        if (transform == "augment") {
            return "augment@" + format_double(l_fraction);
        }
        return transform;
    }
    std::string file_tag() const {
        if (transform == "augment") {
            return "augment_" + std::to_string(static_cast<int>(std::lround(l_fraction * 1000)));
        }
        return transform;
    }
};

struct ResultsView {
    std::vector<std::string> datasets;
    std::vector<std::string> classifiers;
    std::vector<Level> levels; // identity first, then permute, then augment by l
    // (dataset, classifier, level) -> accuracies ordered by run index
    std::map<std::tuple<std::string, std::string, std::string, double>, std::vector<double>> runs;

    const std::vector<double>* cell(const std::string& dataset, const std::string& classifier,
                                    const Level& level) const {
        const auto it = runs.find({dataset, classifier, level.transform, level.l_fraction});
        return it == runs.end() ? nullptr : &it->second;
    }

    std::optional<double> cell_mean(const std::string& dataset, const std::string& classifier,
                                    const Level& level) const {
        const auto* values = cell(dataset, classifier, level);
        if (values == nullptr || values->empty()) {
            return std::nullopt;
        }
        return mean(*values);
    }
};

ResultsView build_view(const std::vector<RunRecord>& records) {
    ResultsView view;
    std::set<std::string> datasets;
    std::set<std::string> classifiers;
    std::set<double> augment_levels;
    bool has_identity = false;
    bool has_permute = false;

    std::map<std::tuple<std::string, std::string, std::string, double>, std::map<int, double>> cells;
    for (const auto& r : records) {
        datasets.insert(r.dataset);
        classifiers.insert(r.classifier);
        if (r.transform == "identity") {
            has_identity = true;
        } else if (r.transform == "permute") {
            has_permute = true;
        } else if (r.transform == "augment") {
            augment_levels.insert(r.l_fraction);
        } else {
            throw std::invalid_argument("unknown transform '" + r.transform + "' in results");
        }
        cells[{r.dataset, r.classifier, r.transform, r.l_fraction}][r.run] = r.accuracy;
    }

    view.datasets.assign(datasets.begin(), datasets.end());
    view.classifiers.assign(classifiers.begin(), classifiers.end());
    if (has_identity) {
        view.levels.push_back({"identity", 0.0});
    }
    if (has_permute) {
        view.levels.push_back({"permute", 0.0});
    }
    for (const double l : augment_levels) {
        view.levels.push_back({"augment", l});
    }
    for (auto& [key, by_run] : cells) {
        auto& ordered = view.runs[key];
        ordered.reserve(by_run.size());
        for (const auto& [run, acc] : by_run) {
            ordered.push_back(acc);
        }
    }
    return view;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << content;
}

/// Per-level rank analysis over the datasets complete at that level.
struct LevelRanks {
    Level level;
    std::vector<std::string> used_datasets;
    std::vector<double> ranks;        // per classifier, aligned with view.classifiers
    CliqueReport cliques;             // empty when < 2 classifiers
    bool has_cliques = false;
};

} // namespace

void emit_report(const std::vector<RunRecord>& records, const std::filesystem::path& out_dir,
                 const ReportOptions& options) {
    if (records.empty()) {
        throw std::invalid_argument("emit_report: no records");
    }
    std::filesystem::create_directories(out_dir);
    const ResultsView view = build_view(records);
    std::vector<std::pair<std::string, std::string>> warnings;

    const Level identity{"identity", 0.0};
    const bool has_identity =
        std::any_of(view.levels.begin(), view.levels.end(),
                    [](const Level& l) { return l.transform == "identity"; });

    // ---- (a) one-sided p-values: original vs transformed, per classifier ----
    struct PvalueRow {
        std::string classifier;
        Level level;
        std::size_t n_datasets;
        WilcoxonResult result;
    };
    std::vector<PvalueRow> pvalue_rows;
    for (const auto& classifier : view.classifiers) {
        for (const auto& level : view.levels) {
            if (level.transform == "identity") {
                continue;
            }
            if (!has_identity) {
                warnings.emplace_back("pvalue " + classifier + " " + level.label(),
                                      "no identity cells in results");
                break;
            }
            std::vector<double> original;
            std::vector<double> transformed;
            for (const auto& dataset : view.datasets) {
                const auto a = view.cell_mean(dataset, classifier, identity);
                const auto b = view.cell_mean(dataset, classifier, level);
                if (a && b) {
                    original.push_back(*a);
                    transformed.push_back(*b);
                }
            }
            if (original.empty()) {
                warnings.emplace_back("pvalue " + classifier + " " + level.label(),
                                      "no dataset has both identity and transformed cells");
                continue;
            }
            pvalue_rows.push_back({classifier, level, original.size(),
                                   wilcoxon_signed_rank(original, transformed,
                                                        WilcoxonAlternative::a_greater)});
        }
    }
    {
        std::string csv = "classifier,transform,l_fraction,n_datasets,w_plus,p_value,method\n";
        for (const auto& row : pvalue_rows) {
            csv += row.classifier + ',' + row.level.transform + ',' +
                   format_double(row.level.l_fraction) + ',' + std::to_string(row.n_datasets) +
                   ',' + format_double(row.result.statistic) + ',' +
                   format_double(row.result.p_value) + ',' +
                   (row.result.method == WilcoxonMethod::exact ? "exact" : "normal_approx") + '\n';
        }
        write_file(out_dir / "pvalues.csv", csv);
    }

    // ---- (b) mean ranks and cliques per transform level ----
    std::vector<LevelRanks> level_ranks;
    for (const auto& level : view.levels) {
        LevelRanks entry;
        entry.level = level;
        std::vector<std::vector<double>> matrix(view.classifiers.size());
        for (const auto& dataset : view.datasets) {
            std::vector<double> column;
            column.reserve(view.classifiers.size());
            bool complete = true;
            for (const auto& classifier : view.classifiers) {
                const auto m = view.cell_mean(dataset, classifier, level);
                if (!m) {
                    complete = false;
                    break;
                }
                column.push_back(*m);
            }
            if (!complete) {
                warnings.emplace_back("ranks " + level.label() + " " + dataset,
                                      "dataset missing cells at this level");
                continue;
            }
            for (std::size_t c = 0; c < view.classifiers.size(); ++c) {
                matrix[c].push_back(column[c]);
            }
            entry.used_datasets.push_back(dataset);
        }
        if (entry.used_datasets.empty()) {
            warnings.emplace_back("ranks " + level.label(), "no complete dataset at this level");
            continue;
        }
        if (view.classifiers.size() == 1) {
            entry.ranks.assign(1, 1.0); // a single classifier is trivially rank 1
        } else {
            entry.cliques = significance_cliques(matrix, options.alpha, options.holm);
            entry.ranks = entry.cliques.ranks;
            entry.has_cliques = true;
        }
        level_ranks.push_back(std::move(entry));
    }
    {
        std::string csv = "transform,l_fraction,classifier,mean_rank,n_datasets\n";
        for (const auto& entry : level_ranks) {
            for (std::size_t c = 0; c < view.classifiers.size(); ++c) {
                csv += entry.level.transform + ',' + format_double(entry.level.l_fraction) + ',' +
                       view.classifiers[c] + ',' + format_double(entry.ranks[c]) + ',' +
                       std::to_string(entry.used_datasets.size()) + '\n';
            }
        }
        write_file(out_dir / "mean_ranks.csv", csv);
    }
    {
        json cliques_json = json::array();
        for (const auto& entry : level_ranks) {
            json node;
            node["transform"] = entry.level.transform;
            node["l_fraction"] = entry.level.l_fraction;
            node["datasets"] = entry.used_datasets.size();
            json ranks = json::object();
            for (std::size_t c = 0; c < view.classifiers.size(); ++c) {
                ranks[view.classifiers[c]] = entry.ranks[c];
            }
            node["mean_ranks"] = ranks;
            json groups = json::array();
            if (entry.has_cliques) {
                for (const auto& clique : entry.cliques.cliques) {
                    json members = json::array();
                    for (const std::size_t idx : clique) {
                        members.push_back(view.classifiers[idx]);
                    }
                    groups.push_back(members);
                }
                node["p_values"] = entry.cliques.p_values;
            } else {
                groups.push_back(json::array({view.classifiers.front()}));
            }
            node["cliques"] = groups;
            cliques_json.push_back(node);
        }
        write_file(out_dir / "cliques.json", cliques_json.dump(2) + "\n");
    }

    // ---- (d) filter verdicts: identity vs permute run vectors ----
    {
        std::string csv =
            "dataset,classifier,k_std,mean_original,std_original,mean_permuted,std_permuted,flagged\n";
        const Level permute{"permute", 0.0};
        bool any_permute =
            std::any_of(view.levels.begin(), view.levels.end(),
                        [](const Level& l) { return l.transform == "permute"; });
        if (!any_permute) {
            warnings.emplace_back("filter_verdicts", "no permute cells in results");
        } else {
            for (const auto& dataset : view.datasets) {
                for (const auto& classifier : view.classifiers) {
                    const auto* ori = view.cell(dataset, classifier, identity);
                    const auto* per = view.cell(dataset, classifier, permute);
                    if (ori == nullptr || per == nullptr) {
                        continue;
                    }
                    if (ori->size() < 2 || per->size() < 2) {
                        warnings.emplace_back("filter " + dataset + " " + classifier,
                                              "needs >= 2 runs per side");
                        continue;
                    }
                    const bool flagged = temporal_filter_rule(*ori, *per, options.k_std);
                    csv += dataset + ',' + classifier + ',' + format_double(options.k_std) + ',' +
                           format_double(mean(*ori)) + ',' + format_double(sample_std(*ori)) + ',' +
                           format_double(mean(*per)) + ',' + format_double(sample_std(*per)) + ',' +
                           (flagged ? "true" : "false") + '\n';
                }
            }
        }
        write_file(out_dir / "filter_verdicts.csv", csv);
    }

    if (!warnings.empty()) {
        std::string csv = "comparison,reason\n";
        for (const auto& [what, why] : warnings) {
            csv += what + ',' + why + '\n';
        }
        write_file(out_dir / "warnings.csv", csv);
    }

    if (options.tables_only) {
        return;
    }

    // ---- figures ----
    const double width = 640;
    const double height = 440;
    const double ml = 70, mr = 20, mt = 40, mb = 50; // plot margins

    std::vector<Level> augment_levels;
    for (const auto& level : view.levels) {
        if (level.transform == "augment") {
            augment_levels.push_back(level);
        }
    }

    // p-value vs l line plot (log10 y), one line per classifier.
    if (!augment_levels.empty()) {
        SvgWriter svg(width, height);
        svg.text(width / 2, 20, "Wilcoxon p-value vs padding fraction", 14, "middle");
        double min_log = std::log10(options.alpha);
        for (const auto& row : pvalue_rows) {
            if (row.level.transform == "augment") {
                min_log = std::min(min_log, std::log10(row.result.p_value));
            }
        }
        min_log = std::max(min_log - 0.5, -16.0);
        const double max_log = 0.0;
        const double x_max = augment_levels.back().l_fraction;
        auto x_of = [&](double l) { return ml + (width - ml - mr) * (l / x_max); };
        auto y_of = [&](double logp) {
            return mt + (height - mt - mb) * ((max_log - logp) / (max_log - min_log));
        };
        svg.line(ml, mt, ml, height - mb, "black");
        svg.line(ml, height - mb, width - mr, height - mb, "black");
        svg.text(width / 2, height - 12, "padding fraction l", 12, "middle");
        svg.text(14, mt - 8, "log10 p");
        for (const auto& level : augment_levels) {
            svg.text(x_of(level.l_fraction), height - mb + 16, format_double(level.l_fraction), 10,
                     "middle");
        }
        for (double tick = 0.0; tick >= min_log; tick -= 2.0) {
            svg.text(ml - 6, y_of(tick) + 4, format_double(tick), 10, "end");
        }
        svg.line(ml, y_of(std::log10(options.alpha)), width - mr, y_of(std::log10(options.alpha)),
                 "gray", 1.0, "4,3");
        svg.text(width - mr - 4, y_of(std::log10(options.alpha)) - 4,
                 "alpha=" + format_double(options.alpha), 10, "end", "gray");
        for (std::size_t c = 0; c < view.classifiers.size(); ++c) {
            std::vector<std::pair<double, double>> points;
            for (const auto& row : pvalue_rows) {
                if (row.classifier == view.classifiers[c] && row.level.transform == "augment") {
                    points.emplace_back(x_of(row.level.l_fraction),
                                        y_of(std::max(std::log10(row.result.p_value), min_log)));
                }
            }
            svg.polyline(points, color_of(c));
            for (const auto& [x, y] : points) {
                svg.circle(x, y, 2.5, color_of(c));
            }
            svg.text(width - mr - 4, mt + 14 * static_cast<double>(c + 1), view.classifiers[c], 10,
                     "end", color_of(c));
        }
        write_file(out_dir / "pvalues.svg", svg.finish());
    }

    // Mean rank vs l, rank 1 at the top, cliques as vertical bars.
    {
        std::vector<const LevelRanks*> plotted;
        for (const auto& entry : level_ranks) {
            if (entry.level.transform != "permute") {
                plotted.push_back(&entry);
            }
        }
        if (!plotted.empty()) {
            SvgWriter svg(width, height);
            svg.text(width / 2, 20, "Mean rank vs padding fraction (bars: no significant difference)",
                     14, "middle");
            const double x_max =
                std::max(0.1, plotted.back()->level.l_fraction);
            const double k = static_cast<double>(view.classifiers.size());
            auto x_of = [&](double l) { return ml + (width - ml - mr) * (l / x_max); };
            auto y_of = [&](double rank) {
                if (k <= 1.0) {
                    return mt + (height - mt - mb) / 2.0;
                }
                return mt + (height - mt - mb) * ((rank - 1.0) / (k - 1.0));
            };
            svg.line(ml, mt, ml, height - mb, "black");
            svg.line(ml, height - mb, width - mr, height - mb, "black");
            svg.text(width / 2, height - 12, "padding fraction l (identity at 0)", 12, "middle");
            svg.text(14, mt - 8, "mean rank");
            for (const auto* entry : plotted) {
                svg.text(x_of(entry->level.l_fraction), height - mb + 16,
                         format_double(entry->level.l_fraction), 10, "middle");
            }
            for (double rank = 1.0; rank <= k; rank += 1.0) {
                svg.text(ml - 6, y_of(rank) + 4, format_double(rank), 10, "end");
            }
            for (std::size_t c = 0; c < view.classifiers.size(); ++c) {
                std::vector<std::pair<double, double>> points;
                for (const auto* entry : plotted) {
                    points.emplace_back(x_of(entry->level.l_fraction), y_of(entry->ranks[c]));
                }
                svg.polyline(points, color_of(c));
                for (const auto& [x, y] : points) {
                    svg.circle(x, y, 2.5, color_of(c));
                }
                svg.text(width - mr - 4, mt + 14 * static_cast<double>(c + 1), view.classifiers[c],
                         10, "end", color_of(c));
            }
            for (const auto* entry : plotted) {
                if (!entry->has_cliques) {
                    continue;
                }
                double offset = 3.0;
                for (const auto& clique : entry->cliques.cliques) {
                    if (clique.size() < 2) {
                        continue;
                    }
                    const double x = x_of(entry->level.l_fraction) + offset;
                    svg.line(x, y_of(entry->ranks[clique.front()]),
                             x, y_of(entry->ranks[clique.back()]), "black", 3.0);
                    offset += 5.0;
                }
            }
            write_file(out_dir / "mean_ranks.svg", svg.finish());
        }
    }

    // Pairwise scatter per classifier and transform level.
    if (has_identity) {
        for (const auto& classifier : view.classifiers) {
            for (const auto& level : view.levels) {
                if (level.transform == "identity") {
                    continue;
                }
                std::vector<std::pair<double, double>> points;
                for (const auto& dataset : view.datasets) {
                    const auto a = view.cell_mean(dataset, classifier, identity);
                    const auto b = view.cell_mean(dataset, classifier, level);
                    if (a && b) {
                        points.emplace_back(*a, *b);
                    }
                }
                if (points.empty()) {
                    continue;
                }
                const double side = 420;
                const double m = 60;
                SvgWriter svg(side, side);
                svg.text(side / 2, 20, classifier + ": identity vs " + level.label(), 13, "middle");
                auto x_of = [&](double v) { return m + (side - 2 * m) * v; };
                auto y_of = [&](double v) { return side - m - (side - 2 * m) * v; };
                svg.line(m, side - m, side - m, side - m, "black");
                svg.line(m, m, m, side - m, "black");
                svg.line(x_of(0), y_of(0), x_of(1), y_of(1), "gray", 1.0, "4,3");
                for (const double tick : {0.0, 0.5, 1.0}) {
                    svg.text(x_of(tick), side - m + 16, format_double(tick), 10, "middle");
                    svg.text(m - 6, y_of(tick) + 4, format_double(tick), 10, "end");
                }
                svg.text(side / 2, side - 12, "accuracy on identity", 11, "middle");
                svg.text(14, m - 8, "accuracy transformed", 11);
                for (const auto& [a, b] : points) {
                    svg.circle(x_of(a), y_of(b), 3.0, color_of(0));
                }
                write_file(out_dir / ("scatter_" + classifier + "_" + level.file_tag() + ".svg"),
                           svg.finish());
            }
        }
    }

    // Markdown summary.
    {
        std::string md = "# tempobench report\n\n";
        md += "- datasets: " + std::to_string(view.datasets.size()) + "\n";
        md += "- classifiers: " + std::to_string(view.classifiers.size()) + "\n";
        md += "- transform levels: ";
        for (std::size_t i = 0; i < view.levels.size(); ++i) {
            md += (i ? ", " : "") + view.levels[i].label();
        }
        md += "\n\n## Mean accuracy by transform level\n\n|classifier|";
        for (const auto& level : view.levels) {
            md += level.label() + "|";
        }
        md += "\n|---|";
        for (std::size_t i = 0; i < view.levels.size(); ++i) {
            md += "---|";
        }
        md += "\n";
        for (const auto& classifier : view.classifiers) {
            md += "|" + classifier + "|";
            for (const auto& level : view.levels) {
                double sum = 0.0;
                std::size_t count = 0;
                for (const auto& dataset : view.datasets) {
                    if (const auto m = view.cell_mean(dataset, classifier, level)) {
                        sum += *m;
                        ++count;
                    }
                }
                md += count > 0 ? format_double(sum / static_cast<double>(count)) : "-";
                md += "|";
            }
            md += "\n";
        }
        md += "\n## One-sided Wilcoxon (original > transformed)\n\n";
        md += "|classifier|level|n|W+|p|\n|---|---|---|---|---|\n";
        for (const auto& row : pvalue_rows) {
            md += "|" + row.classifier + "|" + row.level.label() + "|" +
                  std::to_string(row.n_datasets) + "|" + format_double(row.result.statistic) + "|" +
                  format_double(row.result.p_value) + "|\n";
        }
        md += "\n## Cliques per level\n\n";
        for (const auto& entry : level_ranks) {
            md += "- " + entry.level.label() + ": ";
            if (entry.has_cliques) {
                for (std::size_t g = 0; g < entry.cliques.cliques.size(); ++g) {
                    md += g ? " / {" : "{";
                    const auto& clique = entry.cliques.cliques[g];
                    for (std::size_t i = 0; i < clique.size(); ++i) {
                        md += (i ? ", " : "") + view.classifiers[clique[i]];
                    }
                    md += "}";
                }
            } else {
                md += "{" + view.classifiers.front() + "}";
            }
            md += "\n";
        }
        if (!warnings.empty()) {
            md += "\n## Warnings\n\n";
            for (const auto& [what, why] : warnings) {
                md += "- " + what + ": " + why + "\n";
            }
        }
        md += "\nFigures: pvalues.svg, mean_ranks.svg, scatter_*.svg\n";
        write_file(out_dir / "summary.md", md);
    }
}

} // namespace tempobench
