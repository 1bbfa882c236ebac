#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shellgap/catalog.hpp"
#include "shellgap/grid_optimizer.hpp"
#include "shellgap/metrics_sort.hpp"

namespace shellgap {

enum class OutputFormat { Csv, Markdown, Json };

OutputFormat parse_output_format(std::string_view text);

struct ExperimentConfig {
  std::vector<std::string> sequences;
  std::vector<std::size_t> sizes;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::vector<CostKind> costs{CostKind::Comparisons, CostKind::Exchanges};
  /// Feed identical permutations to every sequence at a given size.
  bool paired = false;
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

/// Reads the JSON form: {"sequences": [...], "sizes": [...], "trials": 1000,
/// "seed": 1, "costs": ["comparisons", ...], "paired": false, "format": "csv"}.
ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

struct CostSummary {
  double mean = 0.0;
  double sd = 0.0;
};

/// One (sequence, N) cell. Time is in milliseconds.
struct ReportRow {
  std::string sequence;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::map<CostKind, CostSummary> costs;
};

/// One trial's metrics for a catalog sorter, including the structure-aware
/// final passes for the chain variants.
SortMetrics run_sorter(const Sorter& sorter, std::span<Key> array);
/// Counter-free twin of run_sorter; returns elapsed wall time.
std::chrono::nanoseconds time_sorter(const Sorter& sorter, std::span<Key> array);

/// For every (sequence, N): `trials` permutations, aggregated per cost.
/// Counter costs are computed in parallel with per-trial seeds; the Time
/// cost is measured afterwards, strictly serially, with the sequences of
/// one size interleaved trial by trial. Throws
/// Error(UnknownSequence) for unresolvable names.
std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg);

/// Header `sequence,n,cost,mean,sd,trials,seed`, one line per cost.
std::string format_csv(const std::vector<ReportRow>& rows, std::uint64_t seed);
std::string format_markdown(const std::vector<ReportRow>& rows);
std::string format_json(const std::vector<ReportRow>& rows, std::uint64_t seed);
std::string format_rows(const std::vector<ReportRow>& rows, OutputFormat format,
                        std::uint64_t seed);

/// Mean difference against `baseline` at each N (positive: baseline uses
/// fewer). Header `sequence,n,cost,baseline,difference`. Throws
/// Error(InvalidConfig) when the baseline has no row at some N.
std::string emit_plot_data(const std::vector<ReportRow>& rows, const std::string& baseline);

}  // namespace shellgap
