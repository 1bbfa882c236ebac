#include "shellgap/experiment.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "shellgap/chain_pass.hpp"
#include "shellgap/error.hpp"
#include "shellgap/parallel.hpp"
#include "shellgap/random.hpp"
#include "shellgap/stats.hpp"

namespace shellgap {
namespace {

using nlohmann::json;

template <class Tally>
void presort_passes(const Sorter& sorter, std::span<Key> array, Tally& tally) {
  const auto gaps = sorter.gaps.gaps();
  for (auto it = gaps.rbegin(); it != gaps.rend(); ++it) {
    if (*it > 1 && *it < array.size()) detail::gapped_insertion(array, *it, tally);
  }
}

void final_pass(const Sorter& sorter, std::span<Key> array, SortMetrics& metrics) {
  switch (sorter.final_pass) {
    case FinalPass::Insertion: {
      detail::CountingTally tally{&metrics};
      detail::gapped_insertion(array, 1, tally);
      break;
    }
    case FinalPass::Chain25: final_pass_25(array, metrics); break;
    case FinalPass::Chain34: final_pass_34(array, metrics); break;
  }
}

double metric_value(const SortMetrics& m, CostKind cost) {
  switch (cost) {
    case CostKind::Comparisons: return static_cast<double>(m.comparisons);
    case CostKind::Exchanges: return static_cast<double>(m.exchanges);
    case CostKind::ExchangeOps: return static_cast<double>(m.exchange_ops);
    case CostKind::Time: break;
  }
  return 0.0;
}

std::uint64_t experiment_stream(const ExperimentConfig& cfg, const std::string& name) {
  return cfg.paired ? stream_id("paired") : stream_id(name);
}

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "markdown" || text == "md") return OutputFormat::Markdown;
  if (text == "json") return OutputFormat::Json;
  throw Error(ErrorCode::InvalidConfig, "unknown output format '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const {
  if (sequences.empty()) throw Error(ErrorCode::InvalidConfig, "no sequences given");
  if (sizes.empty()) throw Error(ErrorCode::InvalidConfig, "no sizes given");
  for (std::size_t n : sizes) {
    if (n == 0) throw Error(ErrorCode::InvalidConfig, "sizes must be positive");
  }
  if (trials == 0) throw Error(ErrorCode::InvalidConfig, "trials must be positive");
  if (costs.empty()) throw Error(ErrorCode::InvalidConfig, "no costs given");
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "config must be a JSON object");
  ExperimentConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "sequences") {
        cfg.sequences = value.get<std::vector<std::string>>();
      } else if (key == "sizes") {
        cfg.sizes = value.get<std::vector<std::size_t>>();
      } else if (key == "trials") {
        cfg.trials = value.get<std::size_t>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "costs") {
        cfg.costs.clear();
        for (const auto& c : value) cfg.costs.push_back(parse_cost_kind(c.get<std::string>()));
      } else if (key == "paired") {
        cfg.paired = value.get<bool>();
      } else if (key == "format") {
        cfg.format = parse_output_format(value.get<std::string>());
      } else if (key == "threads") {
        cfg.threads = value.get<unsigned>();
      } else {
        throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment_config(text.str());
}

SortMetrics run_sorter(const Sorter& sorter, std::span<Key> array) {
  SortMetrics metrics;
  detail::CountingTally tally{&metrics};
  presort_passes(sorter, array, tally);
  final_pass(sorter, array, metrics);
  return metrics;
}

std::chrono::nanoseconds time_sorter(const Sorter& sorter, std::span<Key> array) {
  const auto start = std::chrono::steady_clock::now();
  detail::NullTally tally;
  presort_passes(sorter, array, tally);
  if (sorter.final_pass == FinalPass::Insertion) {
    detail::gapped_insertion(array, 1, tally);
  } else {
    // The chain passes keep their own counters.
    SortMetrics ignored;
    final_pass(sorter, array, ignored);
  }
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                              start);
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const unsigned threads = cfg.threads == 0 ? default_threads() : cfg.threads;
  bool want_time = false;
  bool want_counts = false;
  for (CostKind c : cfg.costs) (c == CostKind::Time ? want_time : want_counts) = true;

  std::vector<ReportRow> rows;
  for (std::size_t n : cfg.sizes) {
    std::vector<Sorter> sorters;
    std::vector<std::uint64_t> streams;
    for (const std::string& name : cfg.sequences) {
      sorters.push_back(resolve_sorter(name, n));
      streams.push_back(experiment_stream(cfg, name));
    }
    const std::size_t first_row = rows.size();
    for (std::size_t k = 0; k < sorters.size(); ++k) {
      ReportRow row{cfg.sequences[k], n, cfg.trials, {}};
      if (want_counts) {
        std::vector<SortMetrics> slots(cfg.trials);
        parallel_for(cfg.trials, threads, [&](std::size_t t) {
          thread_local std::vector<Key> buffer;
          Rng rng(derive_seed(cfg.seed, streams[k], t));
          fisher_yates_into(buffer, n, rng);
          slots[t] = run_sorter(sorters[k], buffer);
        });
        for (CostKind c : cfg.costs) {
          if (c == CostKind::Time) continue;
          RunningStats s;
          for (const SortMetrics& m : slots) s.add(metric_value(m, c));
          row.costs[c] = {s.mean(), s.sd()};
        }
      }
      rows.push_back(std::move(row));
    }
    if (!want_time) continue;

    // Serial and interleaved: trial t times every sequence before trial t+1,
    // starting at a rotating offset, so clock drift and cache warm-up hit all
    // sequences alike. One untimed warm-up sort per sequence goes first.
    const std::size_t count = sorters.size();
    std::vector<RunningStats> timing(count);
    std::vector<Key> buffer;
    for (std::size_t k = 0; k < count; ++k) {
      Rng rng(derive_seed(cfg.seed, streams[k] ^ stream_id("warm-up"), 0));
      fisher_yates_into(buffer, n, rng);
      time_sorter(sorters[k], buffer);
    }
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      for (std::size_t step = 0; step < count; ++step) {
        const std::size_t k = (t + step) % count;
        Rng rng(derive_seed(cfg.seed, streams[k], t));
        fisher_yates_into(buffer, n, rng);
        timing[k].add(std::chrono::duration<double, std::milli>(time_sorter(sorters[k], buffer)).count());
      }
    }
    for (std::size_t k = 0; k < count; ++k) {
      rows[first_row + k].costs[CostKind::Time] = {timing[k].mean(), timing[k].sd()};
    }
  }
  return rows;
}

}  // namespace shellgap
