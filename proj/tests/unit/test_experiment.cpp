#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "shellgap/error.hpp"
#include "shellgap/experiment.hpp"
#include "shellgap/random.hpp"
#include "shellgap/reproduce.hpp"

using namespace shellgap;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.sequences = {"tokuda", "ciura-128"};
  cfg.sizes = {50, 128};
  cfg.trials = 40;
  cfg.seed = 11;
  cfg.costs = {CostKind::Comparisons, CostKind::Exchanges, CostKind::ExchangeOps};
  return cfg;
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("paired means equal a direct recomputation") {
  ExperimentConfig cfg = small_config();
  cfg.paired = true;
  const auto rows = run_experiment(cfg);
  REQUIRE(rows.size() == 4);
  for (const ReportRow& row : rows) {
    const Sorter sorter = resolve_sorter(row.sequence, row.n);
    double sum = 0;
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Rng rng(derive_seed(cfg.seed, stream_id("paired"), t));
      auto a = fisher_yates(row.n, rng);
      sum += static_cast<double>(shellsort(a, sorter.gaps).comparisons);
    }
    CHECK(row.costs.at(CostKind::Comparisons).mean == doctest::Approx(sum / cfg.trials).epsilon(1e-12));
  }
}

TEST_CASE("paired mode shares permutations, unpaired mode does not") {
  ExperimentConfig cfg = small_config();
  cfg.sequences = {"ciura-large", "ciura-long"};
  cfg.paired = true;
  auto rows = run_experiment(cfg);
  CHECK(rows[0].costs.at(CostKind::Comparisons).mean == rows[1].costs.at(CostKind::Comparisons).mean);
  cfg.paired = false;
  rows = run_experiment(cfg);
  CHECK(rows[0].costs.at(CostKind::Comparisons).mean != rows[1].costs.at(CostKind::Comparisons).mean);
}

TEST_CASE("results do not depend on the thread count") {
  ExperimentConfig one = small_config();
  one.threads = 1;
  ExperimentConfig many = small_config();
  many.threads = 4;
  CHECK(format_csv(run_experiment(one), 11) == format_csv(run_experiment(many), 11));
}

TEST_CASE("chain sorters sort and report all costs") {
  ExperimentConfig cfg = small_config();
  cfg.sequences = {"pratt-25-chain", "pratt-34-chain"};
  cfg.costs = {CostKind::ExchangeOps, CostKind::Time};
  const auto rows = run_experiment(cfg);
  for (const auto& row : rows) {
    CHECK(row.costs.count(CostKind::Time) == 1);
    CHECK(row.costs.at(CostKind::ExchangeOps).mean > 0);
  }
}

TEST_CASE("config parsing") {
  const auto cfg = parse_experiment_config(
      R"({"sequences": ["tokuda"], "sizes": [100, 200], "trials": 5, "seed": 3,
          "costs": ["comparisons", "exop"], "paired": true, "format": "json"})");
  CHECK(cfg.sequences == std::vector<std::string>{"tokuda"});
  CHECK(cfg.sizes == std::vector<std::size_t>{100, 200});
  CHECK(cfg.trials == 5);
  CHECK(cfg.seed == 3);
  CHECK(cfg.costs == std::vector<CostKind>{CostKind::Comparisons, CostKind::ExchangeOps});
  CHECK(cfg.paired);
  CHECK(cfg.format == OutputFormat::Json);
  CHECK_THROWS_AS(parse_experiment_config(R"({"sequence": ["tokuda"]})"), Error);
  CHECK_THROWS_AS(parse_experiment_config("{not json"), Error);
  CHECK_THROWS_AS(parse_experiment_config(R"({"trials": "many"})"), Error);
  CHECK_THROWS_AS(load_experiment_config("/nonexistent/shellgap.json"), Error);
  ExperimentConfig empty;
  CHECK_THROWS_AS(empty.validate(), Error);
  ExperimentConfig unknown = small_config();
  unknown.sequences = {"nope"};
  CHECK_THROWS_AS(run_experiment(unknown), Error);
}

TEST_CASE("report formats") {
  const auto rows = run_experiment(small_config());
  const std::string csv = format_csv(rows, 11);
  CHECK(csv.starts_with("sequence,n,cost,mean,sd,trials,seed\n"));
  CHECK(count_lines(csv) == 1 + rows.size() * 3);
  CHECK(format_markdown(rows).starts_with("| sequence | n |"));
  CHECK(format_json(rows, 11).find("\"tokuda\"") != std::string::npos);
  CHECK(format_rows(rows, OutputFormat::Csv, 11) == csv);
  CHECK(parse_output_format("md") == OutputFormat::Markdown);
}

TEST_CASE("plot data is the difference against the baseline") {
  const auto rows = run_experiment(small_config());
  const std::string plot = emit_plot_data(rows, "tokuda");
  std::istringstream in(plot);
  std::string line;
  std::getline(in, line);
  CHECK(line == "sequence,n,cost,baseline,difference");
  std::size_t checked = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() == 5);
    if (f[0] != "ciura-128" || f[2] != "comparisons") continue;
    const std::size_t n = std::stoul(f[1]);
    double mine = 0, base = 0;
    for (const auto& r : rows) {
      if (r.n != n) continue;
      (r.sequence == "tokuda" ? base : mine) = r.costs.at(CostKind::Comparisons).mean;
    }
    CHECK(std::stod(f[4]) == doctest::Approx(mine - base).epsilon(1e-3));
    ++checked;
  }
  CHECK(checked == 2);
  CHECK_THROWS_AS(emit_plot_data(rows, "pratt-23"), Error);
}

TEST_CASE("published tables") {
  for (TableId id : {TableId::Small, TableId::Medium, TableId::Large, TableId::Time,
                     TableId::RemainingInversions}) {
    CHECK_FALSE(published_values(id).empty());
    CHECK(parse_table_id(to_string(id)) == id);
  }
  CHECK(parse_table_id("inversions") == TableId::RemainingInversions);
  CHECK_THROWS_AS(parse_table_id("huge"), Error);
}

TEST_CASE("reproduction rows carry deviations") {
  const auto report = reproduce_table(TableId::RemainingInversions, 1, {20, 0});
  CHECK(report.rows.size() == 10);
  for (const auto& row : report.rows) {
    REQUIRE(row.published.has_value());
    CHECK(*row.deviation == doctest::Approx(row.mean / *row.published - 1));
  }
  CHECK(format_reproduction_csv(report).starts_with(
      "sequence,n,cost,mean,sd,trials,seed,published,deviation\n"));
  CHECK(report.max_abs_deviation() >= 0);
}

TEST_CASE("timing order check") {
  ReproductionReport report;
  report.table = TableId::Time;
  auto add = [&](const char* name, double ms) {
    ReproductionRow row;
    row.sequence = name;
    row.n = 1000;
    row.cost = "time";
    row.mean = ms;
    report.rows.push_back(row);
  };
  add("pratt-23", 6);
  add("pratt-25", 5);
  add("tokuda", 3);
  add("ciura-1000", 3.1);
  CHECK(timing_order_holds(report));
  report.rows[3].mean = 5.5;
  CHECK_FALSE(timing_order_holds(report));
}

}
