#include <cmath>
#include <filesystem>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "shellgap/error.hpp"
#include "shellgap/grid_optimizer.hpp"

using namespace shellgap;

namespace {

GridSpec tiny_grid() {
  return GridSpec::parse(TemplateFamily::A, "a=1.5:3:4,b=1:2:2,c=1.5:3:3,d=1:2:2,e=0:1,f=0.8:1.2:2");
}

std::filesystem::path temp_file(const char* name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_SUITE("grid_optimizer") {

TEST_CASE("preset cardinalities") {
  CHECK(GridSpec::default_a().cardinality() == 35200000ULL);  // 20^5 * 11
  CHECK(GridSpec::default_b().cardinality() == 1375000ULL);   // 50^3 * 11
  CHECK(GridSpec::coarse_a().cardinality() == 46656ULL);      // 6^5 * 6
}

TEST_CASE("axis values") {
  const auto axis = Axis::linear("a", 0.5, 5.0, 20);
  CHECK(axis.value(0) == 0.5);
  CHECK(axis.value(19) == 5.0);
  CHECK(axis.value(1) == doctest::Approx(0.5 + 4.5 / 19));
  CHECK(Axis::linear("a", 1, 3, 1).value(0) == 2.0);
  CHECK(Axis::integers("e", 0, 10).values().size() == 11);
  CHECK_THROWS_AS(Axis::linear("a", 3, 1, 2), Error);
}

TEST_CASE("grid parsing and enumeration order") {
  const GridSpec spec = tiny_grid();
  CHECK(spec.cardinality() == 4 * 2 * 3 * 2 * 2 * 2);
  CHECK(std::get<TemplateParamsA>(spec.at(0)) == TemplateParamsA{1.5, 1, 1.5, 1, 0, 0.8});
  CHECK(std::get<TemplateParamsA>(spec.at(spec.cardinality() - 1)) == TemplateParamsA{3, 2, 3, 2, 1, 1.2});
  // The last axis varies fastest.
  CHECK(std::get<TemplateParamsA>(spec.at(1)).f == 1.2);
  GridEnumerator it(spec);
  std::uint64_t count = 0;
  while (it.next()) ++count;
  CHECK(count == spec.cardinality());
  CHECK(GridSpec::parse(TemplateFamily::B, "a=1,b=2:4:3,c=1,d=0:2,floor").exponent_floor);
  CHECK_THROWS_AS(GridSpec::parse(TemplateFamily::A, "a=1,b=1,c=1,d=1,e=0"), Error);
  CHECK_THROWS_AS(GridSpec::parse(TemplateFamily::A, "a=1,b=1,c=1,d=1,e=0,f=1,g=2"), Error);
  CHECK_THROWS_AS(GridSpec::parse(TemplateFamily::B, "default-a"), Error);
  CHECK_THROWS_AS(GridSpec::parse(TemplateFamily::A, "a=1,b=1,c=1,d=1,e=0:1:2,f=1"), Error);
}

TEST_CASE("dedupe drops repeats and counts degenerate tuples") {
  const std::vector<TemplateParams> tuples{
      TemplateParamsB{1, 4, 2, 0, false},
      TemplateParamsB{1, 2, 1, 0, false},  // same gaps, different tuple
      TemplateParamsB{50, 0.5, 1, 0, false},  // decreasing
      TemplateParamsB{1, 4, 0, 0, false},     // invalid c
      TemplateParamsB{1, 3, 1, 0, false},
  };
  const DedupResult r = dedupe(tuples, 1000);
  CHECK(r.total_in == 5);
  CHECK(r.degenerate == 2);
  REQUIRE(r.unique.size() == 2);
  CHECK(r.unique[0].key == "1,2,4,8,16,32,64,128,256,512");
  const DedupResult grid = dedupe(GridEnumerator(tiny_grid()), 128);
  CHECK(grid.total_in == tiny_grid().cardinality());
  CHECK(grid.unique.size() + grid.degenerate <= grid.total_in);
}

TEST_CASE("sequential filter decisions") {
  SprtConfig cfg;
  cfg.mean_threshold = 1000;
  cfg.variance_upper_bound = 100 * 100;
  auto good = sequential_filter(cfg, [](std::size_t) { return 900.0; });
  CHECK(good.decision == SprtDecision::Accept);
  CHECK(good.trials_used == 5);
  auto bad = sequential_filter(cfg, [](std::size_t) { return 1100.0; });
  CHECK(bad.decision == SprtDecision::Reject);
  CHECK(bad.trials_used == 5);
  // With z = 1.96 and sd 100 the band half-width after t trials is
  // 196 / sqrt(t); a gap of 50 is first resolved at t = 16.
  auto close = sequential_filter(cfg, [](std::size_t) { return 950.0; });
  CHECK(close.decision == SprtDecision::Accept);
  CHECK(close.trials_used == 16);
  auto tie = sequential_filter(cfg, [](std::size_t) { return 1000.0; });
  CHECK(tie.decision == SprtDecision::Reject);
  CHECK(tie.trials_used == cfg.max_trials);
  SprtConfig broken = cfg;
  broken.min_trials = 0;
  CHECK_THROWS_AS(sequential_filter(broken, [](std::size_t) { return 0.0; }), Error);
}

TEST_CASE("relative threshold") {
  const SprtConfig cfg = SprtConfig::relative_to(1000);
  CHECK(cfg.mean_threshold == doctest::Approx(1020));
  CHECK(cfg.variance_upper_bound == doctest::Approx(51 * 51));
}

TEST_CASE("filter keeps clearly good candidates") {
  SprtConfig cfg;
  cfg.mean_threshold = 100;
  cfg.variance_upper_bound = 25;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(85, 5);
  int rejected = 0;
  for (int c = 0; c < 1000; ++c) {
    if (sequential_filter(cfg, [&](std::size_t) { return noise(rng); }).decision == SprtDecision::Reject) {
      ++rejected;
    }
  }
  CHECK(rejected < 50);
}

TEST_CASE("ranking ties fall back to gap count then key") {
  SearchResult a, b;
  a.stats.mean = b.stats.mean = 10;
  a.gap_count = 3;
  b.gap_count = 4;
  CHECK(ranks_before(a, b));
  b.gap_count = 3;
  a.key = "1,4,9";
  b.key = "1,4,10";
  CHECK(ranks_before(b, a));
  b.stats.mean = 11;
  CHECK(ranks_before(a, b));
}

TEST_CASE("grid search is deterministic and resumes from a checkpoint") {
  const GridSpec spec = tiny_grid();
  SprtConfig cfg = SprtConfig::relative_to(1022, 1.05);
  SearchOptions options;
  options.full_trials = 50;
  options.batch_size = 16;
  const SearchReport first = grid_search(spec, 128, CostKind::Comparisons, cfg, 7, options);
  const SearchReport second = grid_search(spec, 128, CostKind::Comparisons, cfg, 7, options);
  REQUIRE_FALSE(first.results.empty());
  CHECK(results_csv(first.results) == results_csv(second.results));
  CHECK(first.screening_trials == second.screening_trials);
  CHECK(first.accepted + first.rejected == first.unique);
  for (std::size_t r = 1; r < first.results.size(); ++r) {
    CHECK_FALSE(ranks_before(first.results[r], first.results[r - 1]));
  }

  options.streams.threads = 1;
  CHECK(results_csv(grid_search(spec, 128, CostKind::Comparisons, cfg, 7, options).results) ==
        results_csv(first.results));

  const auto path = temp_file("shellgap_ckpt_test.json");
  SearchOptions interrupted = options;
  interrupted.checkpoint_path = path.string();
  interrupted.progress = [](std::uint64_t done, std::uint64_t) {
    if (done >= 32) throw std::runtime_error("stop");
  };
  CHECK_THROWS_AS(grid_search(spec, 128, CostKind::Comparisons, cfg, 7, interrupted), std::runtime_error);
  CHECK(std::filesystem::exists(path));
  SearchOptions resumed = options;
  resumed.checkpoint_path = path.string();
  std::uint64_t first_progress = 0;
  resumed.progress = [&](std::uint64_t done, std::uint64_t) {
    if (first_progress == 0) first_progress = done;
  };
  const SearchReport again = grid_search(spec, 128, CostKind::Comparisons, cfg, 7, resumed);
  CHECK(first_progress == 48);
  CHECK(results_csv(again.results) == results_csv(first.results));
  CHECK(again.screening_trials == first.screening_trials);

  // A checkpoint from a different search is refused.
  CHECK_THROWS_AS(grid_search(spec, 128, CostKind::Comparisons, cfg, 8, resumed), Error);
  std::filesystem::remove(path);
}

TEST_CASE("empty result carries a diagnostic") {
  SprtConfig cfg;
  cfg.mean_threshold = 10;
  cfg.variance_upper_bound = 1;
  SearchOptions options;
  options.full_trials = 10;
  const SearchReport r = grid_search(tiny_grid(), 128, CostKind::Comparisons, cfg, 1, options);
  CHECK(r.results.empty());
  CHECK_FALSE(r.diagnostic.empty());
}

TEST_CASE("local refinement never returns something worse than its input") {
  SearchOptions options;
  options.full_trials = 100;
  const TemplateParams start = TemplateParamsA{2.3, 1.4, 2.3, 1.4, 1, 1.0};
  const SprtConfig cfg = SprtConfig::relative_to(1022, 1.05);
  const SearchResult refined = local_refine(start, 128, CostKind::Comparisons, cfg, 3, 0.2, 3, options);
  const GapSequence seq = generate(start, 128);
  const TrialStats base = evaluate(seq, 128, 100, CostKind::Comparisons, 3);
  CHECK(refined.stats.mean <= base.mean);
  CHECK(std::get<TemplateParamsA>(refined.params).e == 1);
}

TEST_CASE("cost names and csv header") {
  CHECK(parse_cost_kind("exop") == CostKind::ExchangeOps);
  CHECK(parse_cost_kind("comparisons") == CostKind::Comparisons);
  CHECK_THROWS_AS(parse_cost_kind("swaps"), Error);
  CHECK(results_csv({}) == "rank,family,a,b,c,d,e,f,gap_prefix,mean,sd,trials\n");
  CHECK(describe(TemplateParamsB{1, 4, 2, 0, true}) == "template-b:<1,4,2,0,floor>");
}

}
