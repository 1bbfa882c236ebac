#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "shellgap/gap_sequence.hpp"
#include "shellgap/gap_sequences.hpp"

namespace shellgap {

enum class CostKind { Comparisons, Exchanges, ExchangeOps, Time };

std::string_view to_string(CostKind kind) noexcept;
/// Accepts "comparisons"/"co", "exchanges"/"ex", "exchange-ops"/"exop", "time".
CostKind parse_cost_kind(std::string_view text);

/// One search axis. Real axes are linearly spaced with both endpoints
/// included; a one-point real axis sits at the midpoint. Integer axes hold
/// every integer in [lower, upper].
struct Axis {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t points = 1;
  bool integer = false;

  static Axis linear(std::string name, double lower, double upper, std::size_t points);
  static Axis integers(std::string name, int lower, int upper);

  std::size_t size() const noexcept;
  double value(std::size_t index) const;
  std::vector<double> values() const;
};

enum class TemplateFamily { A, B };

/// Axes in parameter order: a, b, c, d, e, f for family A; a, b, c, d for B.
struct GridSpec {
  TemplateFamily family = TemplateFamily::A;
  std::vector<Axis> axes;
  bool exponent_floor = false;  // family B only

  /// Twenty points on [0.5, 5] for a, b, c, d, f; e in 0..10.
  static GridSpec default_a();
  /// Fifty points on [0, 10] for a, b, c; d in 0..10.
  static GridSpec default_b();
  /// Six points on [0.5, 5] for a, b, c, d, f; e in 0..5.
  static GridSpec coarse_a();
  /// Parses "a=0.5:5:20,b=...,e=0:10" (real axes lo:hi:points, integer
  /// axes lo:hi) or a preset name: "default-a", "default-b", "coarse-a".
  static GridSpec parse(TemplateFamily family, std::string_view text);

  /// Product of axis sizes; 0 if any axis is empty.
  std::uint64_t cardinality() const noexcept;
  /// The tuple at a mixed-radix index (first axis varies slowest).
  TemplateParams at(std::uint64_t index) const;
  void validate() const;
};

/// Lazy enumeration of a grid's Cartesian product.
class GridEnumerator {
 public:
  explicit GridEnumerator(GridSpec spec);
  std::optional<TemplateParams> next();
  std::uint64_t size() const noexcept { return size_; }

 private:
  GridSpec spec_;
  std::uint64_t size_ = 0;
  std::uint64_t cursor_ = 0;
};

struct Candidate {
  TemplateParams params;
  GapSequence sequence;
  std::string key;
};

struct DedupResult {
  std::vector<Candidate> unique;  // first occurrence order
  std::uint64_t total_in = 0;
  std::uint64_t degenerate = 0;
};

/// Collapses tuples that generate the same gap list for n. Tuples whose
/// sequence is degenerate (decreasing, or fewer than 2 gaps for n > 4) are
/// dropped and counted.
DedupResult dedupe(GridEnumerator tuples, std::size_t n);
DedupResult dedupe(const std::vector<TemplateParams>& tuples, std::size_t n);

struct TrialStats {
  double mean = 0.0;
  double sd = 0.0;
  std::size_t trials = 0;
  CostKind cost_kind = CostKind::Comparisons;
};

/// Where a candidate's permutations come from. Independent streams are
/// keyed by the sequence's canonical key; paired mode (common random
/// numbers) gives every candidate the same permutations.
struct StreamPolicy {
  bool paired = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// Mean cost of sorting `trials` Fisher-Yates permutations of 1..n.
/// Deterministic given the seed. Time cost runs serially on the counter-free
/// engine.
TrialStats evaluate(const GapSequence& seq, std::size_t n, std::size_t trials, CostKind cost,
                    std::uint64_t seed, const StreamPolicy& policy = {});

/// One trial's cost for trial index `trial`; the building block of
/// evaluate() and sprt_filter().
double trial_cost(const GapSequence& seq, std::size_t n, CostKind cost, std::uint64_t seed,
                  std::uint64_t stream, std::uint64_t trial);

struct SprtConfig {
  double mean_threshold = std::numeric_limits<double>::infinity();
  double variance_upper_bound = 0.0;
  double confidence = 0.95;
  std::size_t min_trials = 5;
  std::size_t max_trials = 100;

  void validate() const;
  /// Threshold = factor * baseline_mean, variance bound = (spread * threshold)^2.
  static SprtConfig relative_to(double baseline_mean, double factor = 1.02, double spread = 0.05);
};

enum class SprtDecision { Accept, Reject };

struct SprtOutcome {
  SprtDecision decision = SprtDecision::Reject;
  std::size_t trials_used = 0;
  double mean = 0.0;
};

/// Sequential screen over an arbitrary sample source. After each draw
/// beyond min_trials, a normal-approximation band of half-width
/// z * sqrt(variance_upper_bound / t) is placed around the running mean:
/// Accept when the band lies wholly below the threshold, Reject when wholly
/// above, and decide by the point estimate at max_trials.
SprtOutcome sequential_filter(const SprtConfig& cfg,
                              const std::function<double(std::size_t)>& draw);

SprtOutcome sprt_filter(const GapSequence& seq, std::size_t n, const SprtConfig& cfg,
                        CostKind cost, std::uint64_t seed, const StreamPolicy& policy = {});

struct SearchResult {
  TemplateParams params;
  std::string key;
  std::size_t gap_count = 0;
  TrialStats stats;
  std::size_t rank = 0;
};

struct SearchReport {
  std::vector<SearchResult> results;  // ranked, at most top_k
  std::uint64_t tuples = 0;
  std::uint64_t unique = 0;
  std::uint64_t degenerate = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::uint64_t screening_trials = 0;
  std::string diagnostic;
};

struct SearchOptions {
  std::size_t full_trials = 1000;
  std::size_t top_k = 10;
  StreamPolicy streams;
  /// When set, progress is saved here after every batch and an existing
  /// matching checkpoint is resumed.
  std::optional<std::string> checkpoint_path;
  std::size_t batch_size = 512;
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

/// enumerate -> dedupe -> sprt_filter -> evaluate(accepted) -> rank.
/// Ranking: lowest mean, then fewer gaps, then canonical key.
SearchReport grid_search(const GridSpec& spec, std::size_t n, CostKind cost,
                         const SprtConfig& cfg, std::uint64_t seed,
                         const SearchOptions& options = {});

/// Re-grids every real axis over [v - radius, v + radius] with `points`
/// points (integer parameters stay fixed), searches again and returns the
/// best of the refined grid and the input tuple under the same seed.
SearchResult local_refine(const TemplateParams& best, std::size_t n, CostKind cost,
                          const SprtConfig& cfg, std::uint64_t seed, double radius = 0.2,
                          std::size_t points = 20, const SearchOptions& options = {});

/// Strict ordering used for ranking.
bool ranks_before(const SearchResult& a, const SearchResult& b);

/// CSV: rank,family,a,b,c,d,e,f,gap_prefix,mean,sd,trials
std::string results_csv(const std::vector<SearchResult>& results);

std::string describe(const TemplateParams& params);

}  // namespace shellgap
