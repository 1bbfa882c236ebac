#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shellgap/gap_sequences.hpp"
#include "shellgap/metrics_sort.hpp"

namespace shellgap {

/// An inversion (i, j), i < j, with A(i) > A(j) when it was detected.
struct Inversion {
  std::size_t i = 0;
  std::size_t j = 0;

  std::size_t offset() const noexcept { return j - i; }
  friend bool operator==(const Inversion&, const Inversion&) = default;
};

/// Maximal-chain catalog for 2,5-sorted arrays (MC1, MC6) and 3,4-sorted
/// arrays (MC1..MC5, MC7).
enum class ChainKind { MC1, MC2, MC3, MC4, MC5, MC6, MC7 };

std::string_view to_string(ChainKind kind) noexcept;

/// A maximal chain of inversions.
///
/// `starts` holds the left ends of the long inversions that make up the
/// essential part: 3-inversions for MC6 (consecutive starts differ by 2) and
/// 5-inversions for MC7 (consecutive starts differ by 3 or 4). `e1` / `e3`
/// are the optional MC7 boundary inversions. [lo, hi] is the underlying
/// interval; nothing outside it takes part in the chain.
struct ChainDescriptor {
  ChainKind kind = ChainKind::MC1;
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::vector<Inversion> essential;
  std::vector<std::size_t> starts;
  std::optional<Inversion> e1;
  std::optional<Inversion> e3;

  /// Number of long inversions (k); 1 for the sporadic kinds.
  std::size_t length() const noexcept { return starts.empty() ? 1 : starts.size(); }
};

/// Source positions of the interval in ascending key order, as implied by
/// the chain's inequalities: element order()[t] belongs at lo + t.
std::vector<std::size_t> sorted_order(const ChainDescriptor& chain);

struct ChainPassOptions {
  /// Check the k-sorted preconditions (throwing Error(StructuralAssumption))
  /// and that every fixed interval comes out sorted.
  bool verify = false;
};

struct ChainPassStats {
  std::array<std::uint64_t, 7> chains{};  // indexed by ChainKind
  std::uint64_t fallbacks = 0;

  std::uint64_t count(ChainKind kind) const noexcept {
    return chains[static_cast<std::size_t>(kind)];
  }
};

// 2,5 setting: only 1- and 3-inversions remain.

/// The maximal chain whose underlying interval starts at `start`, if any.
/// Detection comparisons are charged to `metrics` when given.
std::optional<ChainDescriptor> find_chain_25(std::span<const Key> array, std::size_t start,
                                             SortMetrics* metrics = nullptr);

/// Rearranges the chain's interval into sorted order by cycle decomposition:
/// a cycle of length L costs L exchanges and L + 1 exchange operations.
/// Throws Error(StructuralAssumption) if the essential inversions no longer
/// hold.
void fix_chain_25(std::span<Key> array, const ChainDescriptor& chain, SortMetrics& metrics);

/// Structure-aware replacement for the final insertion pass on a 2- and
/// 5-sorted array.
void final_pass_25(std::span<Key> array, SortMetrics& metrics,
                   const ChainPassOptions& options = {}, ChainPassStats* stats = nullptr);

// 3,4 setting: only 1-, 2- and 5-inversions remain.

std::optional<ChainDescriptor> find_chain_34(std::span<const Key> array, std::size_t start,
                                             SortMetrics* metrics = nullptr);

void fix_chain_34(std::span<Key> array, const ChainDescriptor& chain, SortMetrics& metrics);

void final_pass_34(std::span<Key> array, SortMetrics& metrics,
                   const ChainPassOptions& options = {}, ChainPassStats* stats = nullptr);

/// Every maximal chain of a 2,5-sorted (resp. 3,4-sorted) array, left to
/// right, found without modifying it.
std::vector<ChainDescriptor> list_chains_25(std::span<const Key> array);
std::vector<ChainDescriptor> list_chains_34(std::span<const Key> array);

/// Runs every gap of the Pratt sequence for `bases` except 1.
void presort_pratt(std::span<Key> array, PrattBasePair bases, SortMetrics& metrics);

/// Largest gap-offset left open by the bases: 3 for (2,5), 5 for (3,4).
std::size_t frobenius_number(PrattBasePair bases);

/// Mean number of Frobenius-offset inversions left by presort_pratt over
/// `trials` Fisher-Yates permutations of 1..n. Only (2,5) and (3,4) are
/// accepted; anything else throws Error(InvalidParameters).
double mean_presort_inversions(PrattBasePair bases, std::size_t n, std::size_t trials,
                               std::uint64_t seed);

/// Violations of the structural lemmas on a presorted array; empty when the
/// array behaves as the theory says. Each entry names the broken property.
std::vector<std::string> check_structure_25(std::span<const Key> array);
std::vector<std::string> check_structure_34(std::span<const Key> array);

/// Outcome of running the structural checks and the verified final pass on
/// many random presorted arrays.
struct StructureSurvey {
  std::uint64_t arrays = 0;
  std::map<std::string, std::uint64_t> violations;
  std::uint64_t unsorted = 0;  // final pass output differed from sorted order
  ChainPassStats chains;

  bool clean() const noexcept { return violations.empty() && unsorted == 0 && chains.fallbacks == 0; }
};

/// `arrays` Fisher-Yates permutations with sizes drawn uniformly from
/// [min_n, max_n], presorted with `bases` ((2,5) or (3,4)).
StructureSurvey survey_structure(PrattBasePair bases, std::size_t arrays, std::size_t min_n,
                                 std::size_t max_n, std::uint64_t seed);

}  // namespace shellgap
