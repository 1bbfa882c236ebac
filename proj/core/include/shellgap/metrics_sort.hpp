#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>

#include "shellgap/gap_sequence.hpp"

namespace shellgap {

/// Experiments sort the distinct integers 1..N; no satellite data.
using Key = std::int64_t;

/// Per-run operation counters.
///
/// `exchanges` counts single-position element moves. `exchange_ops` counts
/// assignments when a swap is decomposed into temp/X/Y writes: an insertion
/// that shifts m elements costs m + 2 (save, m shifts, place), an insertion
/// that moves nothing costs 0.
struct SortMetrics {
  std::uint64_t comparisons = 0;
  std::uint64_t exchanges = 0;
  std::uint64_t exchange_ops = 0;
  std::optional<std::chrono::nanoseconds> wall_time;

  SortMetrics& operator+=(const SortMetrics& other);
  friend bool operator==(const SortMetrics&, const SortMetrics&) = default;
};

enum class AccountingMode { CountOnly, CountAndTime };

namespace detail {

struct CountingTally {
  SortMetrics* metrics;

  void compare() noexcept { ++metrics->comparisons; }
  void insertion(std::uint64_t moves) noexcept {
    metrics->exchanges += moves;
    metrics->exchange_ops += moves + 2;
  }
};

/// Counter-free twin used for wall-clock measurements.
struct NullTally {
  void compare() noexcept {}
  void insertion(std::uint64_t) noexcept {}
};

// Sentinel-free gapped insertion. One comparison is charged per key test,
// including the test that ends the inner loop; reaching the left boundary
// ends the loop without a key test.
template <class Tally>
inline void gapped_insertion(std::span<Key> a, std::size_t gap, Tally& tally) {
  const std::size_t n = a.size();
  for (std::size_t i = gap; i < n; ++i) {
    const Key v = a[i];
    std::size_t j = i;
    std::uint64_t moves = 0;
    while (j >= gap) {
      tally.compare();
      if (a[j - gap] > v) {
        a[j] = a[j - gap];
        j -= gap;
        ++moves;
      } else {
        break;
      }
    }
    if (moves != 0) {
      a[j] = v;
      tally.insertion(moves);
    }
  }
}

template <class Tally>
inline void shellsort_passes(std::span<Key> a, std::span<const std::size_t> gaps,
                             Tally& tally) {
  for (auto it = gaps.rbegin(); it != gaps.rend(); ++it) {
    if (*it < a.size()) gapped_insertion(a, *it, tally);
  }
}

}  // namespace detail

/// Gap-sorts `array` in place. Throws Error(InvalidGap) unless 1 <= gap < N.
void gapped_insertion_pass(std::span<Key> array, std::size_t gap, SortMetrics& metrics);

/// Sorts `array` ascending, running passes from the largest gap down.
///
/// Gaps >= N are skipped, which is the same as truncating the sequence to N.
/// In CountAndTime mode the counted run is also timed with a steady clock.
SortMetrics shellsort(std::span<Key> array, const GapSequence& gaps,
                      AccountingMode mode = AccountingMode::CountOnly);

/// Same as above for a raw gap list; throws Error(InvalidSequence) if the
/// list is empty, does not contain 1 as its smallest gap or is not strictly
/// increasing.
SortMetrics shellsort(std::span<Key> array, std::span<const std::size_t> gaps,
                      AccountingMode mode = AccountingMode::CountOnly);

/// Counter-free engine; returns the elapsed wall time.
std::chrono::nanoseconds timed_shellsort(std::span<Key> array, const GapSequence& gaps);

/// True iff A(i) <= A(i+k) for every valid i. Vacuously true for k >= N.
bool is_k_sorted(std::span<const Key> array, std::size_t k);

/// |{ i : A(i) > A(i+k) }|.
std::size_t count_k_inversions(std::span<const Key> array, std::size_t k);

/// { k <= max_offset : the array has at least one k-inversion }.
std::set<std::size_t> remaining_inversion_offsets(std::span<const Key> array,
                                                  std::size_t max_offset);

}  // namespace shellgap
