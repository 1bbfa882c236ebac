#include "shellgap/metrics_sort.hpp"

#include <string>

#include "shellgap/error.hpp"

namespace shellgap {

SortMetrics& SortMetrics::operator+=(const SortMetrics& other) {
  comparisons += other.comparisons;
  exchanges += other.exchanges;
  exchange_ops += other.exchange_ops;
  if (other.wall_time) wall_time = wall_time.value_or(std::chrono::nanoseconds{0}) + *other.wall_time;
  return *this;
}

void gapped_insertion_pass(std::span<Key> array, std::size_t gap, SortMetrics& metrics) {
  if (gap < 1 || gap >= array.size()) {
    throw Error(ErrorCode::InvalidGap, "gap " + std::to_string(gap) +
                                           " is outside [1, " + std::to_string(array.size()) + ")");
  }
  detail::CountingTally tally{&metrics};
  detail::gapped_insertion(array, gap, tally);
}

SortMetrics shellsort(std::span<Key> array, std::span<const std::size_t> gaps,
                      AccountingMode mode) {
  validate_gaps(gaps);
  SortMetrics metrics;
  detail::CountingTally tally{&metrics};
  if (mode == AccountingMode::CountAndTime) {
    const auto start = std::chrono::steady_clock::now();
    detail::shellsort_passes(array, gaps, tally);
    metrics.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start);
  } else {
    detail::shellsort_passes(array, gaps, tally);
  }
  return metrics;
}

SortMetrics shellsort(std::span<Key> array, const GapSequence& gaps, AccountingMode mode) {
  return shellsort(array, gaps.gaps(), mode);
}

std::chrono::nanoseconds timed_shellsort(std::span<Key> array, const GapSequence& gaps) {
  detail::NullTally tally;
  const auto start = std::chrono::steady_clock::now();
  detail::shellsort_passes(array, gaps.gaps(), tally);
  return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                              start);
}

bool is_k_sorted(std::span<const Key> array, std::size_t k) {
  if (k == 0) return true;
  for (std::size_t i = 0; i + k < array.size(); ++i) {
    if (array[i] > array[i + k]) return false;
  }
  return true;
}

std::size_t count_k_inversions(std::span<const Key> array, std::size_t k) {
  if (k == 0) return 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i + k < array.size(); ++i) {
    if (array[i] > array[i + k]) ++count;
  }
  return count;
}

std::set<std::size_t> remaining_inversion_offsets(std::span<const Key> array,
                                                  std::size_t max_offset) {
  std::set<std::size_t> offsets;
  for (std::size_t k = 1; k <= max_offset && k < array.size(); ++k) {
    if (!is_k_sorted(array, k)) offsets.insert(k);
  }
  return offsets;
}

}  // namespace shellgap
