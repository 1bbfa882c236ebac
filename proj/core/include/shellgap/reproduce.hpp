#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shellgap/grid_optimizer.hpp"

namespace shellgap {

enum class TableId { Small, Medium, Large, Time, RemainingInversions };

TableId parse_table_id(std::string_view text);
std::string_view to_string(TableId id) noexcept;

/// A published mean the reproduction is compared against.
struct PublishedValue {
  std::string sequence;
  std::size_t n = 0;
  /// A cost name ("comparisons", "exchanges", "exchange-ops", "time") or,
  /// for the remaining-inversion table, "3-inversions" / "5-inversions".
  std::string cost;
  double mean = 0.0;
};

/// Reference constants for one table (time values are milliseconds).
const std::vector<PublishedValue>& published_values(TableId id);

struct ReproductionRow {
  std::string sequence;
  std::size_t n = 0;
  std::string cost;
  double mean = 0.0;
  double sd = 0.0;
  std::size_t trials = 0;
  std::optional<double> published;
  /// mean / published - 1.
  std::optional<double> deviation;
};

struct ReproductionReport {
  TableId table = TableId::Small;
  std::uint64_t seed = 0;
  std::vector<ReproductionRow> rows;

  /// Largest |deviation| over rows that have a reference; time rows are
  /// excluded because absolute times are host-bound.
  double max_abs_deviation() const;
};

struct ReproduceOptions {
  std::size_t trials = 1000;
  unsigned threads = 0;
};

/// Runs the sequence/size grid of the chosen table. The Time table also
/// reports, as its final row ("ordering-holds", 1 or 0), whether the
/// published ordering held.
ReproductionReport reproduce_table(TableId id, std::uint64_t seed,
                                   const ReproduceOptions& options = {});

/// Header `sequence,n,cost,mean,sd,trials,seed,published,deviation`.
std::string format_reproduction_csv(const ReproductionReport& report);

/// True when, at the measured size, Pratt-23 is slower than Pratt-25 and
/// Pratt-25 is slower than every Tokuda-like sequence (Tokuda, Ciura and
/// the template sequences).
bool timing_order_holds(const ReproductionReport& time_report);

}  // namespace shellgap
