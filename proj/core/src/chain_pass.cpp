#include "shellgap/chain_pass.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "shellgap/error.hpp"
#include "shellgap/random.hpp"

namespace shellgap {
namespace {

// Inversion tests against the current array state, charging one comparison
// each when a metrics sink is attached.
struct Probe {
  std::span<const Key> a;
  SortMetrics* metrics;

  bool inverted(std::size_t i, std::size_t j) const {
    if (j >= a.size()) return false;
    if (metrics) ++metrics->comparisons;
    return a[i] > a[j];
  }
};

bool holds(std::span<const Key> a, const Inversion& inv) {
  return inv.j < a.size() && a[inv.i] > a[inv.j];
}

void require_presorted(std::span<const Key> a, std::size_t p, std::size_t q) {
  if (!is_k_sorted(a, p) || !is_k_sorted(a, q)) {
    throw Error(ErrorCode::StructuralAssumption,
                "array is not " + std::to_string(p) + "- and " + std::to_string(q) + "-sorted");
  }
}

// Moves a[order[t]] to a[lo + t] following the cycles of the permutation.
void apply_order(std::span<Key> a, std::size_t lo, const std::vector<std::size_t>& order,
                 SortMetrics& metrics) {
  const std::size_t m = order.size();
  std::vector<bool> seen(m, false);
  for (std::size_t t = 0; t < m; ++t) {
    if (seen[t] || order[t] == lo + t) {
      seen[t] = true;
      continue;
    }
    // Rotate the cycle through a single temporary.
    const Key temp = a[lo + t];
    std::size_t dest = t;
    std::uint64_t length = 0;
    for (;;) {
      seen[dest] = true;
      const std::size_t src = order[dest] - lo;
      ++length;
      if (src == t) {
        a[lo + dest] = temp;
        break;
      }
      a[lo + dest] = a[lo + src];
      dest = src;
    }
    metrics.exchanges += length;
    metrics.exchange_ops += length + 1;
  }
}

bool interval_sorted(std::span<const Key> a, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i < hi; ++i) {
    if (a[i] > a[i + 1]) return false;
  }
  return true;
}

void insertion_fallback(std::span<Key> a, SortMetrics& metrics, ChainPassStats* stats) {
  if (stats) ++stats->fallbacks;
  detail::CountingTally tally{&metrics};
  detail::gapped_insertion(a, 1, tally);
}

ChainDescriptor make_mc1(std::size_t i) {
  ChainDescriptor c;
  c.kind = ChainKind::MC1;
  c.lo = i;
  c.hi = i + 1;
  c.essential = {{i, i + 1}};
  return c;
}

// MC6 from a known 3-inversion at i: walk the crossing chain (i+2j, i+2j+3).
ChainDescriptor walk_mc6(const Probe& probe, std::size_t i) {
  ChainDescriptor c;
  c.kind = ChainKind::MC6;
  c.lo = i;
  c.starts.push_back(i);
  c.essential.push_back({i, i + 3});
  for (std::size_t s = i + 2; probe.inverted(s, s + 3); s += 2) {
    c.starts.push_back(s);
    c.essential.push_back({s, s + 3});
  }
  c.hi = c.starts.back() + 3;
  return c;
}

// MC7 from a known 5-inversion at i.
ChainDescriptor walk_mc7(const Probe& probe, std::size_t i) {
  ChainDescriptor c;
  c.kind = ChainKind::MC7;
  c.starts.push_back(i);
  c.essential.push_back({i, i + 5});
  for (;;) {
    const std::size_t s = c.starts.back();
    std::size_t next = 0;
    if (probe.inverted(s + 3, s + 8)) {
      next = s + 3;
    } else if (probe.inverted(s + 4, s + 9)) {
      next = s + 4;
    } else {
      break;
    }
    c.starts.push_back(next);
    c.essential.push_back({next, next + 5});
  }
  const std::size_t first = c.starts.front();
  const std::size_t last = c.starts.back();
  c.lo = first;
  if (first >= 1 && probe.inverted(first - 1, first + 1)) {
    c.e1 = Inversion{first - 1, first + 1};
    c.lo = first - 1;
  } else if (probe.inverted(first + 1, first + 2)) {
    c.e1 = Inversion{first + 1, first + 2};
  }
  c.hi = last + 5;
  if (probe.inverted(last + 3, last + 4)) {
    c.e3 = Inversion{last + 3, last + 4};
  } else if (probe.inverted(last + 4, last + 6)) {
    c.e3 = Inversion{last + 4, last + 6};
    c.hi = last + 6;
  }
  if (c.e1) c.essential.insert(c.essential.begin(), *c.e1);
  if (c.e3) c.essential.push_back(*c.e3);
  return c;
}

// Sporadic chain from a known 2-inversion (i, i+2) that does not open an
// MC7 at i+1.
ChainDescriptor classify_sporadic(const Probe& probe, std::size_t i) {
  ChainDescriptor c;
  c.lo = i;
  c.hi = i + 2;
  if (probe.inverted(i, i + 1)) {
    if (probe.inverted(i + 1, i + 2)) {
      c.kind = ChainKind::MC4;
      c.essential = {{i, i + 2}, {i, i + 1}, {i + 1, i + 2}};
    } else {
      c.kind = ChainKind::MC2;
      c.essential = {{i, i + 2}, {i, i + 1}};
    }
  } else if (probe.inverted(i + 1, i + 3)) {
    // (i+1, i+2) is implied by A(i) <= A(i+1) and A(i) > A(i+2).
    c.kind = ChainKind::MC5;
    c.hi = i + 3;
    c.essential = {{i, i + 2}, {i + 1, i + 3}, {i + 1, i + 2}};
  } else {
    c.kind = ChainKind::MC3;
    c.essential = {{i, i + 2}, {i + 1, i + 2}};
  }
  return c;
}

// Scan-step detection for the 3,4 setting. `cached5` carries a known result
// for (i, i+5) from the previous step's lookahead. Returns none and sets
// `defer` when a 2-inversion at i belongs to an MC7 starting at i+1.
std::optional<ChainDescriptor> detect_34(const Probe& probe, std::size_t i,
                                         std::optional<bool> cached5, bool& defer) {
  defer = false;
  const bool inv5 = cached5 ? *cached5 : probe.inverted(i, i + 5);
  if (inv5) return walk_mc7(probe, i);
  if (probe.inverted(i, i + 2)) {
    if (probe.inverted(i + 1, i + 6)) {
      defer = true;
      return std::nullopt;
    }
    return classify_sporadic(probe, i);
  }
  if (probe.inverted(i, i + 1)) return make_mc1(i);
  return std::nullopt;
}

void check_stale(std::span<const Key> a, const ChainDescriptor& chain) {
  if (chain.hi >= a.size() || chain.lo > chain.hi) {
    throw Error(ErrorCode::StructuralAssumption, "chain interval is outside the array");
  }
  for (const Inversion& inv : chain.essential) {
    if (!holds(a, inv)) {
      throw Error(ErrorCode::StructuralAssumption,
                  "stale chain: (" + std::to_string(inv.i) + ", " + std::to_string(inv.j) +
                      ") is no longer inverted");
    }
  }
}

void count_chain(ChainPassStats* stats, ChainKind kind) {
  if (stats) ++stats->chains[static_cast<std::size_t>(kind)];
}

// Fixes one chain inside a final pass; in verified mode an interval that does
// not come out sorted is reported to the caller.
bool fix_in_pass(std::span<Key> a, const ChainDescriptor& chain, SortMetrics& metrics,
                 const ChainPassOptions& options, ChainPassStats* stats) {
  apply_order(a, chain.lo, sorted_order(chain), metrics);
  count_chain(stats, chain.kind);
  return !options.verify || interval_sorted(a, chain.lo, chain.hi);
}

void finish_verified(std::span<Key> a, SortMetrics& metrics, bool clean,
                     ChainPassStats* stats) {
  if (!clean || !interval_sorted(a, 0, a.empty() ? 0 : a.size() - 1)) {
    insertion_fallback(a, metrics, stats);
  }
}

}  // namespace

std::string_view to_string(ChainKind kind) noexcept {
  switch (kind) {
    case ChainKind::MC1: return "MC1";
    case ChainKind::MC2: return "MC2";
    case ChainKind::MC3: return "MC3";
    case ChainKind::MC4: return "MC4";
    case ChainKind::MC5: return "MC5";
    case ChainKind::MC6: return "MC6";
    case ChainKind::MC7: return "MC7";
  }
  return "?";
}

std::vector<std::size_t> sorted_order(const ChainDescriptor& c) {
  const std::size_t i = c.lo;
  switch (c.kind) {
    case ChainKind::MC1: return {i + 1, i};
    case ChainKind::MC2: return {i + 1, i + 2, i};
    case ChainKind::MC3: return {i + 2, i, i + 1};
    case ChainKind::MC4: return {i + 2, i + 1, i};
    case ChainKind::MC5: return {i + 2, i, i + 3, i + 1};
    case ChainKind::MC6: {
      std::vector<std::size_t> order{i + 1};
      for (std::size_t s : c.starts) {
        order.push_back(s + 3);
        order.push_back(s);
      }
      order.push_back(c.starts.back() + 2);
      return order;
    }
    case ChainKind::MC7: {
      const std::size_t first = c.starts.front();
      const std::size_t last = c.starts.back();
      std::vector<std::size_t> order;
      if (c.e1 && c.e1->i + 1 == first) {
        order = {first + 1, first - 1, first + 2};
      } else if (c.e1) {
        order = {first + 2, first + 1};
      } else {
        order = {first + 1, first + 2};
      }
      for (std::size_t j = 0; j < c.starts.size(); ++j) {
        const std::size_t s = c.starts[j];
        order.push_back(s + 5);
        order.push_back(s);
        if (j + 1 < c.starts.size()) {
          if (c.starts[j + 1] - s == 3) {
            order.push_back(s + 4);
          } else {
            order.push_back(s + 3);
            order.push_back(s + 6);
          }
        }
      }
      if (c.e3 && c.e3->j == last + 6) {
        order.insert(order.end(), {last + 3, last + 6, last + 4});
      } else if (c.e3) {
        order.insert(order.end(), {last + 4, last + 3});
      } else {
        order.insert(order.end(), {last + 3, last + 4});
      }
      return order;
    }
  }
  return {};
}

std::optional<ChainDescriptor> find_chain_25(std::span<const Key> array, std::size_t start,
                                             SortMetrics* metrics) {
  const Probe probe{array, metrics};
  if (start >= 2 && probe.inverted(start - 2, start + 1)) return std::nullopt;
  if (probe.inverted(start, start + 3)) return walk_mc6(probe, start);
  if (!probe.inverted(start, start + 1)) return std::nullopt;
  if (start >= 1 && probe.inverted(start - 1, start + 2)) return std::nullopt;
  return make_mc1(start);
}

void fix_chain_25(std::span<Key> array, const ChainDescriptor& chain, SortMetrics& metrics) {
  if (chain.kind != ChainKind::MC1 && chain.kind != ChainKind::MC6) {
    throw Error(ErrorCode::StructuralAssumption,
                std::string(to_string(chain.kind)) + " cannot occur on a 2,5-sorted array");
  }
  check_stale(array, chain);
  apply_order(array, chain.lo, sorted_order(chain), metrics);
}

void final_pass_25(std::span<Key> array, SortMetrics& metrics, const ChainPassOptions& options,
                   ChainPassStats* stats) {
  if (options.verify) require_presorted(array, 2, 5);
  const Probe probe{array, &metrics};
  const std::size_t n = array.size();
  bool clean = true;
  // The scan follows the published pseudocode literally: a positive (i+1, i+4)
  // lookahead moves to i+1 and re-tests it there, and a negative one is
  // re-tested as the next step's (i, i+3).
  std::size_t i = 0;
  while (i + 1 < n) {
    if (probe.inverted(i, i + 3)) {
      const ChainDescriptor chain = walk_mc6(probe, i);
      clean &= fix_in_pass(array, chain, metrics, options, stats);
      i = chain.hi + 1;
      continue;
    }
    if (!probe.inverted(i + 1, i + 4) && probe.inverted(i, i + 1)) {
      clean &= fix_in_pass(array, make_mc1(i), metrics, options, stats);
    }
    ++i;
  }
  if (options.verify) finish_verified(array, metrics, clean, stats);
}

std::optional<ChainDescriptor> find_chain_34(std::span<const Key> array, std::size_t start,
                                             SortMetrics* metrics) {
  const Probe probe{array, metrics};
  bool defer = false;
  return detect_34(probe, start, std::nullopt, defer);
}

void fix_chain_34(std::span<Key> array, const ChainDescriptor& chain, SortMetrics& metrics) {
  if (chain.kind == ChainKind::MC6) {
    throw Error(ErrorCode::StructuralAssumption, "MC6 cannot occur on a 3,4-sorted array");
  }
  check_stale(array, chain);
  apply_order(array, chain.lo, sorted_order(chain), metrics);
}

void final_pass_34(std::span<Key> array, SortMetrics& metrics, const ChainPassOptions& options,
                   ChainPassStats* stats) {
  if (options.verify) require_presorted(array, 3, 4);
  const Probe probe{array, &metrics};
  const std::size_t n = array.size();
  bool clean = true;
  std::optional<bool> cached5;
  std::size_t i = 0;
  while (i + 1 < n) {
    bool defer = false;
    const auto chain = detect_34(probe, i, cached5, defer);
    cached5.reset();
    if (defer) {
      cached5 = true;
      ++i;
      continue;
    }
    if (!chain) {
      ++i;
      continue;
    }
    clean &= fix_in_pass(array, *chain, metrics, options, stats);
    i = chain->hi + 1;
  }
  if (options.verify) finish_verified(array, metrics, clean, stats);
}

std::vector<ChainDescriptor> list_chains_25(std::span<const Key> array) {
  std::vector<ChainDescriptor> chains;
  for (std::size_t i = 0; i + 1 < array.size();) {
    if (auto chain = find_chain_25(array, i)) {
      i = chain->hi + 1;
      chains.push_back(std::move(*chain));
    } else {
      ++i;
    }
  }
  return chains;
}

std::vector<ChainDescriptor> list_chains_34(std::span<const Key> array) {
  const Probe probe{array, nullptr};
  std::vector<ChainDescriptor> chains;
  std::optional<bool> cached5;
  for (std::size_t i = 0; i + 1 < array.size();) {
    bool defer = false;
    auto chain = detect_34(probe, i, cached5, defer);
    cached5.reset();
    if (defer) cached5 = true;
    if (chain) {
      i = chain->hi + 1;
      chains.push_back(std::move(*chain));
    } else {
      ++i;
    }
  }
  return chains;
}

void presort_pratt(std::span<Key> array, PrattBasePair bases, SortMetrics& metrics) {
  if (array.size() < 2) return;
  const GapSequence seq = pratt(bases, array.size());
  detail::CountingTally tally{&metrics};
  const auto gaps = seq.gaps();
  for (auto it = gaps.rbegin(); it != gaps.rend(); ++it) {
    if (*it > 1) detail::gapped_insertion(array, *it, tally);
  }
}

std::size_t frobenius_number(PrattBasePair bases) {
  if (bases.p < 2 || bases.q < 2 || std::gcd(bases.p, bases.q) != 1) {
    throw Error(ErrorCode::InvalidParameters, "Frobenius number needs coprime bases >= 2");
  }
  return static_cast<std::size_t>(bases.p) * bases.q - bases.p - bases.q;
}

double mean_presort_inversions(PrattBasePair bases, std::size_t n, std::size_t trials,
                               std::uint64_t seed) {
  const bool is25 = bases.p == 2 && bases.q == 5;
  const bool is34 = bases.p == 3 && bases.q == 4;
  if (!is25 && !is34) {
    throw Error(ErrorCode::InvalidParameters, "only the (2,5) and (3,4) base pairs are supported");
  }
  if (trials == 0) throw Error(ErrorCode::InvalidParameters, "trials must be positive");
  const std::size_t offset = frobenius_number(bases);
  const std::uint64_t stream = stream_id(is25 ? "presort-25" : "presort-34");
  std::vector<Key> buffer;
  double total = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, stream, t));
    fisher_yates_into(buffer, n, rng);
    SortMetrics ignored;
    presort_pratt(buffer, bases, ignored);
    total += static_cast<double>(count_k_inversions(buffer, offset));
  }
  return total / static_cast<double>(trials);
}

namespace {

// Offsets up to this bound are checked for the complement property; larger
// offsets follow from the smaller ones by transitivity.
constexpr std::size_t kOffsetCheckBound = 16;

void check_offsets(std::span<const Key> a, std::initializer_list<std::size_t> allowed,
                   std::vector<std::string>& out) {
  for (std::size_t d = 1; d <= kOffsetCheckBound && d < a.size(); ++d) {
    if (std::find(allowed.begin(), allowed.end(), d) != allowed.end()) continue;
    if (!is_k_sorted(a, d)) {
      out.push_back("offset " + std::to_string(d) + " inversion outside the semigroup complement");
    }
  }
}

bool inv(std::span<const Key> a, std::size_t i, std::size_t j) {
  return j < a.size() && a[i] > a[j];
}

}  // namespace

std::vector<std::string> check_structure_25(std::span<const Key> a) {
  std::vector<std::string> out;
  check_offsets(a, {1, 3}, out);
  bool follow = false;
  bool nest = false;
  bool cross = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t p : {1u, 3u}) {
      for (std::size_t q : {1u, 3u}) {
        if (inv(a, i, i + p) && inv(a, i + p, i + p + q)) follow = true;
      }
    }
    if (inv(a, i, i + 3)) {
      if (!inv(a, i, i + 1) || !inv(a, i + 2, i + 3)) nest = true;
      if (inv(a, i + 1, i + 4)) cross = true;
    }
  }
  if (follow) out.emplace_back("concatenated inversions");
  if (nest) out.emplace_back("3-inversion without its nested 1-inversions");
  if (cross) out.emplace_back("crossing 3-inversions at offset other than 2");
  return out;
}

std::vector<std::string> check_structure_34(std::span<const Key> a) {
  std::vector<std::string> out;
  check_offsets(a, {1, 2, 5}, out);
  bool follow = false;
  bool triple = false;
  bool nest = false;
  bool cross = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t p : {1u, 2u, 5u}) {
      for (std::size_t q : {1u, 2u, 5u}) {
        if (p == 1 && q == 1) continue;
        if (inv(a, i, i + p) && inv(a, i + p, i + p + q)) follow = true;
      }
    }
    if (inv(a, i, i + 1) && inv(a, i + 1, i + 2) && inv(a, i + 2, i + 3)) triple = true;
    if (inv(a, i, i + 5)) {
      if (inv(a, i + 1, i + 3) || inv(a, i + 2, i + 4)) nest = true;
      if (inv(a, i + 1, i + 6) || inv(a, i + 2, i + 7)) cross = true;
    }
  }
  if (follow) out.emplace_back("concatenated inversions other than 1+1");
  if (triple) out.emplace_back("three consecutive 1-inversions");
  if (nest) out.emplace_back("2-inversion nested in a 5-inversion");
  if (cross) out.emplace_back("crossing 5-inversions at offset other than 3 or 4");
  return out;
}

StructureSurvey survey_structure(PrattBasePair bases, std::size_t arrays, std::size_t min_n,
                                 std::size_t max_n, std::uint64_t seed) {
  const bool is25 = bases.p == 2 && bases.q == 5;
  if (!is25 && !(bases.p == 3 && bases.q == 4)) {
    throw Error(ErrorCode::InvalidParameters, "only the (2,5) and (3,4) base pairs are supported");
  }
  if (min_n < 2 || min_n > max_n) throw Error(ErrorCode::InvalidParameters, "need 2 <= min_n <= max_n");
  StructureSurvey survey;
  const std::uint64_t stream = stream_id(is25 ? "survey-25" : "survey-34");
  std::vector<Key> buffer;
  for (std::size_t t = 0; t < arrays; ++t) {
    Rng rng(derive_seed(seed, stream, t));
    const std::size_t n = min_n + static_cast<std::size_t>(uniform_below(rng, max_n - min_n + 1));
    fisher_yates_into(buffer, n, rng);
    SortMetrics metrics;
    presort_pratt(buffer, bases, metrics);
    for (const std::string& v : is25 ? check_structure_25(buffer) : check_structure_34(buffer)) {
      ++survey.violations[v];
    }
    const ChainPassOptions verified{true};
    if (is25) {
      final_pass_25(buffer, metrics, verified, &survey.chains);
    } else {
      final_pass_34(buffer, metrics, verified, &survey.chains);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (buffer[i] != static_cast<Key>(i + 1)) {
        ++survey.unsorted;
        break;
      }
    }
    ++survey.arrays;
  }
  return survey;
}

}  // namespace shellgap
