#include <algorithm>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "shellgap/chain_pass.hpp"
#include "shellgap/error.hpp"
#include "shellgap/random.hpp"

using namespace shellgap;

namespace {

// Blocks of the finest direct-sum split of a permutation: [lo, hi] is a
// block boundary when the prefix up to hi holds exactly the smallest keys.
// Blocks of two or more positions are exactly the maximal chains.
std::vector<std::pair<std::size_t, std::size_t>> inversion_components(const std::vector<Key>& a) {
  std::vector<Key> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t lo = 0;
  Key running_max = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    running_max = std::max(running_max, a[i]);
    if (running_max == sorted[i]) {
      if (i > lo) out.emplace_back(lo, i);
      lo = i + 1;
    }
  }
  return out;
}

std::vector<Key> presorted(PrattBasePair bases, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auto a = fisher_yates(n, rng);
  SortMetrics m;
  presort_pratt(a, bases, m);
  return a;
}

void final_pass(PrattBasePair bases, std::vector<Key>& a, SortMetrics& m,
                const ChainPassOptions& options = {}, ChainPassStats* stats = nullptr) {
  if (bases.p == 2) {
    final_pass_25(a, m, options, stats);
  } else {
    final_pass_34(a, m, options, stats);
  }
}

}  // namespace

TEST_SUITE("chain_pass") {

TEST_CASE("presort leaves only offsets outside the semigroup") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a25 = presorted({2, 5}, 500, seed);
    for (std::size_t k : remaining_inversion_offsets(a25, 40)) CHECK((k == 1 || k == 3));
    const auto a34 = presorted({3, 4}, 500, seed);
    for (std::size_t k : remaining_inversion_offsets(a34, 40)) CHECK((k == 1 || k == 2 || k == 5));
  }
  CHECK(frobenius_number({2, 5}) == 3);
  CHECK(frobenius_number({3, 4}) == 5);
  CHECK(frobenius_number({2, 3}) == 1);
  CHECK_THROWS_AS(frobenius_number({2, 4}), Error);
}

TEST_CASE("every permutation up to 8 is sorted by both passes") {
  for (PrattBasePair bases : {PrattBasePair{2, 5}, PrattBasePair{3, 4}}) {
    for (std::size_t n = 1; n <= 8; ++n) {
      std::vector<Key> perm(n);
      std::iota(perm.begin(), perm.end(), 1);
      do {
        std::vector<Key> a = perm;
        SortMetrics m;
        presort_pratt(a, bases, m);
        ChainPassStats stats;
        final_pass(bases, a, m, {.verify = true}, &stats);
        REQUIRE(std::is_sorted(a.begin(), a.end()));
        REQUIRE(stats.fallbacks == 0);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST_CASE("single 3-inversion costs five exchange operations") {
  std::vector<Key> a{3, 1, 4, 2};
  const auto chains = list_chains_25(a);
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].kind == ChainKind::MC6);
  CHECK(chains[0].starts == std::vector<std::size_t>{0});
  CHECK(sorted_order(chains[0]) == std::vector<std::size_t>{1, 3, 0, 2});
  SortMetrics m;
  final_pass_25(a, m);
  CHECK(a == std::vector<Key>{1, 2, 3, 4});
  CHECK(m.exchange_ops == 5);
  CHECK(m.exchanges == 4);
}

TEST_CASE("adjacent swap costs three exchange operations") {
  std::vector<Key> a{2, 1, 3, 4, 5, 6};
  const auto chain = find_chain_25(a, 0);
  REQUIRE(chain.has_value());
  CHECK(chain->kind == ChainKind::MC1);
  SortMetrics m;
  fix_chain_25(a, *chain, m);
  CHECK(std::is_sorted(a.begin(), a.end()));
  CHECK(m.exchange_ops == 3);
}

TEST_CASE("fixing a stale chain is an error") {
  std::vector<Key> a{3, 1, 4, 2};
  const auto chain = find_chain_25(a, 0);
  REQUIRE(chain.has_value());
  std::sort(a.begin(), a.end());
  SortMetrics m;
  try {
    fix_chain_25(a, *chain, m);
    FAIL("expected StructuralAssumption");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StructuralAssumption);
  }
}

TEST_CASE("verify mode rejects arrays that were not presorted") {
  std::vector<Key> a{6, 5, 4, 3, 2, 1};
  SortMetrics m;
  CHECK_THROWS_AS(final_pass_25(a, m, {.verify = true}), Error);
  std::vector<Key> b{6, 5, 4, 3, 2, 1};
  CHECK_THROWS_AS(final_pass_34(b, m, {.verify = true}), Error);
}

TEST_CASE("listed chains are the connected inversion blocks") {
  for (PrattBasePair bases : {PrattBasePair{2, 5}, PrattBasePair{3, 4}}) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const auto a = presorted(bases, 20 + seed % 400, seed);
      const auto chains = bases.p == 2 ? list_chains_25(a) : list_chains_34(a);
      std::vector<std::pair<std::size_t, std::size_t>> got;
      for (const auto& c : chains) got.emplace_back(c.lo, c.hi);
      REQUIRE(got == inversion_components(a));
    }
  }
}

TEST_CASE("structure checks and final pass on random presorted arrays") {
  for (PrattBasePair bases : {PrattBasePair{2, 5}, PrattBasePair{3, 4}}) {
    for (std::size_t n : {100u, 1000u}) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto a = presorted(bases, n, seed);
        CHECK((bases.p == 2 ? check_structure_25(a) : check_structure_34(a)).empty());
        std::vector<Key> expect = a;
        std::sort(expect.begin(), expect.end());
        SortMetrics m;
        ChainPassStats stats;
        final_pass(bases, a, m, {.verify = true}, &stats);
        REQUIRE(a == expect);
        CHECK(stats.fallbacks == 0);
      }
    }
  }
}

TEST_CASE("survey is clean and only expected chain kinds occur") {
  const auto s25 = survey_structure({2, 5}, 200, 2, 300, 9);
  CHECK(s25.clean());
  for (ChainKind k : {ChainKind::MC2, ChainKind::MC3, ChainKind::MC4, ChainKind::MC5, ChainKind::MC7}) {
    CHECK(s25.chains.count(k) == 0);
  }
  const auto s34 = survey_structure({3, 4}, 200, 2, 300, 9);
  CHECK(s34.clean());
  CHECK(s34.chains.count(ChainKind::MC6) == 0);
}

TEST_CASE("remaining inversion means") {
  CHECK_THROWS_AS(mean_presort_inversions({2, 3}, 100, 10, 1), Error);
  const double m34 = mean_presort_inversions({3, 4}, 1000, 50, 1);
  CHECK(m34 > 20);
  CHECK(m34 < 36);
  CHECK(mean_presort_inversions({2, 5}, 1000, 20, 3) == mean_presort_inversions({2, 5}, 1000, 20, 3));
}

}
