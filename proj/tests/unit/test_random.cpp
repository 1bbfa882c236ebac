#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "doctest.h"
#include "shellgap/random.hpp"

using namespace shellgap;

TEST_SUITE("random") {

TEST_CASE("reference values of the primitives") {
  // First output of the SplitMix64 generator seeded with 0.
  CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(stream_id("") == 0xCBF29CE484222325ULL);
  CHECK(stream_id("a") == 0xAF63DC4C8601EC8CULL);
  Rng rng;
  rng.discard(9999);
  CHECK(rng() == 9981545732273789042ULL);
}

TEST_CASE("derived seeds separate streams and indices") {
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

TEST_CASE("uniform_below stays in range") {
  Rng rng(5);
  CHECK(uniform_below(rng, 1) == 0);
  std::array<int, 7> hits{};
  for (int i = 0; i < 7000; ++i) {
    const auto v = uniform_below(rng, 7);
    REQUIRE(v < 7);
    ++hits[v];
  }
  for (int h : hits) CHECK(h > 800);
}

TEST_CASE("fisher_yates returns a permutation and is reproducible") {
  Rng a(42), b(42);
  const auto p = fisher_yates(1000, a);
  CHECK(p == fisher_yates(1000, b));
  auto sorted = p;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Key> expect(1000);
  std::iota(expect.begin(), expect.end(), 1);
  CHECK(sorted == expect);
  CHECK(fisher_yates(0, a).empty());
}

TEST_CASE("fisher_yates is uniform over the six permutations of 3") {
  Rng rng(2024);
  std::map<std::vector<Key>, int> counts;
  const int draws = 60000;
  std::vector<Key> buf;
  for (int i = 0; i < draws; ++i) {
    fisher_yates_into(buf, 3, rng);
    ++counts[buf];
  }
  REQUIRE(counts.size() == 6);
  double chi2 = 0;
  const double expected = draws / 6.0;
  for (const auto& [perm, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 5 degrees of freedom, 0.1% upper tail.
  CHECK(chi2 < 20.515);
}

}
