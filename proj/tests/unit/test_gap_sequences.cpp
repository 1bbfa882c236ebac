#include <cmath>
#include <vector>

#include "doctest.h"
#include "shellgap/catalog.hpp"
#include "shellgap/error.hpp"
#include "shellgap/gap_sequences.hpp"

using namespace shellgap;

namespace {

std::vector<std::size_t> to_vec(const GapSequence& s) {
  return {s.gaps().begin(), s.gaps().end()};
}

std::vector<std::size_t> prefix(const GapSequence& s, std::size_t k) {
  auto v = to_vec(s);
  v.resize(std::min(k, v.size()));
  return v;
}

// Direct evaluation of the floored template, kept apart from the library.
std::vector<std::size_t> template_a_oracle(double a, double b, double c, double d, double e,
                                           double f, std::size_t n) {
  std::vector<std::size_t> out{1};
  for (int i = 0; i < 200; ++i) {
    const double v = std::floor(std::pow(std::pow(a, std::floor(i / b)) * std::pow(c, std::floor(i / d)), f) + e);
    if (v >= static_cast<double>(n)) break;
    const auto g = static_cast<std::size_t>(v);
    if (g > out.back()) out.push_back(g);
  }
  return out;
}

bool is_smooth(std::size_t m, std::size_t p, std::size_t q) {
  while (m % p == 0) m /= p;
  while (m % q == 0) m /= q;
  return m == 1;
}

}  // namespace

TEST_SUITE("gap_sequences") {

TEST_CASE("published sequence prefixes") {
  CHECK(prefix(tokuda(1000000), 8) == std::vector<std::size_t>{1, 4, 9, 20, 46, 103, 233, 525});
  CHECK(to_vec(template_a(published::kOursA128Comp, 200)) == std::vector<std::size_t>{1, 4, 9, 24, 85, 150});
  CHECK(prefix(template_a(published::kOursA1000Comp, 1000000), 7) ==
        std::vector<std::size_t>{1, 4, 10, 23, 57, 153, 400});
  CHECK(prefix(template_a(published::kOursA1000Time, 1000000), 8) ==
        std::vector<std::size_t>{1, 3, 7, 16, 33, 85, 179, 472});
  CHECK(prefix(template_b(published::kOursB10000Comp, 1000000), 7) ==
        std::vector<std::size_t>{1, 4, 10, 27, 72, 187, 488});
}

TEST_CASE("template A matches direct evaluation") {
  for (const auto& p : {published::kOursA128Comp, published::kOursA1000Comp, published::kOursA1000Time}) {
    for (std::size_t n : {10u, 128u, 1000u, 100000u}) {
      CHECK(to_vec(template_a(p, n)) == template_a_oracle(p.a, p.b, p.c, p.d, p.e, p.f, n));
    }
  }
}

TEST_CASE("template A is symmetric in (a,b) and (c,d)") {
  const TemplateParamsA p{2.3, 1.4, 3.2, 2.3, 1, 0.9};
  const TemplateParamsA swapped{p.c, p.d, p.a, p.b, p.e, p.f};
  for (std::size_t n : {50u, 1000u, 100000u}) CHECK(template_a(p, n) == template_a(swapped, n));
}

TEST_CASE("template parameter and degeneracy errors") {
  CHECK_THROWS_AS(template_a({0, 1, 1, 1, 0, 1}, 100), Error);
  CHECK_THROWS_AS(template_b({1, 2, 0, 0, false}, 100), Error);
  try {
    template_b({50, 0.5, 1, 0, false}, 100);
    FAIL("expected a degenerate sequence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSequence);
  }
  // A constant template stalls and yields only the prepended 1.
  CHECK(to_vec(template_b({0, 2, 1, 1, false}, 100)) == std::vector<std::size_t>{1});
}

TEST_CASE("template B exponent floor") {
  const auto plain = template_b({1, 4, 2, 0, false}, 1000);
  const auto floored = template_b({1, 4, 2, 0, true}, 1000);
  CHECK(to_vec(plain) == std::vector<std::size_t>{1, 2, 4, 8, 16, 32, 64, 128, 256, 512});
  CHECK(to_vec(floored) == std::vector<std::size_t>{1, 4, 16, 64, 256});
  CHECK(floored.name().ends_with(",floor"));
}

TEST_CASE("tokuda against the real-valued recurrence") {
  const auto seq = tokuda(std::size_t{1} << 62);
  long double h = 1;
  for (std::size_t k = 0; k < 20; ++k) {
    CHECK(seq[k] == static_cast<std::size_t>(std::ceil(h - 1e-9L)));
    h = 2.25L * h + 1;
  }
  const auto gaps = to_vec(seq);
  const double ratio = static_cast<double>(gaps.back()) / static_cast<double>(gaps[gaps.size() - 2]);
  CHECK(ratio == doctest::Approx(2.25).epsilon(1e-6));
}

TEST_CASE("pratt equals brute-force smooth numbers") {
  for (auto [p, q] : {std::pair{2u, 3u}, std::pair{2u, 5u}, std::pair{3u, 4u}}) {
    const std::size_t n = 100000;
    std::vector<std::size_t> oracle;
    for (std::size_t m = 1; m < n; ++m) {
      if (is_smooth(m, p, q)) oracle.push_back(m);
    }
    CHECK(to_vec(pratt({p, q}, n)) == oracle);
    CHECK(pratt({p, q}, n) == pratt({q, p}, n));
  }
  CHECK(pratt_warning({2, 3}) == std::nullopt);
  CHECK(pratt_warning({4, 6}).has_value());
  CHECK_THROWS_AS(pratt({1, 3}, 100), Error);
}

TEST_CASE("ciura lists and extension") {
  CHECK(to_vec(ciura(CiuraVariant::C128, 50)) == std::vector<std::size_t>{1, 4, 9, 24});
  CHECK(to_vec(ciura(CiuraVariant::C1000, 1000)) ==
        std::vector<std::size_t>{1, 4, 10, 23, 57, 156, 409, 995});
  const auto ext = to_vec(ciura(CiuraVariant::CLarge, 100000));
  for (std::size_t k = 9; k < ext.size(); ++k) {
    CHECK(ext[k] == static_cast<std::size_t>(std::ceil(2.25 * static_cast<double>(ext[k - 1]))));
  }
  CHECK(ext.back() < 100000);
  CHECK(ciura(CiuraVariant::C1000, 5000, ExtensionRounding::Ceil)[8] == 2239);
  CHECK(ciura(CiuraVariant::C1000, 5000, ExtensionRounding::Round)[8] == 2239);
  CHECK(ciura(CiuraVariant::C1000, 5000, ExtensionRounding::Floor)[8] == 2238);
}

TEST_CASE("gap sequence validation") {
  CHECK_THROWS_AS(GapSequence("x", {}), Error);
  CHECK_THROWS_AS(GapSequence("x", {2, 3}), Error);
  CHECK_THROWS_AS(GapSequence("x", {1, 4, 4}), Error);
  const GapSequence s("x", {1, 4, 9, 20});
  CHECK(s.valid_for(21));
  CHECK_FALSE(s.valid_for(20));
  CHECK(to_vec(s.truncated(10)) == std::vector<std::size_t>{1, 4, 9});
  CHECK(canonical_key(s) == "1,4,9,20");
}

TEST_CASE("catalog resolution") {
  for (const auto& name : catalog_names()) CHECK_NOTHROW(resolve_sorter(name, 1000));
  CHECK(resolve_sorter("pratt-25-chain", 100).final_pass == FinalPass::Chain25);
  CHECK(resolve_sorter("pratt-34-chain", 100).final_pass == FinalPass::Chain34);
  CHECK(resolve_sequence("template-a:<3.5789,2.6316,3.8158,2.1579,3,0.7632>", 1000) ==
        template_a(published::kOursA1000Comp, 1000));
  CHECK(resolve_sequence("template-b:1,4,2,0,floor", 1000) == template_b({1, 4, 2, 0, true}, 1000));
  CHECK(resolve_sequence("pratt:2,3", 1000) == pratt({2, 3}, 1000));
  CHECK(resolve_sequence("ciura-long", 1000) == resolve_sequence("ciura-large", 1000));
  try {
    resolve_sorter("shell-1959", 100);
    FAIL("expected UnknownSequence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSequence);
  }
  CHECK_THROWS_AS(resolve_sorter("template-a:1,2,3", 100), Error);
}

}
