#include "shellgap/gap_sequences.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "format.hpp"
#include "shellgap/error.hpp"

namespace shellgap {
namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::size_t kMaxTemplateTerms = 1u << 16;
// A template that has not produced a new term for this many consecutive
// indices is treated as having stopped growing.
constexpr std::size_t kStallLimit = 256;

void require_size(std::size_t n, const char* what) {
  if (n < 2) {
    throw Error(ErrorCode::InvalidParameters,
                std::string(what) + ": array size must be at least 2");
  }
}

template <class ValueAt>
std::vector<std::size_t> collect_template_terms(std::size_t n, ValueAt value_at) {
  std::vector<std::size_t> gaps{1};
  std::size_t last_change = 0;
  const auto limit = static_cast<double>(n);
  for (std::size_t i = 0; i < kMaxTemplateTerms; ++i) {
    const double v = std::floor(value_at(static_cast<double>(i)));
    if (std::isnan(v)) {
      throw Error(ErrorCode::DegenerateSequence, "template produced NaN at index " +
                                                     std::to_string(i));
    }
    if (v >= limit) break;
    if (v < 1.0) {
      throw Error(ErrorCode::DegenerateSequence,
                  "template produced a gap below 1 at index " + std::to_string(i));
    }
    const auto g = static_cast<std::size_t>(v);
    if (g < gaps.back()) {
      throw Error(ErrorCode::DegenerateSequence,
                  "template decreases at index " + std::to_string(i) + " (" +
                      std::to_string(gaps.back()) + " -> " + std::to_string(g) + ")");
    }
    if (g > gaps.back()) {
      gaps.push_back(g);
      last_change = i;
    } else if (i - last_change > kStallLimit) {
      break;
    }
  }
  return gaps;
}

std::string format_params(std::initializer_list<double> values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ',';
    out += detail::shortest(v);
  }
  return out;
}

}  // namespace

GapSequence tokuda(std::size_t n) {
  require_size(n, "tokuda");
  // ceil((9^k - 4^k) / (5 * 4^(k-1))) in exact integer arithmetic.
  std::vector<std::size_t> gaps;
  u128 nine = 9;
  u128 four = 4;
  for (int k = 1; k <= 40; ++k) {
    const u128 num = nine - four;
    const u128 den = 5 * (four / 4);
    const u128 term = (num + den - 1) / den;
    if (term >= n) break;
    gaps.push_back(static_cast<std::size_t>(term));
    nine *= 9;
    four *= 4;
  }
  return GapSequence("tokuda", std::move(gaps));
}

GapSequence pratt(PrattBasePair bases, std::size_t n) {
  require_size(n, "pratt");
  if (bases.p < 2 || bases.q < 2) {
    throw Error(ErrorCode::InvalidParameters, "pratt bases must both be at least 2");
  }
  std::set<std::size_t> products;
  for (std::size_t x = 1; x < n; x *= bases.p) {
    for (std::size_t y = x; y < n; y *= bases.q) products.insert(y);
  }
  return GapSequence("pratt-" + std::to_string(bases.p) + std::to_string(bases.q),
                     std::vector<std::size_t>(products.begin(), products.end()));
}

std::optional<std::string> pratt_warning(PrattBasePair bases) {
  if (std::gcd(bases.p, bases.q) == 1) return std::nullopt;
  return "pratt bases " + std::to_string(bases.p) + " and " + std::to_string(bases.q) +
         " are not coprime; the remaining-inversion bounds do not apply";
}

GapSequence ciura(CiuraVariant variant, std::size_t n, ExtensionRounding rounding) {
  std::vector<std::size_t> fixed;
  std::string name;
  switch (variant) {
    case CiuraVariant::C128:
      fixed = {1, 4, 9, 24, 85, 126};
      name = "ciura-128";
      break;
    case CiuraVariant::C1000:
      fixed = {1, 4, 10, 23, 57, 156, 409, 995};
      name = "ciura-1000";
      break;
    case CiuraVariant::CLarge:
      fixed = {1, 4, 10, 23, 57, 132, 301, 701, 1750};
      name = "ciura-large";
      break;
  }
  std::vector<std::size_t> gaps;
  for (std::size_t g : fixed) {
    if (g == 1 || g < n) gaps.push_back(g);
  }
  if (gaps.size() == fixed.size()) {
    for (;;) {
      const std::size_t nine_x = 9 * gaps.back();
      std::size_t next = 0;
      switch (rounding) {
        case ExtensionRounding::Ceil: next = (nine_x + 3) / 4; break;
        case ExtensionRounding::Round: next = (2 * nine_x + 4) / 8; break;
        case ExtensionRounding::Floor: next = nine_x / 4; break;
      }
      if (next >= n) break;
      gaps.push_back(next);
    }
  }
  return GapSequence(std::move(name), std::move(gaps));
}

GapSequence template_a(const TemplateParamsA& p, std::size_t n) {
  require_size(n, "template-a");
  if (!(p.a > 0) || !(p.b > 0) || !(p.c > 0) || !(p.d > 0) || !(p.f > 0) || !(p.e >= 0)) {
    throw Error(ErrorCode::InvalidParameters,
                "template-a requires a, b, c, d, f > 0 and e >= 0");
  }
  auto gaps = collect_template_terms(n, [&](double i) {
    const double base = std::pow(p.a, std::floor(i / p.b)) * std::pow(p.c, std::floor(i / p.d));
    return std::pow(base, p.f) + p.e;
  });
  return GapSequence("template-a:" + format_params({p.a, p.b, p.c, p.d, p.e, p.f}),
                     std::move(gaps));
}

GapSequence template_b(const TemplateParamsB& p, std::size_t n) {
  require_size(n, "template-b");
  if (!(p.c > 0)) throw Error(ErrorCode::InvalidParameters, "template-b requires c > 0");
  if (!(p.a >= 0) || !(p.b >= 0) || !(p.d >= 0)) {
    throw Error(ErrorCode::InvalidParameters, "template-b requires a, b, d >= 0");
  }
  auto gaps = collect_template_terms(n, [&](double i) {
    const double exponent = p.exponent_floor ? std::floor(i / p.c) : i / p.c;
    return p.a * std::pow(p.b, exponent) + p.d;
  });
  std::string name = "template-b:" + format_params({p.a, p.b, p.c, p.d});
  if (p.exponent_floor) name += ",floor";
  return GapSequence(std::move(name), std::move(gaps));
}

GapSequence generate(const TemplateParams& params, std::size_t n) {
  return std::visit(
      [n](const auto& p) -> GapSequence {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, TemplateParamsA>) {
          return template_a(p, n);
        } else {
          return template_b(p, n);
        }
      },
      params);
}

std::string canonical_key(const GapSequence& gaps) {
  std::string key;
  for (std::size_t g : gaps.gaps()) {
    if (!key.empty()) key += ',';
    key += std::to_string(g);
  }
  return key;
}

}  // namespace shellgap
