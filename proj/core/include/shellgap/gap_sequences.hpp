#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "shellgap/gap_sequence.hpp"

namespace shellgap {

/// Parameters of the floored-exponent template
///   k(i) = floor((a^floor(i/b) * c^floor(i/d))^f + e).
struct TemplateParamsA {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double d = 1.0;
  double e = 0.0;  // integer offset
  double f = 1.0;

  friend bool operator==(const TemplateParamsA&, const TemplateParamsA&) = default;
};

/// Parameters of the geometric template
///   k(i) = floor(a * b^(i/c) + d)
/// With `exponent_floor` the exponent is floor(i/c) instead of i/c.
struct TemplateParamsB {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double d = 0.0;  // integer offset
  bool exponent_floor = false;

  friend bool operator==(const TemplateParamsB&, const TemplateParamsB&) = default;
};

using TemplateParams = std::variant<TemplateParamsA, TemplateParamsB>;

struct PrattBasePair {
  unsigned p = 2;
  unsigned q = 3;
};

enum class CiuraVariant { C128, C1000, CLarge };

/// Rounding applied to 2.25 * previous term when extending a Ciura list.
enum class ExtensionRounding { Ceil, Round, Floor };

/// ceil(((9/4)^k - 1) / (9/4 - 1)) for k = 1, 2, ... while below n.
/// Throws Error(InvalidParameters) for n < 2.
GapSequence tokuda(std::size_t n);

/// Ordered { p^x * q^y } below n. Non-coprime bases still generate a
/// sequence; see pratt_warning().
GapSequence pratt(PrattBasePair bases, std::size_t n);

/// A human-readable warning when the bases share a factor (the semigroup
/// complement is then infinite), otherwise nullopt.
std::optional<std::string> pratt_warning(PrattBasePair bases);

/// Fixed Ciura lists, truncated below n and extended geometrically by 2.25.
GapSequence ciura(CiuraVariant variant, std::size_t n,
                  ExtensionRounding rounding = ExtensionRounding::Ceil);

/// Evaluates k(i) for i = 0, 1, ... until the value reaches n, collapses
/// plateaus, and prepends 1. Throws Error(DegenerateSequence) when a value
/// drops below its predecessor or below 1.
GapSequence template_a(const TemplateParamsA& params, std::size_t n);

/// As template_a for the geometric template. Throws Error(InvalidParameters)
/// for c <= 0.
GapSequence template_b(const TemplateParamsB& params, std::size_t n);

GapSequence generate(const TemplateParams& params, std::size_t n);

/// Decimal gaps joined by ','. Equal iff the gap lists are equal.
std::string canonical_key(const GapSequence& gaps);

/// Published parameter sets.
namespace published {
inline constexpr TemplateParamsA kOursA128Comp{2.6321, 1.6841, 2.1570, 0.7360, 3, 0.7630};
inline constexpr TemplateParamsA kOursA1000Comp{3.5789, 2.6316, 3.8158, 2.1579, 3, 0.7632};
inline constexpr TemplateParamsA kOursA1000Time{2.75, 2.75, 3.7142, 2.4286, 2, 0.7429};
inline constexpr TemplateParamsB kOursB10000Comp{4.0816, 8.5714, 2.2449, 0, false};
}  // namespace published

}  // namespace shellgap
