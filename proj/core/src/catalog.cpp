#include "shellgap/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "shellgap/error.hpp"
#include "shellgap/gap_sequences.hpp"

namespace shellgap {
namespace {

std::vector<double> parse_numbers(std::string_view text, std::string_view name,
                                  bool* floor_flag) {
  if (!text.empty() && text.front() == '<') text.remove_prefix(1);
  if (!text.empty() && text.back() == '>') text.remove_suffix(1);
  std::vector<double> values;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    if (floor_flag && item == "floor") {
      *floor_flag = true;
    } else {
      double v = 0.0;
      const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc{} || end != item.data() + item.size() || item.empty()) {
        throw Error(ErrorCode::UnknownSequence,
                    "bad parameter '" + std::string(item) + "' in " + std::string(name));
      }
      values.push_back(v);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

constexpr std::string_view kTemplateA = "template-a:";
constexpr std::string_view kTemplateB = "template-b:";
constexpr std::string_view kPratt = "pratt:";

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{
      "ours-a128-comp", "ours-a1000-comp", "ours-a1000-time", "ours-b10000-comp",
      "ciura-128",      "ciura-1000",      "ciura-large",     "tokuda",
      "pratt-25",       "pratt-25-chain",  "pratt-23",        "pratt-34",
      "pratt-34-chain"};
  return names;
}

Sorter resolve_sorter(std::string_view name, std::size_t n) {
  // Generators need n >= 2; a single element is sorted by the gap list {1}.
  const std::size_t gen_n = std::max<std::size_t>(n, 2);
  const std::string owned(name);
  auto plain = [&](GapSequence seq) { return Sorter{owned, std::move(seq), FinalPass::Insertion}; };

  if (name == "tokuda") return plain(tokuda(gen_n));
  if (name == "pratt-23") return plain(pratt({2, 3}, gen_n));
  if (name == "pratt-25") return plain(pratt({2, 5}, gen_n));
  if (name == "pratt-34") return plain(pratt({3, 4}, gen_n));
  if (name == "pratt-25-chain") return {owned, pratt({2, 5}, gen_n), FinalPass::Chain25};
  if (name == "pratt-34-chain") return {owned, pratt({3, 4}, gen_n), FinalPass::Chain34};
  if (name == "ciura-128") return plain(ciura(CiuraVariant::C128, gen_n));
  if (name == "ciura-1000") return plain(ciura(CiuraVariant::C1000, gen_n));
  if (name == "ciura-large" || name == "ciura-long") return plain(ciura(CiuraVariant::CLarge, gen_n));
  if (name == "ours-a128-comp") return plain(template_a(published::kOursA128Comp, gen_n));
  if (name == "ours-a1000-comp") return plain(template_a(published::kOursA1000Comp, gen_n));
  if (name == "ours-a1000-time") return plain(template_a(published::kOursA1000Time, gen_n));
  if (name == "ours-b10000-comp") return plain(template_b(published::kOursB10000Comp, gen_n));

  if (name.starts_with(kTemplateA)) {
    const auto v = parse_numbers(name.substr(kTemplateA.size()), name, nullptr);
    if (v.size() != 6) {
      throw Error(ErrorCode::UnknownSequence, "template-a needs six parameters: " + owned);
    }
    return plain(template_a({v[0], v[1], v[2], v[3], v[4], v[5]}, gen_n));
  }
  if (name.starts_with(kTemplateB)) {
    bool floor_flag = false;
    const auto v = parse_numbers(name.substr(kTemplateB.size()), name, &floor_flag);
    if (v.size() != 4) {
      throw Error(ErrorCode::UnknownSequence, "template-b needs four parameters: " + owned);
    }
    return plain(template_b({v[0], v[1], v[2], v[3], floor_flag}, gen_n));
  }
  if (name.starts_with(kPratt)) {
    const auto v = parse_numbers(name.substr(kPratt.size()), name, nullptr);
    if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]) ||
        v[0] < 0 || v[1] < 0 || v[0] > 1e6 || v[1] > 1e6) {
      throw Error(ErrorCode::UnknownSequence, "pratt needs two integer bases: " + owned);
    }
    return plain(pratt({static_cast<unsigned>(v[0]), static_cast<unsigned>(v[1])}, gen_n));
  }
  throw Error(ErrorCode::UnknownSequence, "unknown sequence '" + owned + "'");
}

GapSequence resolve_sequence(std::string_view name, std::size_t n) {
  return resolve_sorter(name, n).gaps;
}

}  // namespace shellgap
