#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "shellgap/gap_sequence.hpp"

namespace shellgap {

/// What replaces the final gap-1 pass.
enum class FinalPass { Insertion, Chain25, Chain34 };

/// A resolved catalog entry: the gap schedule plus the final-pass strategy.
struct Sorter {
  std::string name;
  GapSequence gaps;
  FinalPass final_pass = FinalPass::Insertion;
};

/// Names accepted by resolve_sorter(), in report order.
const std::vector<std::string>& catalog_names();

/// Resolves a catalog name ("tokuda", "pratt-23", "ciura-large",
/// "ours-a128-comp", "pratt-25-chain", ...) or an ad-hoc template,
/// "template-a:<a,b,c,d,e,f>" / "template-b:<a,b,c,d>" (angle brackets
/// optional; template-b accepts a trailing ",floor") or "pratt:p,q", for
/// arrays of size n.
/// Throws Error(UnknownSequence) for anything else.
Sorter resolve_sorter(std::string_view name, std::size_t n);

/// resolve_sorter(name, n).gaps.
GapSequence resolve_sequence(std::string_view name, std::size_t n);

}  // namespace shellgap
