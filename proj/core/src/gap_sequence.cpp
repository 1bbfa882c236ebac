#include "shellgap/gap_sequence.hpp"

#include <string>
#include <utility>

#include "shellgap/error.hpp"

namespace shellgap {

void validate_gaps(std::span<const std::size_t> gaps) {
  if (gaps.empty()) throw Error(ErrorCode::InvalidSequence, "gap sequence is empty");
  if (gaps.front() != 1) {
    throw Error(ErrorCode::InvalidSequence,
                "gap sequence must start with 1 (got " + std::to_string(gaps.front()) + ")");
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (gaps[i] <= gaps[i - 1]) {
      throw Error(ErrorCode::InvalidSequence,
                  "gap sequence is not strictly increasing at position " + std::to_string(i));
    }
  }
}

GapSequence::GapSequence(std::string name, std::vector<std::size_t> gaps)
    : name_(std::move(name)), gaps_(std::move(gaps)) {
  validate_gaps(gaps_);
}

bool GapSequence::valid_for(std::size_t n) const noexcept {
  return gaps_.size() == 1 || gaps_.back() < n;
}

GapSequence GapSequence::truncated(std::size_t n) const {
  std::vector<std::size_t> kept;
  for (std::size_t g : gaps_) {
    if (g == 1 || g < n) kept.push_back(g);
  }
  return GapSequence(name_, std::move(kept));
}

GapSequence GapSequence::renamed(std::string name) const {
  return GapSequence(std::move(name), gaps_);
}

}  // namespace shellgap
