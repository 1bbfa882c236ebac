#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace shellgap {

/// A named, strictly increasing list of gaps whose first element is 1.
///
/// The invariants are checked on construction; every instance in the program
/// is therefore usable as a Shellsort schedule. Passes run from the back of
/// the list to the front.
class GapSequence {
 public:
  GapSequence(std::string name, std::vector<std::size_t> gaps);

  const std::string& name() const noexcept { return name_; }
  std::span<const std::size_t> gaps() const noexcept { return gaps_; }
  std::size_t size() const noexcept { return gaps_.size(); }
  std::size_t max_gap() const noexcept { return gaps_.back(); }
  std::size_t operator[](std::size_t i) const { return gaps_[i]; }

  /// True when every gap is below n (a sequence of just [1] is valid for any
  /// n >= 1).
  bool valid_for(std::size_t n) const noexcept;

  /// Drops gaps >= n; gap 1 is always kept.
  GapSequence truncated(std::size_t n) const;

  GapSequence renamed(std::string name) const;

  friend bool operator==(const GapSequence& a, const GapSequence& b) {
    return a.gaps_ == b.gaps_;
  }

 private:
  std::string name_;
  std::vector<std::size_t> gaps_;
};

/// Throws Error(InvalidSequence) unless gaps is non-empty, starts at 1 and is
/// strictly increasing.
void validate_gaps(std::span<const std::size_t> gaps);

}  // namespace shellgap
