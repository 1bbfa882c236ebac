#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "shellgap/metrics_sort.hpp"

namespace shellgap {

/// The trial generator: the standard 64-bit Mersenne Twister, whose output
/// sequence is fixed by the C++ standard and therefore identical on every
/// platform.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer (Steele, Lea & Flood constants).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent seed for one (stream, index) cell of a base seed.
/// Used so that parallel and serial runs draw identical permutations.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
  return splitmix64(splitmix64(splitmix64(base) ^ stream) ^ index);
}

/// 64-bit FNV-1a, used to turn names and canonical keys into stream ids.
constexpr std::uint64_t stream_id(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Unbiased integer in [0, bound) by Lemire's multiply-and-reject method.
/// Platform-independent, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Fisher-Yates shuffle of 1..n.
std::vector<Key> fisher_yates(std::size_t n, Rng& rng);

/// fisher_yates into an existing buffer (resized to n).
void fisher_yates_into(std::vector<Key>& out, std::size_t n, Rng& rng);

}  // namespace shellgap
