#include "shellgap/random.hpp"

namespace shellgap {
namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) return 0;
  u128 m = static_cast<u128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<u128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

void fisher_yates_into(std::vector<Key>& out, std::size_t n, Rng& rng) {
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Key>(i + 1);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(out[i - 1], out[j]);
  }
}

std::vector<Key> fisher_yates(std::size_t n, Rng& rng) {
  std::vector<Key> out;
  fisher_yates_into(out, n, rng);
  return out;
}

}  // namespace shellgap
