#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace shellgap::detail {

/// Shortest decimal form that reads back to the same double.
inline std::string shortest(double v) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace shellgap::detail
