#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace fosf {

// Membership and subsumption degrees. Only min, max and comparisons are ever
// applied, so every computed degree is bit-identical to some input degree,
// 0 or 1, and equality tests need no tolerance.
using Degree = double;

inline constexpr Degree kZero = 0.0;
inline constexpr Degree kOne = 1.0;

// Shortest round-trip decimal form ("0.5", "1", "0").
inline std::string format_degree(Degree d) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  if (ec != std::errc{}) return std::to_string(d);
  return std::string(buf, end);
}

inline std::optional<Degree> parse_degree(std::string_view text) {
  Degree d = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return d;
}

}  // namespace fosf
