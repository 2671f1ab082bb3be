#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace apportion {

__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

/// Non-negative exact fraction num/den with den > 0. Not normalised; equality
/// and ordering compare values, never representations.
struct Ratio {
  u128 num = 0;
  u128 den = 1;
};

/// Exact three-way comparison of a.num/a.den against b.num/b.den.
/// Cross-multiplies when every term fits in 64 bits and falls back to a
/// continued-fraction walk otherwise, so it never overflows.
namespace detail {
std::strong_ordering compare_wide(const Ratio& a, const Ratio& b) noexcept;
}

inline std::strong_ordering compare(const Ratio& a, const Ratio& b) noexcept {
  if (((a.num | a.den | b.num | b.den) >> 64) == 0) {
    const u128 lhs = static_cast<u128>(static_cast<std::uint64_t>(a.num)) *
                     static_cast<std::uint64_t>(b.den);
    const u128 rhs = static_cast<u128>(static_cast<std::uint64_t>(b.num)) *
                     static_cast<std::uint64_t>(a.den);
    return lhs <=> rhs;
  }
  return detail::compare_wide(a, b);
}

inline std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
  return compare(a, b);
}
inline bool operator==(const Ratio& a, const Ratio& b) noexcept {
  return compare(a, b) == std::strong_ordering::equal;
}

long double to_long_double(const Ratio& r) noexcept;

/// Decimal rendering of a signed 128-bit integer.
std::string to_string(i128 v);

/// Rounds num/den (den > 0) half-up to `places` decimals, e.g. 301/100 -> "3.01".
std::string to_fixed(i128 num, i128 den, int places);

}  // namespace apportion
