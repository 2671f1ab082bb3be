#include "apportion/rational.hpp"

#include <algorithm>

namespace apportion {
namespace {

std::strong_ordering flip_if(std::strong_ordering o, bool flip) {
  if (!flip || o == std::strong_ordering::equal) return o;
  return o == std::strong_ordering::less ? std::strong_ordering::greater
                                         : std::strong_ordering::less;
}

// a/b vs c/d by continued-fraction expansion; b, d > 0.
std::strong_ordering compare_euclid(u128 a, u128 b, u128 c, u128 d) {
  bool flip = false;
  for (;;) {
    const u128 qa = a / b;
    const u128 qc = c / d;
    if (qa != qc) {
      return flip_if(qa < qc ? std::strong_ordering::less : std::strong_ordering::greater, flip);
    }
    const u128 ra = a % b;
    const u128 rc = c % d;
    if (ra == 0 && rc == 0) return std::strong_ordering::equal;
    if (ra == 0) return flip_if(std::strong_ordering::less, flip);
    if (rc == 0) return flip_if(std::strong_ordering::greater, flip);
    // ra/b vs rc/d  <=>  d/rc vs b/ra
    a = b;
    b = ra;
    c = d;
    d = rc;
    flip = !flip;
  }
}

}  // namespace

namespace detail {

std::strong_ordering compare_wide(const Ratio& a, const Ratio& b) noexcept {
  return compare_euclid(a.num, a.den, b.num, b.den);
}

}  // namespace detail

long double to_long_double(const Ratio& r) noexcept {
  return static_cast<long double>(r.num) / static_cast<long double>(r.den);
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  u128 mag = negative ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_fixed(i128 num, i128 den, int places) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const bool negative = num < 0;
  const u128 mag = negative ? static_cast<u128>(-num) : static_cast<u128>(num);
  u128 scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const u128 d = static_cast<u128>(den);
  const u128 rounded = (2 * mag * scale + d) / (2 * d);
  std::string out = to_string(static_cast<i128>(rounded / scale));
  if (places > 0) {
    std::string frac = to_string(static_cast<i128>(rounded % scale));
    out += '.';
    out.append(static_cast<std::size_t>(places) - frac.size(), '0');
    out += frac;
  }
  if (negative && rounded != 0) out.insert(out.begin(), '-');
  return out;
}

}  // namespace apportion
