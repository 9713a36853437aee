#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <tuple>
#include <vector>

#include "classext/error.hpp"

namespace classext {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs_int(a / gcd_int(a, b) * b);
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
inline std::tuple<Int, Int, Int> xgcd(const Int& a, const Int& b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

/// Floor division for b != 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

/// Remainder in [0, |m|) for m != 0; identity for m == 0.
inline Int mod_floor(const Int& a, const Int& m) {
  if (m == 0) return a;
  Int mm = abs_int(m);
  Int r = a % mm;
  if (r < 0) r += mm;
  return r;
}

inline std::string to_dec(const Int& a) { return a.str(); }

inline Int parse_int(const std::string& s) {
  if (s.empty()) throw Error(Errc::malformed_input, "empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw Error(Errc::malformed_input, "bad integer literal '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw Error(Errc::malformed_input, "bad integer literal '" + s + "'");
  return Int(s);
}

/// Integer square root (floor) for a >= 0.
inline Int isqrt(const Int& a) {
  if (a < 0) throw Error(Errc::malformed_input, "isqrt of negative");
  return boost::multiprecision::sqrt(a);
}

inline bool is_square(const Int& a) {
  if (a < 0) return false;
  Int r = isqrt(a);
  return r * r == a;
}

inline long long to_ll(const Int& a) { return a.convert_to<long long>(); }

}  // namespace classext
