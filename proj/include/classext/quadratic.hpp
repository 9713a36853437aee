#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "classext/error.hpp"
#include "classext/integer.hpp"

namespace classext {

using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rat& r) { return rat_den(r) == 1; }

inline std::string rat_str(const Rat& r) {
  return rat_den(r) == 1 ? to_dec(rat_num(r)) : to_dec(rat_num(r)) + "/" + to_dec(rat_den(r));
}

/// Squarefree part of a nonzero integer, keeping the sign.
inline Int squarefree_part(const Int& n) {
  if (n == 0) throw Error(Errc::invalid_discriminant, "squarefree part of zero");
  Int m = abs_int(n), out = 1;
  for (Int p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  out *= m;
  return n < 0 ? Int(-out) : out;
}

/// An imaginary quadratic discriminant D = f^2 * D0 with its derived data.
struct QuadOrderDesc {
  Int D;
  Int D0;
  Int f;
  Int d;  // squarefree radicand of the field, D0 = d or 4d

  bool maximal() const { return f == 1; }
  bool operator==(const QuadOrderDesc& o) const { return D == o.D; }
};

inline bool is_valid_discriminant(const Int& D) {
  if (D >= 0) return false;
  Int r = mod_floor(D, 4);
  return r == 0 || r == 1;
}

inline QuadOrderDesc make_quad_order(const Int& D) {
  if (D > 0 && is_square(D)) throw Error(Errc::invalid_discriminant, to_dec(D) + " is a perfect square");
  if (D > 0) throw Error(Errc::invalid_discriminant, "real quadratic discriminant " + to_dec(D) + " is not supported");
  if (!is_valid_discriminant(D)) throw Error(Errc::invalid_discriminant, to_dec(D) + " is not 0 or 1 mod 4, or is zero");
  QuadOrderDesc q;
  q.D = D;
  q.d = squarefree_part(D);
  q.D0 = mod_floor(q.d, 4) == 1 ? q.d : Int(4 * q.d);
  Int f2 = D / q.D0;
  q.f = isqrt(f2);
  if (q.f * q.f != f2 || q.f * q.f * q.D0 != D) throw Error(Errc::invalid_discriminant, "conductor computation failed");
  return q;
}

/// The field Q(sqrt d) for squarefree d < 0, with the maximal-order basis {1, w0},
/// w0 = (D0 + sqrt D0)/2.
struct QuadField {
  Int d;
  Int D0;

  static QuadField of(const QuadOrderDesc& o) { return QuadField{o.d, o.D0}; }
  bool operator==(const QuadField& o) const { return d == o.d; }
  bool operator!=(const QuadField& o) const { return d != o.d; }
  bool d_is_1_mod_4() const { return D0 == d; }
};

/// Element (u + v*sqrt(d)) / w of Q(sqrt d), stored in lowest terms with w > 0.
class QuadElt {
 public:
  QuadElt() = default;
  QuadElt(Int d, Int u, Int v = 0, Int w = 1) : d_(std::move(d)), u_(std::move(u)), v_(std::move(v)), w_(std::move(w)) {
    normalize();
  }

  static QuadElt integer(const Int& d, const Int& n) { return QuadElt(d, n, 0, 1); }

  const Int& d() const { return d_; }
  const Int& u() const { return u_; }
  const Int& v() const { return v_; }
  const Int& w() const { return w_; }

  bool is_zero() const { return u_ == 0 && v_ == 0; }

  QuadElt conj() const { return QuadElt(d_, u_, -v_, w_); }

  Rat norm() const { return Rat(u_ * u_ - d_ * v_ * v_, w_ * w_); }
  Rat trace() const { return Rat(2 * u_, w_); }
  Rat rational_part() const { return Rat(u_, w_); }
  Rat sqrt_part() const { return Rat(v_, w_); }

  QuadElt inverse() const {
    if (is_zero()) throw Error(Errc::malformed_input, "inverse of zero");
    return QuadElt(d_, w_ * u_, -w_ * v_, u_ * u_ - d_ * v_ * v_);
  }

  friend QuadElt operator+(const QuadElt& a, const QuadElt& b) {
    a.check(b);
    return QuadElt(a.d_, a.u_ * b.w_ + b.u_ * a.w_, a.v_ * b.w_ + b.v_ * a.w_, a.w_ * b.w_);
  }
  friend QuadElt operator-(const QuadElt& a, const QuadElt& b) {
    a.check(b);
    return QuadElt(a.d_, a.u_ * b.w_ - b.u_ * a.w_, a.v_ * b.w_ - b.v_ * a.w_, a.w_ * b.w_);
  }
  friend QuadElt operator*(const QuadElt& a, const QuadElt& b) {
    a.check(b);
    return QuadElt(a.d_, a.u_ * b.u_ + a.d_ * a.v_ * b.v_, a.u_ * b.v_ + a.v_ * b.u_, a.w_ * b.w_);
  }
  friend QuadElt operator*(const QuadElt& a, const Int& k) { return a.scaled(k); }
  friend QuadElt operator/(const QuadElt& a, const QuadElt& b) { return a * b.inverse(); }
  QuadElt operator-() const { return QuadElt(d_, -u_, -v_, w_); }
  QuadElt scaled(const Int& k) const { return QuadElt(d_, u_ * k, v_ * k, w_); }

  bool operator==(const QuadElt& o) const { return d_ == o.d_ && u_ == o.u_ && v_ == o.v_ && w_ == o.w_; }
  bool operator!=(const QuadElt& o) const { return !(*this == o); }

  std::string str() const {
    std::string s;
    bool paren = w_ != 1 && u_ != 0 && v_ != 0;
    if (paren) s += "(";
    if (u_ != 0 || v_ == 0) s += to_dec(u_);
    if (v_ != 0) {
      if (u_ != 0) s += v_ < 0 ? "-" : "+";
      else if (v_ < 0) s += "-";
      Int av = abs_int(v_);
      if (av != 1) s += to_dec(av) + "*";
      s += "sqrt(" + to_dec(d_) + ")";
    }
    if (paren) s += ")";
    if (w_ != 1) s += "/" + to_dec(w_);
    return s;
  }

 private:
  void check(const QuadElt& o) const {
    if (d_ != o.d_) throw Error(Errc::parent_mismatch, "elements of different quadratic fields");
  }

  void normalize() {
    if (w_ == 0) throw Error(Errc::malformed_input, "zero denominator");
    if (w_ < 0) {
      u_ = -u_;
      v_ = -v_;
      w_ = -w_;
    }
    Int g = gcd_int(gcd_int(u_, v_), w_);
    if (g > 1) {
      u_ /= g;
      v_ /= g;
      w_ /= g;
    }
  }

  Int d_ = -1;
  Int u_ = 0;
  Int v_ = 0;
  Int w_ = 1;
};

/// The maximal-order generator w0 = (D0 + sqrt D0)/2.
inline QuadElt omega0(const QuadField& K) {
  if (K.d_is_1_mod_4()) return QuadElt(K.d, K.d, 1, 2);
  return QuadElt(K.d, 2 * K.d, 1, 1);
}

/// The order generator w = (D + sqrt D)/2 of O_D.
inline QuadElt omega_of(const QuadOrderDesc& o) {
  // sqrt D = f * sqrt D0, and sqrt D0 is 2 sqrt d or sqrt d.
  Int s = o.D0 == o.d ? o.f : Int(2 * o.f);
  return QuadElt(o.d, o.D, s, 2);
}

/// Coordinates of x = (a + b*w0)/den, reduced to lowest terms.
struct W0Coords {
  Int a, b, den;
};

inline W0Coords to_w0(const QuadField& K, const QuadElt& x) {
  if (x.d() != K.d) throw Error(Errc::element_not_in_ambient, "element of a different field");
  W0Coords c;
  if (K.d_is_1_mod_4()) {
    c = {x.u() - K.d * x.v(), 2 * x.v(), x.w()};
  } else {
    c = {x.u() - 2 * K.d * x.v(), x.v(), x.w()};
  }
  Int g = gcd_int(gcd_int(c.a, c.b), c.den);
  if (g > 1) {
    c.a /= g;
    c.b /= g;
    c.den /= g;
  }
  return c;
}

inline QuadElt from_w0(const QuadField& K, const Int& a, const Int& b, const Int& den = 1) {
  if (K.d_is_1_mod_4()) return QuadElt(K.d, 2 * a + b * K.d, b, 2 * den);
  return QuadElt(K.d, a + 2 * K.d * b, b, den);
}

/// Membership in the order of conductor f (f = 0 stands for the whole field).
inline bool in_order(const QuadField& K, const Int& f, const QuadElt& x) {
  if (f == 0) return true;
  W0Coords c = to_w0(K, x);
  return c.den == 1 && c.b % f == 0;
}

/// Units of an imaginary quadratic order of conductor f.
inline std::vector<QuadElt> order_units(const QuadField& K, const Int& f) {
  std::vector<QuadElt> out{QuadElt::integer(K.d, 1), QuadElt::integer(K.d, -1)};
  if (f != 1) return out;
  if (K.d == -1) {
    out.push_back(QuadElt(K.d, 0, 1, 1));
    out.push_back(QuadElt(K.d, 0, -1, 1));
  } else if (K.d == -3) {
    for (int su : {1, -1})
      for (int sv : {1, -1}) out.push_back(QuadElt(K.d, su, sv, 2));
  }
  return out;
}

}  // namespace classext
