#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classext/error.hpp"
#include "classext/integer.hpp"
#include "classext/quad_ideal.hpp"
#include "classext/quadratic.hpp"

namespace classext {

/// Binary quadratic form a*x^2 + b*x*y + c*y^2.
struct BQF {
  Int a, b, c;

  Int disc() const { return b * b - 4 * a * c; }
  bool primitive() const { return gcd_int(gcd_int(a, b), c) == 1; }
  bool is_reduced() const {
    if (!(abs_int(b) <= a && a <= c)) return false;
    if ((abs_int(b) == a || a == c) && b < 0) return false;
    return true;
  }
  BQF inverse() const { return {a, -b, c}; }
  Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }

  bool operator==(const BQF& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator!=(const BQF& o) const { return !(*this == o); }
  bool operator<(const BQF& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }

  std::string str() const { return "(" + to_dec(a) + "," + to_dec(b) + "," + to_dec(c) + ")"; }
};

inline void check_form(const BQF& f) {
  if (f.a <= 0 || f.disc() >= 0) throw Error(Errc::invalid_discriminant, "form " + f.str() + " is not positive definite");
}

/// One reduction move: 'T' with exponent k is (x,y) -> (x + k*y, y); 'S' is (x,y) -> (-y, x).
struct FormMove {
  char kind;
  Int k;
};

struct ReduceResult {
  BQF form;
  std::vector<FormMove> word;
  /// gamma = [[p, q], [r, s]] with reduced(x, y) = f(p*x + q*y, r*x + s*y).
  Int p = 1, q = 0, r = 0, s = 1;
};

inline ReduceResult reduce_tracked(const BQF& f0) {
  check_form(f0);
  ReduceResult R{f0, {}};
  BQF& f = R.form;
  auto apply_T = [&](const Int& k) {
    if (k == 0) return;
    Int nc = f.a * k * k + f.b * k + f.c;
    f.b += 2 * f.a * k;
    f.c = nc;
    R.q += k * R.p;
    R.s += k * R.r;
    R.word.push_back({'T', k});
  };
  auto apply_S = [&]() {
    std::swap(f.a, f.c);
    f.b = -f.b;
    Int p = R.p, r = R.r;
    R.p = R.q;
    R.r = R.s;
    R.q = -p;
    R.s = -r;
    R.word.push_back({'S', 0});
  };
  for (;;) {
    if (f.b <= -f.a || f.b > f.a) apply_T(floor_div(f.a - f.b, 2 * f.a));
    if (f.a > f.c) {
      apply_S();
      continue;
    }
    if (f.a == f.c && f.b < 0) apply_S();
    break;
  }
  return R;
}

inline BQF reduce(const BQF& f) { return reduce_tracked(f).form; }

/// Apply a reduction word to the basis pair (v1, v2) representing f(x,y) = N(x*v1 + y*v2)/N.
template <class T>
std::pair<T, T> apply_word(const std::vector<FormMove>& word, T v1, T v2) {
  for (const auto& m : word) {
    if (m.kind == 'T') {
      v2 = v2 + v1 * m.k;
    } else {
      T t = v1;
      v1 = v2;
      v2 = -t;
    }
  }
  return {v1, v2};
}

inline BQF principal_form(const Int& D) {
  Int b = mod_floor(D, 2);
  return {1, b, (b * b - D) / 4};
}

inline BQF compose(const BQF& f, const BQF& g) {
  check_form(f);
  check_form(g);
  if (f.disc() != g.disc()) throw Error(Errc::discriminant_mismatch, f.str() + " and " + g.str());
  const Int D = f.disc();
  BQF f1 = f, f2 = g;
  if (f1.a > f2.a) std::swap(f1, f2);
  Int s = (f1.b + f2.b) / 2;
  Int n = f2.b - s;
  Int y1, d;
  if (f2.a % f1.a == 0) {
    y1 = 0;
    d = f1.a;
  } else {
    auto [g1, u, v] = xgcd(f2.a, f1.a);
    d = g1;
    y1 = u;
  }
  Int x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    auto [g2, u, v] = xgcd(s, d);
    d1 = g2;
    x2 = u;
    y2 = -v;
  }
  Int v1 = f1.a / d1, v2 = f2.a / d1;
  Int r = mod_floor(y1 * y2 * n - x2 * f2.c, v1);
  Int b3 = f2.b + 2 * v2 * r;
  Int a3 = v1 * v2;
  Int c3 = (b3 * b3 - D) / (4 * a3);
  return reduce({a3, b3, c3});
}

inline BQF form_power(const BQF& f, long long n) {
  Int D = f.disc();
  BQF base = n < 0 ? f.inverse() : f;
  unsigned long long e = static_cast<unsigned long long>(n < 0 ? -n : n);
  BQF acc = principal_form(D);
  base = reduce(base);
  while (e) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

/// All primitive reduced forms of discriminant D, sorted.
inline std::vector<BQF> reduced_forms(const Int& D) {
  make_quad_order(D);
  std::vector<BQF> out;
  const Int absD = -D;
  for (Int a = 1; 3 * a * a <= absD; ++a) {
    for (Int b = -a + 1; b <= a; ++b) {
      if (mod_floor(b - D, 2) != 0) continue;
      Int num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Int c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (gcd_int(gcd_int(a, b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t class_number(const Int& D) { return reduced_forms(D).size(); }

inline QuadElt sqrt_D(const QuadOrderDesc& o) { return QuadElt(o.d, 0, o.D0 == o.d ? o.f : Int(2 * o.f), 1); }

/// (a, b, c) -> aZ + ((-b + sqrt D)/2)Z as an ideal of O_D inside the field.
inline QuadSubmodule form_to_ideal(const BQF& f, const QuadOrderDesc& o) {
  if (f.disc() != o.D) throw Error(Errc::discriminant_mismatch, "form " + f.str() + " does not have discriminant " + to_dec(o.D));
  QuadExt e = QuadExt::make(o, std::nullopt);
  QuadElt w2 = (QuadElt::integer(o.d, -f.b) + sqrt_D(o)) * QuadElt(o.d, 1, 0, 2);
  return submodule_from_lattice(e, QuadLattice::span(e.K, {QuadElt::integer(o.d, f.a), w2}));
}

struct OrientedBasis {
  QuadElt w1, w2;
};

/// Basis (w1, w2) of a rank-2 lattice with conj(w1)*w2 - w1*conj(w2) a positive multiple of sqrt(d).
inline OrientedBasis oriented_basis(const QuadLattice& L) {
  auto bs = L.basis();
  if (bs.size() != 2) throw Error(Errc::zero_module, "lattice of rank < 2");
  const QuadElt& x = bs[0];
  const QuadElt& y = bs[1];
  Int orient = x.u() * y.v() - x.v() * y.u();
  if (orient < 0) return {x, -y};
  return {x, y};
}

/// The form N(x*w1 - y*w2)/N(L) attached to an invertible ideal of O_{fA}.
inline BQF ideal_to_form(const QuadSubmodule& L) {
  if (L.is_zero()) throw Error(Errc::zero_module, "form of the zero module");
  OrientedBasis ob = oriented_basis(L.lat);
  Rat N = norm_rel_A(L);
  Rat a = ob.w1.norm() / N;
  Rat b = -(ob.w1 * ob.w2.conj()).trace() / N;
  Rat c = ob.w2.norm() / N;
  if (!is_integral(a) || !is_integral(b) || !is_integral(c))
    throw Error(Errc::not_invertible, "lattice " + L.str() + " does not give an integral form");
  BQF f{rat_num(a), rat_num(b), rat_num(c)};
  if (f.disc() != L.ext.D_A() || !f.primitive())
    throw Error(Errc::not_invertible, "lattice " + L.str() + " is not an invertible ideal of O_" + to_dec(L.ext.D_A()));
  return f;
}

/// Reduced form of an invertible ideal together with, when the class is
/// trivial, a generator g with A*g = L.
struct FormPrincipality {
  BQF reduced;
  std::optional<QuadElt> generator;
};

inline FormPrincipality principality_by_forms(const QuadSubmodule& L) {
  BQF f = ideal_to_form(L);
  ReduceResult R = reduce_tracked(f);
  FormPrincipality out{R.form, std::nullopt};
  if (R.form != principal_form(f.disc())) return out;
  OrientedBasis ob = oriented_basis(L.lat);
  auto [v1, v2] = apply_word(R.word, ob.w1, -ob.w2);
  QuadSubmodule P = principal(L.ext, v1);
  if (P.lat != L.lat) throw Error(Errc::invalid_structure, "generator recovered from reduction does not generate " + L.str());
  out.generator = v1;
  return out;
}

/// Independent principality test for an invertible ideal of O_{fA}: search L
/// for an element whose norm equals N(L), using the definite norm form.
inline std::optional<QuadElt> principal_by_norm_search(const QuadSubmodule& L) {
  if (L.is_zero()) throw Error(Errc::zero_module, "principality of the zero module");
  auto bs = L.lat.basis();
  Rat N = norm_rel_A(L);
  Rat al = bs[0].norm(), be = (bs[0] * bs[1].conj()).trace(), ga = bs[1].norm();
  Rat disc = be * be - 4 * al * ga;
  Rat nd = -disc;
  // |n| <= sqrt(4*al*N/(-disc)), |m| <= sqrt(4*ga*N/(-disc))
  auto bound = [&](const Rat& coef) {
    Rat t = 4 * coef * N / nd;
    Int fl = rat_num(t) / rat_den(t);
    return isqrt(fl) + 1;
  };
  Int bm = bound(ga), bn = bound(al);
  QuadExt e{L.ext.K, L.ext.fA, 0};
  for (Int m = -bm; m <= bm; ++m)
    for (Int n = -bn; n <= bn; ++n) {
      Rat q = al * Rat(m * m) + be * Rat(m * n) + ga * Rat(n * n);
      if (q != N) continue;
      QuadElt x = bs[0].scaled(m) + bs[1].scaled(n);
      if (principal(e, x).lat == L.lat) return x;
    }
  return std::nullopt;
}

}  // namespace classext
