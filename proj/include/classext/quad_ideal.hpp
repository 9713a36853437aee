#pragma once

#include <optional>
#include <string>
#include <vector>

#include "classext/error.hpp"
#include "classext/intlat.hpp"
#include "classext/quadratic.hpp"

namespace classext {

/// A Z-lattice in a quadratic field: den * L has Hermite basis `rows` in
/// coordinates over {1, w0}; den is minimal.
struct QuadLattice {
  QuadField K;
  Int den = 1;
  std::vector<IntVec> rows;

  bool is_zero() const { return rows.empty(); }
  int rank() const { return static_cast<int>(rows.size()); }

  std::vector<QuadElt> basis() const {
    std::vector<QuadElt> out;
    for (const auto& r : rows) out.push_back(from_w0(K, r[0], r[1], den));
    return out;
  }

  /// Covolume relative to the maximal order (rank 2 only).
  Rat covolume() const {
    if (rows.size() != 2) throw Error(Errc::zero_module, "covolume of a lattice of rank < 2");
    return Rat(rows[0][0] * rows[1][1], den * den);
  }

  bool operator==(const QuadLattice& o) const { return K == o.K && den == o.den && rows == o.rows; }
  bool operator!=(const QuadLattice& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = "den=" + to_dec(den) + " [";
    for (std::size_t i = 0; i < rows.size(); ++i)
      s += (i ? ", " : "") + std::string("(") + to_dec(rows[i][0]) + "," + to_dec(rows[i][1]) + ")";
    return s + "]";
  }

  static QuadLattice from_hnf(const QuadField& K, const Int& den, const std::vector<IntVec>& rows) {
    QuadLattice L{K, 1, {}};
    auto H = hnf_rows(rows, 2);
    Int g = den;
    for (const auto& r : H)
      for (const auto& x : r) g = gcd_int(g, x);
    if (H.empty()) return L;
    L.den = den / g;
    for (auto& r : H) {
      for (auto& x : r) x /= g;
      L.rows.push_back(r);
    }
    return L;
  }

  static QuadLattice span(const QuadField& K, const std::vector<QuadElt>& gens) {
    Int Q = 1;
    std::vector<W0Coords> cs;
    for (const auto& g : gens) {
      cs.push_back(to_w0(K, g));
      Q = lcm_int(Q, cs.back().den);
    }
    std::vector<IntVec> v;
    for (const auto& c : cs) v.push_back({c.a * (Q / c.den), c.b * (Q / c.den)});
    return from_hnf(K, Q, v);
  }

  /// The order Z + f*w0*Z.
  static QuadLattice order(const QuadField& K, const Int& f) { return QuadLattice{K, 1, {{1, 0}, {0, f}}}; }

  bool contains(const QuadElt& x) const {
    W0Coords c = to_w0(K, x);
    Int a = c.a * den, b = c.b * den;
    if (a % c.den != 0 || b % c.den != 0) return false;
    return hnf_contains(rows, {a / c.den, b / c.den});
  }

  bool contains(const QuadLattice& o) const {
    for (const auto& e : o.basis())
      if (!contains(e)) return false;
    return true;
  }
};

inline QuadLattice lat_sum(const QuadLattice& a, const QuadLattice& b) {
  auto g = a.basis();
  for (const auto& e : b.basis()) g.push_back(e);
  return QuadLattice::span(a.K, g);
}

inline QuadLattice lat_mul(const QuadLattice& a, const QuadLattice& b) {
  std::vector<QuadElt> g;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) g.push_back(x * y);
  return QuadLattice::span(a.K, g);
}

inline QuadLattice lat_scale(const QuadLattice& a, const QuadElt& x) {
  std::vector<QuadElt> g;
  for (const auto& y : a.basis()) g.push_back(x * y);
  return QuadLattice::span(a.K, g);
}

inline QuadLattice lat_intersect(const QuadLattice& a, const QuadLattice& b) {
  if (a.is_zero() || b.is_zero()) return QuadLattice{a.K, 1, {}};
  Int Q = lcm_int(a.den, b.den);
  std::vector<IntVec> stacked;
  for (const auto& r : a.rows) stacked.push_back({r[0] * (Q / a.den), r[1] * (Q / a.den)});
  for (const auto& r : b.rows) stacked.push_back({r[0] * (Q / b.den), r[1] * (Q / b.den)});
  IntMatrix M = IntMatrix::from_rows(stacked, 2);
  IntMatrix ker = kernel_mod(M, 0);
  std::vector<IntVec> v;
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    IntVec x(2);
    for (std::size_t k = 0; k < a.rows.size(); ++k)
      for (std::size_t j = 0; j < 2; ++j) x[j] += ker(i, k) * stacked[k][j];
    v.push_back(x);
  }
  return QuadLattice::from_hnf(a.K, Q, v);
}

/// The extension A = O_{fA} inside B, where B = O_{fB} (fB | fA) or the field (fB = 0).
struct QuadExt {
  QuadField K;
  Int fA = 1;
  Int fB = 0;

  static QuadExt make(const QuadOrderDesc& A, const std::optional<QuadOrderDesc>& B) {
    QuadExt e{QuadField::of(A), A.f, 0};
    if (B) {
      if (B->d != A.d) throw Error(Errc::unsupported_extension, "orders lie in different fields");
      if (A.f % B->f != 0) throw Error(Errc::unsupported_extension, "O_" + to_dec(A.D) + " is not contained in O_" + to_dec(B->D));
      e.fB = B->f;
    }
    return e;
  }

  bool b_is_field() const { return fB == 0; }
  Int D_A() const { return fA * fA * K.D0; }
  Int D_B() const { return fB * fB * K.D0; }

  QuadLattice A() const { return QuadLattice::order(K, fA); }
  QuadLattice B() const {
    if (b_is_field()) throw Error(Errc::unsupported_extension, "the field is not a lattice");
    return QuadLattice::order(K, fB);
  }
  QuadElt a_gen() const { return omega0(K).scaled(fA); }

  bool in_B(const QuadElt& x) const { return x.d() == K.d && in_order(K, fB, x); }

  bool operator==(const QuadExt& o) const { return K == o.K && fA == o.fA && fB == o.fB; }
  bool operator!=(const QuadExt& o) const { return !(*this == o); }

  std::string str() const {
    return "O_" + to_dec(D_A()) + " in " + (b_is_field() ? "Q(sqrt(" + to_dec(K.d) + "))" : "O_" + to_dec(D_B()));
  }
};

/// A finitely generated A-submodule of B in the quadratic family.
struct QuadSubmodule {
  QuadExt ext;
  QuadLattice lat;

  bool operator==(const QuadSubmodule& o) const { return ext == o.ext && lat == o.lat; }
  bool operator!=(const QuadSubmodule& o) const { return !(*this == o); }
  bool is_zero() const { return lat.is_zero(); }
  std::string str() const { return lat.str(); }
};

inline void check_parent(const QuadSubmodule& a, const QuadSubmodule& b) {
  if (a.ext != b.ext) throw Error(Errc::parent_mismatch, a.ext.str() + " vs " + b.ext.str());
}

inline bool is_A_stable(const QuadExt& e, const QuadLattice& L) {
  QuadElt w = e.a_gen();
  for (const auto& x : L.basis())
    if (!L.contains(w * x)) return false;
  return true;
}

inline QuadSubmodule submodule(const QuadExt& e, const std::vector<QuadElt>& gens) {
  std::vector<QuadElt> all;
  QuadElt w = e.a_gen();
  for (const auto& g : gens) {
    if (!e.in_B(g)) throw Error(Errc::element_not_in_ambient, g.str() + " is not in " + e.str());
    all.push_back(g);
    all.push_back(w * g);
  }
  return {e, QuadLattice::span(e.K, all)};
}

/// Wrap an existing lattice after checking it is an A-submodule of B.
inline QuadSubmodule submodule_from_lattice(const QuadExt& e, const QuadLattice& L) {
  if (L.K != e.K) throw Error(Errc::element_not_in_ambient, "lattice in a different field");
  for (const auto& x : L.basis())
    if (!e.in_B(x)) throw Error(Errc::element_not_in_ambient, x.str() + " is not in " + e.str());
  if (!is_A_stable(e, L)) throw Error(Errc::malformed_input, "lattice is not stable under " + e.str());
  return {e, L};
}

inline QuadSubmodule whole_A(const QuadExt& e) { return {e, e.A()}; }

inline QuadSubmodule principal(const QuadExt& e, const QuadElt& x) { return submodule(e, {x}); }

inline QuadSubmodule mul(const QuadSubmodule& a, const QuadSubmodule& b) {
  check_parent(a, b);
  return {a.ext, lat_mul(a.lat, b.lat)};
}

inline QuadSubmodule sum(const QuadSubmodule& a, const QuadSubmodule& b) {
  check_parent(a, b);
  return {a.ext, lat_sum(a.lat, b.lat)};
}

inline bool contains(const QuadSubmodule& L, const QuadElt& x) { return L.lat.contains(x); }

inline bool contains(const QuadSubmodule& L, const QuadSubmodule& M) {
  check_parent(L, M);
  return L.lat.contains(M.lat);
}

inline bool equals(const QuadSubmodule& a, const QuadSubmodule& b) {
  check_parent(a, b);
  return a.lat == b.lat;
}

/// {b in B : b*L in A}.
inline QuadSubmodule colon_into_A(const QuadSubmodule& L) {
  if (L.is_zero()) throw Error(Errc::zero_module, "colon of the zero module");
  const QuadExt& e = L.ext;
  QuadLattice A = e.A();
  std::optional<QuadLattice> C;
  for (const auto& l : L.lat.basis()) {
    QuadLattice t = lat_scale(A, l.inverse());
    C = C ? lat_intersect(*C, t) : t;
  }
  if (!e.b_is_field()) C = lat_intersect(*C, e.B());
  return {e, *C};
}

/// N(L) = [A : L] extended multiplicatively to lattices of rank 2.
inline Rat norm_rel_A(const QuadSubmodule& L) { return L.lat.covolume() / Rat(L.ext.fA); }

/// L * B0 for an intermediate order B0 = O_{f0} with A in B0 in B.
inline QuadSubmodule extend_scalars(const QuadSubmodule& L, const Int& f0) {
  const QuadExt& e = L.ext;
  if (f0 <= 0 || e.fA % f0 != 0 || (!e.b_is_field() && f0 % e.fB != 0))
    throw Error(Errc::not_intermediate, "conductor " + to_dec(f0) + " is not between " + to_dec(e.fA) + " and " + to_dec(e.fB));
  QuadExt e0{e.K, f0, e.fB};
  std::vector<QuadElt> g;
  QuadElt w = omega0(e.K).scaled(f0);
  for (const auto& x : L.lat.basis()) {
    g.push_back(x);
    g.push_back(w * x);
  }
  return {e0, QuadLattice::span(e.K, g)};
}

/// The same lattice regarded over another extension with the same A.
inline QuadSubmodule rebase(const QuadSubmodule& L, const QuadExt& e) {
  if (L.ext.K != e.K || L.ext.fA != e.fA) throw Error(Errc::parent_mismatch, "rebase changes the subring");
  return submodule_from_lattice(e, L.lat);
}

}  // namespace classext
