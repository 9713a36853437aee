#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "classext/classgroup.hpp"
#include "classext/json_io.hpp"

namespace classext {

/// Truncated graded algebra A(L) = sum of L^n for |n| <= N, realized by ideal
/// powers inside the quadratic field.
struct TorsorAlgebra {
  QuadOrderDesc order;
  QuadExt ext;  // A in K
  QuadInvertible L;
  int N = 3;
  std::map<int, QuadLattice> comp;
  // table[{m,i,n,j}] = coordinates of b_{m,i} * b_{n,j} in the basis of degree m+n
  std::map<std::tuple<int, int, int, int>, IntVec> table;

  const QuadLattice& component(int n) const {
    auto it = comp.find(n);
    if (it == comp.end()) throw Error(Errc::malformed_input, "degree " + std::to_string(n) + " is outside the truncation");
    return it->second;
  }
  QuadElt basis(int n, int i) const { return component(n).basis()[static_cast<std::size_t>(i)]; }
};

/// Coordinates of x on the Hermite basis of L, if x lies in L.
inline std::optional<IntVec> lattice_coords(const QuadLattice& L, const QuadElt& x) {
  W0Coords c = to_w0(L.K, x);
  Int a = c.a * L.den, b = c.b * L.den;
  if (a % c.den != 0 || b % c.den != 0) return std::nullopt;
  a /= c.den;
  b /= c.den;
  // rows (h11, h12), (0, h22)
  const IntVec& r0 = L.rows[0];
  const IntVec& r1 = L.rows[1];
  if (a % r0[0] != 0) return std::nullopt;
  Int t0 = a / r0[0];
  Int rest = b - t0 * r0[1];
  if (rest % r1[1] != 0) return std::nullopt;
  return IntVec{t0, rest / r1[1]};
}

inline TorsorAlgebra build_torsor(const QuadOrderDesc& A, const QuadSubmodule& L0, int N = 3) {
  if (N < 1) throw Error(Errc::malformed_input, "truncation must be at least 1");
  QuadExt e = QuadExt::make(A, std::nullopt);
  if (L0.ext != e) throw Error(Errc::parent_mismatch, "ideal is not over " + e.str());
  auto inv = try_invertible(L0);
  if (!inv) throw Error(Errc::not_invertible, L0.str() + " is not invertible");
  TorsorAlgebra T{A, e, *inv, N, {}, {}};
  T.comp[0] = e.A();
  T.comp[1] = L0.lat;
  T.comp[-1] = inv->Linv.lat;
  for (int n = 2; n <= N; ++n) {
    T.comp[n] = lat_mul(T.comp[n - 1], T.comp[1]);
    T.comp[-n] = lat_mul(T.comp[-(n - 1)], T.comp[-1]);
    QuadLattice direct = colon_into_A(QuadSubmodule{e, T.comp[n]}).lat;
    if (direct != T.comp[-n]) throw Error(Errc::invalid_structure, "L^-" + std::to_string(n) + " differs from the inverse of L^" + std::to_string(n));
  }
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n) {
      if (std::abs(m + n) > N) continue;
      const QuadLattice& target = T.comp[m + n];
      auto bm = T.comp[m].basis(), bn = T.comp[n].basis();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          auto c = lattice_coords(target, bm[static_cast<std::size_t>(i)] * bn[static_cast<std::size_t>(j)]);
          if (!c) throw Error(Errc::invalid_structure, "product of degrees " + std::to_string(m) + " and " + std::to_string(n) + " leaves L^" + std::to_string(m + n));
          T.table[{m, i, n, j}] = *c;
        }
    }
  return T;
}

struct TorsorCheck {
  bool power_law = true;
  bool symmetric = true;
  bool associative = true;
  std::vector<std::string> failures;
  bool ok() const { return power_law && symmetric && associative; }
};

/// Product of homogeneous coordinate vectors through the structure constants.
inline IntVec torsor_mul(const TorsorAlgebra& T, int m, const IntVec& x, int n, const IntVec& y) {
  IntVec z(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Int c = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      if (c == 0) continue;
      const IntVec& t = T.table.at({m, i, n, j});
      z[0] += c * t[0];
      z[1] += c * t[1];
    }
  return z;
}

inline TorsorCheck check_commutativity(const TorsorAlgebra& T) {
  TorsorCheck r;
  const int N = T.N;
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n) {
      if (std::abs(m + n) > N) continue;
      if (lat_mul(T.component(m), T.component(n)) != T.component(m + n)) {
        r.power_law = false;
        r.failures.push_back("L^" + std::to_string(m) + " L^" + std::to_string(n) + " != L^" + std::to_string(m + n));
      }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          if (T.table.at({m, i, n, j}) != T.table.at({n, j, m, i})) {
            r.symmetric = false;
            r.failures.push_back("asymmetric constants in degrees " + std::to_string(m) + "," + std::to_string(n));
          }
    }
  const IntVec e[2] = {{1, 0}, {0, 1}};
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n)
      for (int p = -N; p <= N; ++p) {
        if (std::abs(m + n) > N || std::abs(n + p) > N || std::abs(m + n + p) > N) continue;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
              IntVec left = torsor_mul(T, m + n, torsor_mul(T, m, e[i], n, e[j]), p, e[k]);
              IntVec right = torsor_mul(T, m, e[i], n + p, torsor_mul(T, n, e[j], p, e[k]));
              if (left != right) {
                r.associative = false;
                r.failures.push_back("associativity fails in degrees " + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(p));
              }
            }
      }
  return r;
}

/// 1 = sum x_k y_k with x_k in degree 1 and y_k in degree -1.
struct VanishingCertificate {
  std::vector<std::pair<QuadElt, QuadElt>> pairs;
  bool verified = false;
};

inline VanishingCertificate check_vanishing(const TorsorAlgebra& T) {
  VanishingCertificate V;
  if (lat_mul(T.component(1), T.component(-1)) != T.component(0)) return V;
  std::vector<IntVec> rows;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) rows.push_back(T.table.at({1, i, -1, j}));
  auto one = lattice_coords(T.component(0), QuadElt::integer(T.order.d, 1));
  auto t = solve_moduli(IntMatrix::from_rows(rows, 2), *one, {0, 0}, IntVec(4, 0));
  if (!t) return V;
  auto b1 = T.component(1).basis(), bm = T.component(-1).basis();
  QuadElt sum = QuadElt::integer(T.order.d, 0);
  for (std::size_t i = 0; i < 2; ++i) {
    QuadElt y = bm[0].scaled((*t)[2 * i]) + bm[1].scaled((*t)[2 * i + 1]);
    if (y.is_zero()) continue;
    V.pairs.emplace_back(b1[i], y);
    sum = sum + b1[i] * y;
  }
  V.verified = sum == QuadElt::integer(T.order.d, 1);
  for (const auto& [x, y] : V.pairs)
    if (!T.component(1).contains(x) || !T.component(-1).contains(y)) V.verified = false;
  return V;
}

/// Homogeneous u of degree d with u^-1 in degree -d, coordinates bounded by
/// `height`; searched by height, then lexicographically in the order 0, 1, -1, 2, -2, ...
struct UnitSearch {
  std::optional<QuadElt> unit;
  std::optional<IntVec> coords;
  Int height;
};

inline UnitSearch graded_unit_search(const TorsorAlgebra& T, int d, const Int& height) {
  if (std::abs(d) > T.N) throw Error(Errc::malformed_input, "degree outside the truncation");
  const QuadLattice& Ld = T.component(d);
  const QuadLattice& Lm = T.component(-d);
  auto b = Ld.basis();
  // N(c1 b1 + c2 b2) = (al c1^2 + be c1 c2 + ga c2^2) / den, compared with N(L^d).
  Rat al = b[0].norm(), be = (b[0] * b[1].conj()).trace(), ga = b[1].norm();
  Rat target = norm_rel_A(QuadSubmodule{T.ext, Ld});
  Int den = lcm_int(lcm_int(rat_den(al), rat_den(be)), lcm_int(rat_den(ga), rat_den(target)));
  Int ia = rat_num(al * den), ib = rat_num(be * den), ig = rat_num(ga * den), it = rat_num(target * den);
  auto zig = [](const Int& k) -> Int {
    if (k == 0) return 0;
    if (k % 2 == 1) return Int((k + 1) / 2);
    return Int(-(k / 2));
  };
  UnitSearch out{std::nullopt, std::nullopt, height};
  for (Int h = 0; h <= height; ++h) {
    for (Int r1 = 0; r1 <= 2 * h; ++r1) {
      Int c1 = zig(r1);
      for (Int r2 = 0; r2 <= 2 * h; ++r2) {
        Int c2 = zig(r2);
        if (std::max(abs_int(c1), abs_int(c2)) != h) continue;
        if (ia * c1 * c1 + ib * c1 * c2 + ig * c2 * c2 != it) continue;
        QuadElt u = b[0].scaled(c1) + b[1].scaled(c2);
        if (u.is_zero()) continue;
        if (!Lm.contains(u.inverse())) continue;
        out.unit = u;
        out.coords = IntVec{c1, c2};
        return out;
      }
    }
  }
  return out;
}

inline json torsor_to_json(const TorsorAlgebra& T) {
  json comps = json::object();
  for (const auto& [n, L] : T.comp) comps[std::to_string(n)] = to_json(L);
  return json{{"D", to_dec(T.order.D)}, {"L", to_json(T.L.L.lat)}, {"N", T.N}, {"components", comps}};
}

}  // namespace classext
