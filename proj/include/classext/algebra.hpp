#pragma once

#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "classext/error.hpp"
#include "classext/integer.hpp"
#include "classext/intlat.hpp"

namespace classext {

/// Enumeration bounds shared by every exhaustive routine.
struct Limits {
  Int max_size = 512;     // ambient size for exhaustive enumeration of submodules
  Int scan_size = 4096;   // ambient size for element scans (units, idempotents, nilradical)
  std::size_t max_submodules = 200000;

  static Limits from_env() {
    Limits l;
    if (const char* s = std::getenv("CLASSEXT_MAX_ENUM")) {
      try {
        Int v = parse_int(s);
        if (v > 0) l.max_size = v;
      } catch (const Error&) {
      }
    }
    return l;
  }
};

enum class AlgKind { generic, zmod, product, quad_order, idealization, trunc_poly, group_ring, poly_quotient, quotient, tensor_square, subring };

/// Commutative algebra over Z with additive group the direct sum of Z/ord[i]
/// (ord[i] = 0 meaning Z), given by structure constants.
struct Algebra {
  IntVec ord;
  std::vector<std::vector<IntVec>> table;  // table[i][j] = e_i * e_j
  IntVec one;
  AlgKind kind = AlgKind::generic;
  std::string name;
  // Shape data used by constructions that know their building blocks.
  std::size_t base_rank = 0;
  std::shared_ptr<const Algebra> base;
  Int param = 0;  // n for zmod, D for quad_order, k for trunc_poly, m for group_ring

  std::size_t rank() const { return ord.size(); }
  bool finite() const {
    for (const auto& d : ord)
      if (d == 0) return false;
    return true;
  }
  Int size() const {
    Int s = 1;
    for (const auto& d : ord) {
      if (d == 0) throw Error(Errc::unsupported_ring, "size of an infinite ring");
      s *= d;
    }
    return s;
  }

  IntVec reduce(IntVec v) const {
    reduce_mod(v, ord);
    return v;
  }
  IntVec zero() const { return IntVec(rank()); }
  IntVec basis(std::size_t i) const {
    IntVec v(rank());
    v[i] = 1;
    return reduce(v);
  }
  IntVec add(const IntVec& x, const IntVec& y) const {
    IntVec z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = x[i] + y[i];
    return reduce(z);
  }
  IntVec sub(const IntVec& x, const IntVec& y) const {
    IntVec z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = x[i] - y[i];
    return reduce(z);
  }
  IntVec scale(const IntVec& x, const Int& k) const {
    IntVec z(rank());
    for (std::size_t i = 0; i < rank(); ++i) z[i] = x[i] * k;
    return reduce(z);
  }
  IntVec mul(const IntVec& x, const IntVec& y) const {
    const std::size_t r = rank();
    IntVec z(r);
    for (std::size_t i = 0; i < r; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (y[j] == 0) continue;
        Int c = x[i] * y[j];
        const IntVec& t = table[i][j];
        for (std::size_t k = 0; k < r; ++k)
          if (t[k] != 0) z[k] += c * t[k];
      }
    }
    return reduce(z);
  }
  IntVec pow(IntVec x, unsigned long long e) const {
    IntVec acc = reduce(one);
    while (e) {
      if (e & 1) acc = mul(acc, x);
      x = mul(x, x);
      e >>= 1;
    }
    return acc;
  }
  bool is_zero(const IntVec& x) const { return is_zero_vec(reduce(x)); }
  bool eq(const IntVec& x, const IntVec& y) const { return reduce(x) == reduce(y); }

  /// Row i is e_i * x.
  IntMatrix mul_matrix(const IntVec& x) const {
    IntMatrix m(rank(), rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      IntVec p = mul(basis(i), x);
      for (std::size_t k = 0; k < rank(); ++k) m(i, k) = p[k];
    }
    return m;
  }

  bool same_structure(const Algebra& o) const { return ord == o.ord && table == o.table && one == o.one; }

  void validate() const {
    const std::size_t r = rank();
    if (r == 0) throw Error(Errc::invalid_structure, "algebra of rank zero");
    if (one.size() != r || table.size() != r) throw Error(Errc::invalid_structure, "structure data has wrong size");
    for (const auto& d : ord)
      if (d < 0) throw Error(Errc::invalid_structure, "negative additive order");
    for (std::size_t i = 0; i < r; ++i) {
      if (table[i].size() != r) throw Error(Errc::invalid_structure, "structure data has wrong size");
      for (std::size_t j = 0; j < r; ++j) {
        if (table[i][j].size() != r) throw Error(Errc::invalid_structure, "structure data has wrong size");
        for (std::size_t k = 0; k < r; ++k) {
          const Int& c = table[i][j][k];
          for (const Int& di : {ord[i], ord[j]}) {
            if (di == 0) continue;
            if (ord[k] == 0 ? c != 0 : (di * c) % ord[k] != 0)
              throw Error(Errc::invalid_structure, "structure constants are not compatible with additive orders");
          }
        }
        if (reduce(table[i][j]) != reduce(table[j][i])) throw Error(Errc::invalid_structure, "multiplication is not commutative");
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (!eq(mul(one, basis(i)), basis(i))) throw Error(Errc::invalid_structure, "unity law fails");
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = j; k < r; ++k)
          if (!eq(mul(mul(basis(i), basis(j)), basis(k)), mul(basis(i), mul(basis(j), basis(k)))))
            throw Error(Errc::invalid_structure, "multiplication is not associative");
    }
  }

  /// Visit every element of a finite algebra in mixed-radix order.
  void for_each_element(const std::function<void(const IntVec&)>& fn) const {
    if (!finite()) throw Error(Errc::unsupported_ring, "cannot enumerate an infinite ring");
    IntVec x(rank());
    for (;;) {
      fn(x);
      std::size_t i = 0;
      for (; i < rank(); ++i) {
        x[i] += 1;
        if (x[i] < ord[i]) break;
        x[i] = 0;
      }
      if (i == rank()) return;
    }
  }

  std::vector<IntVec> elements() const {
    std::vector<IntVec> out;
    for_each_element([&](const IntVec& x) { out.push_back(x); });
    return out;
  }
};

using AlgPtr = std::shared_ptr<const Algebra>;

inline AlgPtr finish(Algebra a) {
  a.one = a.reduce(a.one);
  for (auto& row : a.table)
    for (auto& t : row) t = a.reduce(t);
  a.validate();
  return std::make_shared<const Algebra>(std::move(a));
}

inline AlgPtr make_zmod(const Int& n) {
  if (n < 0 || n == 1) throw Error(Errc::invalid_structure, "Z/" + to_dec(n) + " is not supported");
  Algebra a;
  a.ord = {n};
  a.table = {{{1}}};
  a.one = {1};
  a.kind = AlgKind::zmod;
  a.param = n;
  a.name = n == 0 ? "Z" : "Z/" + to_dec(n);
  return finish(std::move(a));
}

/// The structure-constant form of a finite algebra, as read from a descriptor.
inline AlgPtr make_finite(const IntVec& ord, const std::vector<std::vector<IntVec>>& table, const IntVec& one,
                          const std::string& name = "finite") {
  Algebra a;
  a.ord = ord;
  a.table = table;
  a.one = one;
  a.name = name;
  return finish(std::move(a));
}

inline AlgPtr make_product(const AlgPtr& R, const AlgPtr& S) {
  const std::size_t r = R->rank(), s = S->rank(), n = r + s;
  Algebra a;
  a.ord = R->ord;
  a.ord.insert(a.ord.end(), S->ord.begin(), S->ord.end());
  a.table.assign(n, std::vector<IntVec>(n, IntVec(n)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) a.table[i][j][k] = R->table[i][j][k];
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < s; ++k) a.table[r + i][r + j][r + k] = S->table[i][j][k];
  a.one = R->one;
  a.one.insert(a.one.end(), S->one.begin(), S->one.end());
  a.kind = AlgKind::product;
  a.name = R->name + " x " + S->name;
  return finish(std::move(a));
}

/// O_D with Z-basis {1, w}, w = (D + sqrt D)/2, w^2 = D*w - (D^2 - D)/4.
inline AlgPtr make_quad_order_algebra(const Int& D) {
  Algebra a;
  a.ord = {0, 0};
  a.table = {{{1, 0}, {0, 1}}, {{0, 1}, {-(D * D - D) / 4, D}}};
  a.one = {1, 0};
  a.kind = AlgKind::quad_order;
  a.param = D;
  a.name = "O_" + to_dec(D);
  return finish(std::move(a));
}

/// Result of dividing Z^n by a lattice that contains the additive relations.
struct GroupQuotient {
  IntVec mod;           // additive orders of the new basis
  IntMatrix proj;       // n x m: old coordinates -> new coordinates
  IntMatrix section;    // m x n: new basis element -> old coordinates
};

inline GroupQuotient quotient_group(const std::vector<IntVec>& lattice, std::size_t n) {
  IntMatrix G = IntMatrix::from_rows(lattice, n);
  SnfResult S = lattice.empty() ? SnfResult{G, IntMatrix(), IntMatrix::identity(n)} : snf(G);
  IntMatrix Vinv = unimodular_inverse(S.V);
  std::vector<std::size_t> keep;
  IntVec mod;
  for (std::size_t t = 0; t < n; ++t) {
    Int s = t < S.S.rows() ? S.S(t, t) : Int(0);
    if (s == 1) continue;
    keep.push_back(t);
    mod.push_back(s);
  }
  GroupQuotient q{mod, IntMatrix(n, keep.size()), IntMatrix(keep.size(), n)};
  for (std::size_t c = 0; c < keep.size(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      q.proj(i, c) = S.V(i, keep[c]);
      q.section(c, i) = Vinv(keep[c], i);
    }
  }
  return q;
}

inline IntVec project(const GroupQuotient& q, const IntVec& x) {
  IntVec y = vec_mul(x, q.proj);
  reduce_mod(y, q.mod);
  return y;
}

/// Additive span (with the ring's additive relations) in Hermite form.
inline std::vector<IntVec> span_lattice(const Algebra& R, const std::vector<IntVec>& gens) {
  return hnf_modular(gens, R.ord);
}

/// Ideal generated by gens.
inline std::vector<IntVec> ideal_lattice(const Algebra& R, const std::vector<IntVec>& gens) {
  std::vector<IntVec> all;
  for (const auto& g : gens)
    for (std::size_t i = 0; i < R.rank(); ++i) all.push_back(R.mul(g, R.basis(i)));
  return span_lattice(R, all);
}

inline std::vector<IntVec> whole_lattice(const Algebra& R) {
  std::vector<IntVec> g;
  for (std::size_t i = 0; i < R.rank(); ++i) g.push_back(R.basis(i));
  return span_lattice(R, g);
}

inline std::vector<IntVec> zero_lattice(const Algebra& R) { return span_lattice(R, {}); }

inline bool lattice_contains(const Algebra& R, const std::vector<IntVec>& L, const IntVec& x) {
  return hnf_contains(L, R.reduce(x));
}

inline bool lattice_contains(const Algebra& R, const std::vector<IntVec>& L, const std::vector<IntVec>& M) {
  for (const auto& x : M)
    if (!lattice_contains(R, L, x)) return false;
  return true;
}

/// Number of elements of a subgroup of a finite algebra.
inline Int lattice_size(const Algebra& R, const std::vector<IntVec>& L) {
  Int n = R.size();
  for (const auto& r : L) n /= r[leading_index(r)];
  return n;
}

/// Visit every element of a subgroup of a finite algebra (each exactly once).
inline void for_each_in_lattice(const Algebra& R, const std::vector<IntVec>& L, const std::function<void(const IntVec&)>& fn) {
  if (!R.finite()) throw Error(Errc::unsupported_ring, "cannot enumerate a subgroup of an infinite ring");
  std::vector<Int> range;
  for (const auto& r : L) {
    std::size_t c = leading_index(r);
    range.push_back(R.ord[c] / r[c]);
  }
  std::vector<Int> co(L.size(), 0);
  for (;;) {
    IntVec x(R.rank());
    for (std::size_t k = 0; k < L.size(); ++k)
      if (co[k] != 0)
        for (std::size_t j = 0; j < R.rank(); ++j) x[j] += co[k] * L[k][j];
    fn(R.reduce(x));
    std::size_t k = 0;
    for (; k < L.size(); ++k) {
      co[k] += 1;
      if (co[k] < range[k]) break;
      co[k] = 0;
    }
    if (k == L.size()) return;
  }
}

/// Z-linear map between algebras given by images of basis elements.
struct AlgHom {
  AlgPtr src, dst;
  IntMatrix img;  // src.rank() x dst.rank()

  IntVec apply(const IntVec& x) const { return dst->reduce(vec_mul(src->reduce(x), img)); }

  /// Checks that the map is well defined, unital and multiplicative.
  void validate() const {
    if (img.rows() != src->rank() || img.cols() != dst->rank()) throw Error(Errc::invalid_morphism, "image matrix has the wrong shape");
    for (std::size_t i = 0; i < src->rank(); ++i) {
      if (src->ord[i] > 0 && !dst->is_zero(dst->scale(img.row(i), src->ord[i])))
        throw Error(Errc::invalid_morphism, "map does not respect additive orders");
      for (std::size_t j = i; j < src->rank(); ++j)
        if (!dst->eq(apply(src->mul(src->basis(i), src->basis(j))), dst->mul(img.row(i), img.row(j))))
          throw Error(Errc::invalid_morphism, "map is not multiplicative");
    }
    if (!dst->eq(apply(src->one), dst->one)) throw Error(Errc::invalid_morphism, "map is not unital");
  }

  std::vector<IntVec> image_lattice(const std::vector<IntVec>& L) const {
    std::vector<IntVec> g;
    for (const auto& x : L) g.push_back(apply(x));
    return span_lattice(*dst, g);
  }
};

inline AlgHom identity_hom(const AlgPtr& R) { return {R, R, IntMatrix::identity(R->rank())}; }

inline AlgHom compose_hom(const AlgHom& f, const AlgHom& g) {
  if (f.dst.get() != g.src.get() && !f.dst->same_structure(*g.src)) throw Error(Errc::invalid_morphism, "maps do not compose");
  return {f.src, g.dst, f.img * g.img};
}

struct QuotientAlgebra {
  AlgPtr alg;
  AlgHom proj;
  IntMatrix section;  // new basis -> old coordinates
};

/// R / I for an ideal lattice I (Hermite form including the additive relations).
inline QuotientAlgebra quotient_algebra(const AlgPtr& R, const std::vector<IntVec>& I, const std::string& name = "") {
  GroupQuotient q = quotient_group(I, R->rank());
  const std::size_t m = q.mod.size();
  Algebra a;
  a.ord = q.mod;
  a.kind = AlgKind::quotient;
  a.name = name.empty() ? R->name + "/I" : name;
  a.base = R;
  if (m == 0) throw Error(Errc::invalid_structure, "quotient by the unit ideal");
  a.table.assign(m, std::vector<IntVec>(m));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) a.table[s][t] = project(q, R->mul(q.section.row(s), q.section.row(t)));
  a.one = project(q, R->one);
  AlgPtr A = finish(std::move(a));
  AlgHom p{R, A, q.proj};
  p.validate();
  return {A, p, q.section};
}

/// Idealization R + M with M = R^g / (R-span of rels); rels[k][t] is an element of R.
inline AlgPtr make_idealization(const AlgPtr& R, std::size_t g, const std::vector<std::vector<IntVec>>& rels) {
  const std::size_t r = R->rank(), n = g * r;
  IntVec mmod;
  for (std::size_t t = 0; t < g; ++t) mmod.insert(mmod.end(), R->ord.begin(), R->ord.end());
  std::vector<IntVec> relrows;
  for (const auto& rel : rels) {
    if (rel.size() != g) throw Error(Errc::inconsistent_presentation, "relation has " + std::to_string(rel.size()) + " entries, expected " + std::to_string(g));
    for (const auto& x : rel)
      if (x.size() != r) throw Error(Errc::inconsistent_presentation, "relation entry is not an element of the base ring");
    for (std::size_t i = 0; i < r; ++i) {
      IntVec v(n);
      for (std::size_t t = 0; t < g; ++t) {
        IntVec p = R->mul(R->basis(i), rel[t]);
        for (std::size_t k = 0; k < r; ++k) v[t * r + k] = p[k];
      }
      relrows.push_back(std::move(v));
    }
  }
  GroupQuotient q = quotient_group(hnf_modular(relrows, mmod), n);
  if (q.mod.empty()) return R;
  const std::size_t m = q.mod.size(), N = r + m;
  Algebra a;
  a.ord = R->ord;
  a.ord.insert(a.ord.end(), q.mod.begin(), q.mod.end());
  a.table.assign(N, std::vector<IntVec>(N, IntVec(N)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) a.table[i][j][k] = R->table[i][j][k];
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t u = 0; u < m; ++u) {
      IntVec sec = q.section.row(u), acted(n);
      for (std::size_t t = 0; t < g; ++t) {
        IntVec comp(sec.begin() + t * r, sec.begin() + (t + 1) * r);
        IntVec p = R->mul(R->basis(i), comp);
        for (std::size_t k = 0; k < r; ++k) acted[t * r + k] = p[k];
      }
      IntVec y = project(q, acted);
      for (std::size_t k = 0; k < m; ++k) {
        a.table[i][r + u][r + k] = y[k];
        a.table[r + u][i][r + k] = y[k];
      }
    }
  a.one = R->one;
  a.one.resize(N);
  a.kind = AlgKind::idealization;
  a.base_rank = r;
  a.base = R;
  a.param = R->param;
  a.name = R->name + " (+) M";
  return finish(std::move(a));
}

inline AlgPtr make_graded_quotient(const AlgPtr& R, std::size_t k, bool cyclic) {
  if (k == 0) throw Error(Errc::invalid_structure, "degree bound must be positive");
  const std::size_t r = R->rank(), n = r * k;
  Algebra a;
  for (std::size_t t = 0; t < k; ++t) a.ord.insert(a.ord.end(), R->ord.begin(), R->ord.end());
  a.table.assign(n, std::vector<IntVec>(n, IntVec(n)));
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t t = 0; t < k; ++t) {
      std::size_t u = s + t;
      if (cyclic) u %= k;
      else if (u >= k) continue;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          for (std::size_t c = 0; c < r; ++c) a.table[s * r + i][t * r + j][u * r + c] = R->table[i][j][c];
    }
  a.one = R->one;
  a.one.resize(n);
  a.kind = cyclic ? AlgKind::group_ring : AlgKind::trunc_poly;
  a.base_rank = r;
  a.base = R;
  a.param = static_cast<long long>(k);
  a.name = cyclic ? R->name + "[C" + std::to_string(k) + "]" : R->name + "[x]/(x^" + std::to_string(k) + ")";
  return finish(std::move(a));
}

/// R[x]/(x^k).
inline AlgPtr make_trunc_poly(const AlgPtr& R, std::size_t k) { return make_graded_quotient(R, k, false); }

/// R[Z/m].
inline AlgPtr make_group_ring(const AlgPtr& R, std::size_t m) { return make_graded_quotient(R, m, true); }

/// R[x]/(x^k + c_{k-1} x^{k-1} + ... + c_0) for integer coefficients c.
inline AlgPtr make_poly_quotient(const AlgPtr& R, const IntVec& c) {
  const std::size_t k = c.size(), r = R->rank(), n = r * k;
  if (k == 0) throw Error(Errc::invalid_structure, "polynomial of degree zero");
  std::vector<IntVec> pw;  // pw[e] = x^e reduced, as coefficients over 1..x^{k-1}
  for (std::size_t e = 0; e + 1 < 2 * k; ++e) {
    IntVec v(k);
    if (e < k) {
      v[e] = 1;
    } else {
      const IntVec& prev = pw[e - 1];
      Int top = prev[k - 1];
      for (std::size_t t = k - 1; t > 0; --t) v[t] = prev[t - 1];
      v[0] = 0;
      for (std::size_t t = 0; t < k; ++t) v[t] -= top * c[t];
    }
    pw.push_back(v);
  }
  Algebra a;
  for (std::size_t t = 0; t < k; ++t) a.ord.insert(a.ord.end(), R->ord.begin(), R->ord.end());
  a.table.assign(n, std::vector<IntVec>(n, IntVec(n)));
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t u = 0; u < k; ++u) {
        const Int& f = pw[s + t][u];
        if (f == 0) continue;
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j)
            for (std::size_t q = 0; q < r; ++q) a.table[s * r + i][t * r + j][u * r + q] += f * R->table[i][j][q];
      }
  a.one = R->one;
  a.one.resize(n);
  a.kind = AlgKind::poly_quotient;
  a.base_rank = r;
  a.base = R;
  std::string poly = "x^" + std::to_string(k);
  for (std::size_t t = k; t-- > 0;)
    if (c[t] != 0) poly += (c[t] > 0 ? "+" : "-") + (abs_int(c[t]) == 1 && t ? std::string() : to_dec(abs_int(c[t]))) + (t ? (t == 1 ? "x" : "x^" + std::to_string(t)) : "");
  a.name = R->name + "[x]/(" + poly + ")";
  return finish(std::move(a));
}

/// Finite fields of order 4, 8, 9 used throughout the test corpus.
inline AlgPtr make_F4() { return make_poly_quotient(make_zmod(2), {1, 1}); }
inline AlgPtr make_F8() { return make_poly_quotient(make_zmod(2), {1, 1, 0}); }
inline AlgPtr make_F9() { return make_poly_quotient(make_zmod(3), {1, 0}); }

// ---------------------------------------------------------------------------
// Element-level ring questions

inline std::optional<IntVec> unit_inverse(const Algebra& R, const IntVec& x) {
  auto y = solve_moduli(R.mul_matrix(R.reduce(x)), R.one, R.ord, R.ord);
  if (!y) return std::nullopt;
  return R.reduce(*y);
}

inline bool is_unit(const Algebra& R, const IntVec& x) { return unit_inverse(R, x).has_value(); }

/// Annihilator of x as a lattice.
inline std::vector<IntVec> annihilator(const Algebra& R, const IntVec& x) {
  return kernel_moduli(R.mul_matrix(R.reduce(x)), R.ord, R.ord);
}

inline bool is_zero_divisor(const Algebra& R, const IntVec& x) {
  for (const auto& row : annihilator(R, x))
    if (!R.is_zero(row)) return true;
  return false;
}

inline std::vector<IntVec> all_units(const Algebra& R, const Limits& lim) {
  if (!R.finite()) throw Error(Errc::unsupported_ring, "unit group of an infinite ring");
  if (R.size() > lim.scan_size) throw Error(Errc::size_bound_exceeded, "ring of size " + to_dec(R.size()) + " exceeds the scan bound");
  std::vector<IntVec> out;
  R.for_each_element([&](const IntVec& x) {
    if (is_unit(R, x)) out.push_back(x);
  });
  return out;
}

inline bool is_nilpotent(const Algebra& R, const IntVec& x) {
  Int s = R.size();
  IntVec y = R.reduce(x);
  Int p = 1;
  while (p < s) {
    y = R.mul(y, y);
    p *= 2;
  }
  return R.is_zero(y);
}

inline std::vector<IntVec> nilradical(const Algebra& R, const Limits& lim) {
  if (!R.finite()) throw Error(Errc::unsupported_ring, "nilradical of an infinite ring");
  if (R.size() > lim.scan_size) throw Error(Errc::size_bound_exceeded, "ring of size " + to_dec(R.size()) + " exceeds the scan bound");
  std::vector<IntVec> nil;
  R.for_each_element([&](const IntVec& x) {
    if (is_nilpotent(R, x)) nil.push_back(x);
  });
  return span_lattice(R, nil);
}

inline QuotientAlgebra reduce_ring(const AlgPtr& R, const Limits& lim) {
  return quotient_algebra(R, nilradical(*R, lim), R->name + "_red");
}

inline std::vector<IntVec> idempotents(const Algebra& R, const Limits& lim) {
  if (!R.finite()) throw Error(Errc::unsupported_ring, "idempotents of an infinite ring");
  if (R.size() > lim.scan_size) throw Error(Errc::size_bound_exceeded, "ring of size " + to_dec(R.size()) + " exceeds the scan bound");
  std::vector<IntVec> out;
  R.for_each_element([&](const IntVec& x) {
    if (R.eq(R.mul(x, x), x)) out.push_back(x);
  });
  return out;
}

/// Every nonzero element of a finite ring is a unit.
inline bool is_field(const Algebra& R) {
  bool ok = true;
  R.for_each_element([&](const IntVec& x) {
    if (ok && !R.is_zero(x) && !is_unit(R, x)) ok = false;
  });
  return ok;
}

inline std::string lattice_key(const std::vector<IntVec>& L) {
  std::string s;
  for (const auto& r : L) {
    s += "(";
    for (std::size_t j = 0; j < r.size(); ++j) s += (j ? "," : "") + to_dec(r[j]);
    s += ")";
  }
  return s;
}

/// Maximal ideals of a finite ring, by splitting R_red along primitive idempotents.
inline std::vector<std::vector<IntVec>> maximal_ideals(const AlgPtr& R, const Limits& lim) {
  if (!R->finite()) throw Error(Errc::unsupported_ring, "maximal ideals of an infinite ring");
  if (R->size() > lim.scan_size) throw Error(Errc::size_bound_exceeded, "ring of size " + to_dec(R->size()) + " exceeds the scan bound");
  std::vector<IntVec> nil = nilradical(*R, lim);
  QuotientAlgebra red = quotient_algebra(R, nil);
  const Algebra& Q = *red.alg;
  auto ids = idempotents(Q, lim);
  std::vector<IntVec> prim;
  for (const auto& e : ids) {
    if (Q.is_zero(e)) continue;
    bool primitive = true;
    for (const auto& f : ids)
      if (!Q.is_zero(f) && !Q.eq(f, e) && Q.eq(Q.mul(f, e), f)) primitive = false;
    if (primitive) prim.push_back(e);
  }
  std::map<std::string, std::vector<IntVec>> out;
  for (const auto& e : prim) {
    IntVec c = Q.sub(Q.one, e);
    std::vector<IntVec> gens = nil;
    for (const auto& row : ideal_lattice(Q, {c})) gens.push_back(vec_mul(row, red.section));
    auto M = span_lattice(*R, gens);
    out.emplace(lattice_key(M), M);
  }
  std::vector<std::vector<IntVec>> res;
  for (auto& [k, v] : out) res.push_back(std::move(v));
  return res;
}

/// For a finite ring, checks that every non-zero-divisor is a unit, so the
/// total ring of fractions is the ring itself.
inline bool total_fractions_is_identity(const Algebra& R, const Limits& lim) {
  if (!R.finite()) throw Error(Errc::unsupported_ring, "total ring of fractions of an infinite algebra");
  if (R.size() > lim.scan_size) throw Error(Errc::size_bound_exceeded, "ring of size " + to_dec(R.size()) + " exceeds the scan bound");
  bool ok = true;
  R.for_each_element([&](const IntVec& x) {
    if (ok && !is_zero_divisor(R, x) && !is_unit(R, x)) ok = false;
  });
  return ok;
}

}  // namespace classext
