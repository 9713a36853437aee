#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classext/algebra.hpp"
#include "classext/error.hpp"
#include "classext/intlat.hpp"

namespace classext {

/// An extension A in B of algebras, A given as a Hermite lattice inside B.
struct AlgExt {
  AlgPtr B;
  std::vector<IntVec> A;
  std::optional<IntMatrix> retraction;  // rows: images of the basis of B, all in A
  std::string name;
  GroupQuotient BmodA;

  std::size_t rank() const { return B->rank(); }
  bool a_is_b() const { return A == whole_lattice(*B); }
};

using ExtPtr = std::shared_ptr<const AlgExt>;

inline bool same_ext(const ExtPtr& a, const ExtPtr& b) {
  return a == b || (a->B->same_structure(*b->B) && a->A == b->A);
}

/// Smallest subring of B containing 1 and the given elements.
inline std::vector<IntVec> subring_generated(const Algebra& B, const std::vector<IntVec>& gens) {
  std::vector<IntVec> cur = span_lattice(B, [&] {
    std::vector<IntVec> g = gens;
    g.push_back(B.one);
    return g;
  }());
  for (;;) {
    std::vector<IntVec> g = cur;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i; j < cur.size(); ++j) g.push_back(B.mul(cur[i], cur[j]));
    auto next = span_lattice(B, g);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

inline ExtPtr make_ext(const AlgPtr& B, const std::vector<IntVec>& A_lattice, std::optional<IntMatrix> retraction = std::nullopt,
                       std::string name = "") {
  AlgExt e;
  e.B = B;
  e.A = span_lattice(*B, A_lattice);
  if (!lattice_contains(*B, e.A, B->one)) throw Error(Errc::invalid_structure, "subring does not contain 1");
  for (std::size_t i = 0; i < e.A.size(); ++i)
    for (std::size_t j = i; j < e.A.size(); ++j)
      if (!lattice_contains(*B, e.A, B->mul(e.A[i], e.A[j]))) throw Error(Errc::invalid_structure, "subring is not closed under multiplication");
  if (retraction) {
    AlgHom f{B, B, *retraction};
    f.validate();
    for (std::size_t i = 0; i < B->rank(); ++i)
      if (!lattice_contains(*B, e.A, f.img.row(i))) throw Error(Errc::no_retraction, "retraction does not land in the subring");
    for (const auto& a : e.A)
      if (!B->eq(f.apply(a), a)) throw Error(Errc::no_retraction, "retraction does not fix the subring");
  }
  e.retraction = std::move(retraction);
  e.BmodA = quotient_group(e.A, B->rank());
  e.name = name.empty() ? "(" + B->name + ")" : std::move(name);
  return std::make_shared<const AlgExt>(std::move(e));
}

inline ExtPtr make_ext_generated(const AlgPtr& B, const std::vector<IntVec>& gens, std::optional<IntMatrix> retraction = std::nullopt,
                                 std::string name = "") {
  return make_ext(B, subring_generated(*B, gens), std::move(retraction), std::move(name));
}

/// A = B.
inline ExtPtr make_trivial_ext(const AlgPtr& B) {
  return make_ext(B, whole_lattice(*B), IntMatrix::identity(B->rank()), B->name + " in " + B->name);
}

/// A-submodule of B in Hermite form.
struct AlgSubmodule {
  ExtPtr ext;
  std::vector<IntVec> rows;

  const Algebra& B() const { return *ext->B; }
  bool operator==(const AlgSubmodule& o) const { return same_ext(ext, o.ext) && rows == o.rows; }
  bool operator!=(const AlgSubmodule& o) const { return !(*this == o); }
  std::string str() const { return lattice_key(rows); }
  bool is_zero() const { return rows.empty() || [&] {
    for (const auto& r : rows)
      if (!ext->B->is_zero(r)) return false;
    return true;
  }(); }
};

inline void check_parent(const AlgSubmodule& a, const AlgSubmodule& b) {
  if (!same_ext(a.ext, b.ext)) throw Error(Errc::parent_mismatch, a.ext->name + " vs " + b.ext->name);
}

inline void check_element(const Algebra& B, const IntVec& x) {
  if (x.size() != B.rank()) throw Error(Errc::element_not_in_ambient, "element has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(B.rank()));
}

inline AlgSubmodule submodule(const ExtPtr& e, const std::vector<IntVec>& gens) {
  const Algebra& B = *e->B;
  std::vector<IntVec> all;
  for (const auto& g : gens) {
    check_element(B, g);
    all.push_back(g);
    for (const auto& a : e->A) all.push_back(B.mul(a, g));
  }
  return {e, span_lattice(B, all)};
}

inline AlgSubmodule whole_A(const ExtPtr& e) { return {e, e->A}; }
inline AlgSubmodule whole_B(const ExtPtr& e) { return {e, whole_lattice(*e->B)}; }
inline AlgSubmodule zero_submodule(const ExtPtr& e) { return {e, zero_lattice(*e->B)}; }

inline bool is_A_stable(const ExtPtr& e, const std::vector<IntVec>& L) {
  for (const auto& a : e->A)
    for (const auto& x : L)
      if (!lattice_contains(*e->B, L, e->B->mul(a, x))) return false;
  return true;
}

inline AlgSubmodule submodule_from_lattice(const ExtPtr& e, const std::vector<IntVec>& L) {
  for (const auto& x : L) check_element(*e->B, x);
  auto H = span_lattice(*e->B, L);
  if (!is_A_stable(e, H)) throw Error(Errc::malformed_input, "lattice is not an A-submodule");
  return {e, H};
}

inline AlgSubmodule mul(const AlgSubmodule& a, const AlgSubmodule& b) {
  check_parent(a, b);
  const Algebra& B = a.B();
  std::vector<IntVec> g;
  for (const auto& x : a.rows)
    for (const auto& y : b.rows) g.push_back(B.mul(x, y));
  return {a.ext, span_lattice(B, g)};
}

inline AlgSubmodule sum(const AlgSubmodule& a, const AlgSubmodule& b) {
  check_parent(a, b);
  std::vector<IntVec> g = a.rows;
  g.insert(g.end(), b.rows.begin(), b.rows.end());
  return {a.ext, span_lattice(a.B(), g)};
}

inline bool contains(const AlgSubmodule& L, const IntVec& x) {
  check_element(L.B(), x);
  return lattice_contains(L.B(), L.rows, x);
}

inline bool contains(const AlgSubmodule& L, const AlgSubmodule& M) {
  check_parent(L, M);
  return lattice_contains(L.B(), L.rows, M.rows);
}

inline bool equals(const AlgSubmodule& a, const AlgSubmodule& b) {
  check_parent(a, b);
  return a.rows == b.rows;
}

inline AlgSubmodule intersect(const AlgSubmodule& a, const AlgSubmodule& b) {
  check_parent(a, b);
  const Algebra& B = a.B();
  std::vector<IntVec> stacked = a.rows;
  stacked.insert(stacked.end(), b.rows.begin(), b.rows.end());
  IntMatrix M = IntMatrix::from_rows(stacked, B.rank());
  auto ker = kernel_moduli(M, B.ord, IntVec(stacked.size(), 0));
  std::vector<IntVec> g;
  for (const auto& k : ker) {
    IntVec x(B.rank());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
      for (std::size_t j = 0; j < B.rank(); ++j) x[j] += k[i] * a.rows[i][j];
    g.push_back(x);
  }
  return {a.ext, span_lattice(B, g)};
}

/// {b in B : b*L in A}.
inline AlgSubmodule colon_into_A(const AlgSubmodule& L) {
  if (L.is_zero()) throw Error(Errc::zero_module, "colon of the zero module");
  const AlgExt& e = *L.ext;
  const Algebra& B = *e.B;
  const std::size_t r = B.rank(), m = e.BmodA.mod.size();
  if (m == 0) return whole_B(L.ext);
  IntMatrix P(r, m * L.rows.size());
  IntVec cm;
  for (std::size_t k = 0; k < L.rows.size(); ++k) {
    IntMatrix Q = B.mul_matrix(L.rows[k]) * e.BmodA.proj;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t t = 0; t < m; ++t) P(i, k * m + t) = Q(i, t);
    cm.insert(cm.end(), e.BmodA.mod.begin(), e.BmodA.mod.end());
  }
  return {L.ext, span_lattice(B, kernel_moduli(P, cm, B.ord))};
}

/// L*B0 as a B0-submodule of B, where `target` is the extension B0 in B.
inline AlgSubmodule extend_scalars(const AlgSubmodule& L, const ExtPtr& target) {
  if (!target->B->same_structure(L.B()) || !lattice_contains(L.B(), target->A, L.ext->A))
    throw Error(Errc::not_intermediate, target->name + " does not lie between the subring and the ambient ring of " + L.ext->name);
  return submodule(target, L.rows);
}

/// The subring B0 = target.A with A in B0 in B, viewed as an A-submodule (for LB0 comparisons).
inline bool extends_to_whole(const AlgSubmodule& L) {
  std::vector<IntVec> g;
  const Algebra& B = L.B();
  for (const auto& x : L.rows)
    for (std::size_t i = 0; i < B.rank(); ++i) g.push_back(B.mul(x, B.basis(i)));
  return span_lattice(B, g) == whole_lattice(B);
}

/// A morphism of extensions (A, B) -> (A', B') given on the basis of B.
struct ExtMorphism {
  ExtPtr src, dst;
  AlgHom hom;

  static ExtMorphism make(const ExtPtr& src, const ExtPtr& dst, const IntMatrix& img) {
    ExtMorphism m{src, dst, AlgHom{src->B, dst->B, img}};
    m.hom.validate();
    for (const auto& a : src->A)
      if (!lattice_contains(*dst->B, dst->A, m.hom.apply(a))) throw Error(Errc::invalid_morphism, "morphism does not carry A into A'");
    return m;
  }
};

inline ExtMorphism identity_morphism(const ExtPtr& e) { return ExtMorphism::make(e, e, IntMatrix::identity(e->rank())); }

inline AlgSubmodule pushforward(const AlgSubmodule& L, const ExtMorphism& phi) {
  if (!same_ext(L.ext, phi.src)) throw Error(Errc::parent_mismatch, "submodule is not over the source of the morphism");
  std::vector<IntVec> g;
  for (const auto& x : L.rows) g.push_back(phi.hom.apply(x));
  return submodule(phi.dst, g);
}

/// A regarded as an algebra, with its inclusion into B.
struct SubringAlgebra {
  AlgPtr alg;
  AlgHom iota;
  IntMatrix G;             // Hermite rows of A inside B
  GroupQuotient coords;    // Z^k (coefficients on G) -> coordinates of alg

  IntVec to_A(const Algebra& B, const IntVec& b) const {
    auto c = solve_moduli(G, B.reduce(b), B.ord, IntVec(G.rows(), 0));
    if (!c) throw Error(Errc::element_not_in_ambient, "element is not in the subring");
    return project(coords, *c);
  }
};

inline SubringAlgebra subring_as_algebra(const ExtPtr& e) {
  const Algebra& B = *e->B;
  const std::size_t k = e->A.size();
  IntMatrix G = IntMatrix::from_rows(e->A, B.rank());
  auto rel = kernel_moduli(G, B.ord, IntVec(k, 0));
  GroupQuotient q = quotient_group(rel, k);
  const std::size_t m = q.mod.size();
  SubringAlgebra S{nullptr, {}, G, q};
  std::vector<IntVec> elts;
  for (std::size_t t = 0; t < m; ++t) elts.push_back(B.reduce(vec_mul(q.section.row(t), G)));
  Algebra a;
  a.ord = q.mod;
  a.table.assign(m, std::vector<IntVec>(m));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) a.table[s][t] = S.to_A(B, B.mul(elts[s], elts[t]));
  a.one = S.to_A(B, B.one);
  a.kind = AlgKind::subring;
  a.base = e->B;
  a.name = "A(" + e->name + ")";
  S.alg = finish(std::move(a));
  IntMatrix img(m, B.rank());
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t j = 0; j < B.rank(); ++j) img(t, j) = elts[t][j];
  S.iota = AlgHom{S.alg, e->B, img};
  S.iota.validate();
  return S;
}

/// B tensor_A B with its two embeddings and the multiplication map onto B.
struct TensorSquare {
  AlgPtr T;
  AlgHom iota1, iota2, mu;
};

inline TensorSquare tensor_square(const ExtPtr& e, const Limits& lim) {
  const Algebra& B = *e->B;
  const std::size_t r = B.rank(), n = r * r;
  auto E = [r](std::size_t i, std::size_t j) { return i * r + j; };
  IntVec mod(n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) mod[E(i, j)] = gcd_int(B.ord[i], B.ord[j]);
  std::vector<IntVec> rel;
  for (const auto& a : e->A)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        IntVec v(n);
        IntVec ai = B.mul(a, B.basis(i)), aj = B.mul(a, B.basis(j));
        for (std::size_t k = 0; k < r; ++k) {
          v[E(k, j)] += ai[k];
          v[E(i, k)] -= aj[k];
        }
        rel.push_back(std::move(v));
      }
  GroupQuotient q = quotient_group(hnf_modular(rel, mod), n);
  const std::size_t m = q.mod.size();
  if (B.finite()) {
    Int size = 1;
    for (const auto& d : q.mod) size *= d;
    if (size > lim.scan_size) throw Error(Errc::size_bound_exceeded, "tensor square of size " + to_dec(size) + " exceeds the scan bound");
  }
  auto tmul = [&](const IntVec& x, const IntVec& y) {
    IntVec z(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (x[a] == 0) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (y[b] == 0) continue;
        Int c = x[a] * y[b];
        const IntVec& p = B.table[a / r][b / r];
        const IntVec& s = B.table[a % r][b % r];
        for (std::size_t u = 0; u < r; ++u) {
          if (p[u] == 0) continue;
          for (std::size_t v = 0; v < r; ++v)
            if (s[v] != 0) z[E(u, v)] += c * p[u] * s[v];
        }
      }
    }
    return z;
  };
  Algebra a;
  a.ord = q.mod;
  a.table.assign(m, std::vector<IntVec>(m));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) a.table[s][t] = project(q, tmul(q.section.row(s), q.section.row(t)));
  IntVec one(n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) one[E(i, j)] = B.one[i] * B.one[j];
  a.one = project(q, one);
  a.kind = AlgKind::tensor_square;
  a.base = e->B;
  a.name = B.name + " (x)_A " + B.name;
  AlgPtr T = finish(std::move(a));
  IntMatrix i1(r, m), i2(r, m), mu(m, r);
  for (std::size_t i = 0; i < r; ++i) {
    IntVec x(n), y(n);
    for (std::size_t j = 0; j < r; ++j) {
      x[E(i, j)] = B.one[j];
      y[E(j, i)] = B.one[j];
    }
    IntVec px = project(q, x), py = project(q, y);
    for (std::size_t t = 0; t < m; ++t) {
      i1(i, t) = px[t];
      i2(i, t) = py[t];
    }
  }
  for (std::size_t t = 0; t < m; ++t) {
    IntVec sec = q.section.row(t), img(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        if (sec[E(i, j)] == 0) continue;
        IntVec p = B.table[i][j];
        for (std::size_t k = 0; k < r; ++k) img[k] += sec[E(i, j)] * p[k];
      }
    img = B.reduce(img);
    for (std::size_t k = 0; k < r; ++k) mu(t, k) = img[k];
  }
  TensorSquare ts{T, AlgHom{e->B, T, i1}, AlgHom{e->B, T, i2}, AlgHom{T, e->B, mu}};
  ts.iota1.validate();
  ts.iota2.validate();
  ts.mu.validate();
  for (std::size_t i = 0; i < r; ++i)
    if (!B.eq(ts.mu.apply(ts.iota1.apply(B.basis(i))), B.basis(i)) || !B.eq(ts.mu.apply(ts.iota2.apply(B.basis(i))), B.basis(i)))
      throw Error(Errc::invalid_structure, "multiplication map does not retract the embeddings");
  return ts;
}

/// Extension B -> B tensor_A B via the first factor, with the multiplication map as retraction.
inline ExtPtr tensor_square_ext(const ExtPtr& e, const TensorSquare& ts) {
  std::vector<IntVec> A;
  for (std::size_t i = 0; i < e->rank(); ++i) A.push_back(ts.iota1.apply(e->B->basis(i)));
  return make_ext(ts.T, A, ts.mu.img * ts.iota1.img, e->B->name + " in " + ts.T->name);
}

/// A -> B tensor_A B (through either factor; they agree on A).
inline ExtPtr tensor_square_base_ext(const ExtPtr& e, const TensorSquare& ts) {
  std::vector<IntVec> A;
  for (const auto& a : e->A) A.push_back(ts.iota1.apply(a));
  return make_ext(ts.T, A, std::nullopt, "A in " + ts.T->name);
}

}  // namespace classext
