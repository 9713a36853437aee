#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "classext/abelian_group.hpp"
#include "classext/alg_ext.hpp"
#include "classext/algebra.hpp"
#include "classext/error.hpp"
#include "classext/forms.hpp"
#include "classext/quad_ideal.hpp"

namespace classext {

// ===========================================================================
// Quadratic family

struct QuadInvertible {
  QuadSubmodule L;
  QuadSubmodule Linv;
  std::vector<std::pair<QuadElt, QuadElt>> cert;  // sum of x*y is 1
  bool LB_is_B = false;
};

inline std::optional<QuadInvertible> try_invertible(const QuadSubmodule& L) {
  if (L.is_zero()) throw Error(Errc::zero_module, "invertibility of the zero module");
  QuadSubmodule C = colon_into_A(L);
  if (C.is_zero() || mul(L, C).lat != L.ext.A()) return std::nullopt;
  auto xs = L.lat.basis(), ys = C.lat.basis();
  std::vector<IntVec> rows;
  for (const auto& x : xs)
    for (const auto& y : ys) {
      W0Coords c = to_w0(L.ext.K, x * y);
      rows.push_back({c.a, c.b});
    }
  auto t = solve_moduli(IntMatrix::from_rows(rows, 2), {1, 0}, {0, 0}, IntVec(rows.size(), 0));
  if (!t) throw Error(Errc::invalid_structure, "no certificate although L*L' = A");
  QuadInvertible inv{L, C, {}, false};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    QuadElt y = QuadElt::integer(L.ext.K.d, 0);
    for (std::size_t j = 0; j < ys.size(); ++j) y = y + ys[j].scaled((*t)[i * ys.size() + j]);
    if (!y.is_zero()) inv.cert.emplace_back(xs[i], y);
  }
  QuadElt s = QuadElt::integer(L.ext.K.d, 0);
  for (const auto& [x, y] : inv.cert) s = s + x * y;
  if (s != QuadElt::integer(L.ext.K.d, 1)) throw Error(Errc::invalid_structure, "certificate does not sum to 1");
  inv.LB_is_B = L.ext.b_is_field() ? true : extend_scalars(L, L.ext.fB).lat == L.ext.B();
  if (!inv.LB_is_B) throw Error(Errc::invalid_structure, "invertible ideal with LB != B");
  return inv;
}

inline QuadInvertible require_invertible(const QuadSubmodule& L) {
  auto inv = try_invertible(L);
  if (!inv) throw Error(Errc::not_invertible, L.str() + " is not invertible over " + L.ext.str());
  return *inv;
}

/// Generator g in B* with A*g = L, when L is principal.
inline std::optional<QuadElt> is_principal(const QuadInvertible& I) { return principality_by_forms(I.L).generator; }

/// Class group of O_D realized on reduced forms.
struct QuadClassGroup {
  QuadOrderDesc order;
  std::vector<BQF> forms;
  FiniteAbelianGroup<BQF> group;
};

inline QuadClassGroup class_group_quad(const Int& D) {
  QuadOrderDesc o = make_quad_order(D);
  auto forms = reduced_forms(D);
  FiniteAbelianGroup<BQF> G(
      forms, principal_form(D), [](const BQF& a, const BQF& b) { return compose(a, b); }, [](const BQF& f) { return f.str(); });
  return {o, forms, G};
}

/// Image of a class of O_{fA} in the class group of O_{fB} (fB = 0: the field, trivial group).
inline BQF pic_map(const BQF& f, const QuadOrderDesc& A, const Int& fB) {
  if (fB == 0) return principal_form(A.D0);
  QuadSubmodule L = form_to_ideal(f, A);
  QuadSubmodule LB = extend_scalars(L, fB);
  return reduce(ideal_to_form(LB));
}

/// Kernel of Pic(A) -> Pic(B) together with representatives invertible over (A, B).
struct QuadKernelGroup {
  QuadExt ext;
  std::vector<BQF> forms;
  std::vector<QuadInvertible> reps;  // reps[i] has class forms[i] in Pic(A)
  FiniteAbelianGroup<BQF> group;
};

inline QuadKernelGroup class_group_extension(const QuadExt& e) {
  QuadOrderDesc A = make_quad_order(e.D_A());
  auto all = reduced_forms(A.D);
  std::vector<BQF> ker;
  std::vector<QuadInvertible> reps;
  for (const auto& f : all) {
    QuadSubmodule L = form_to_ideal(f, A);
    if (e.b_is_field()) {
      ker.push_back(f);
      reps.push_back(require_invertible(L));
      continue;
    }
    QuadSubmodule LB = extend_scalars(L, e.fB);
    auto gen = principality_by_forms(LB).generator;
    if (!gen) continue;
    QuadSubmodule L1 = submodule_from_lattice(e, lat_scale(L.lat, gen->inverse()));
    ker.push_back(f);
    reps.push_back(require_invertible(L1));
  }
  FiniteAbelianGroup<BQF> G(
      ker, principal_form(A.D), [](const BQF& a, const BQF& b) { return compose(a, b); }, [](const BQF& f) { return f.str(); });
  return {e, ker, reps, G};
}

/// Every A-submodule L of B = O_{fB} with [B:L] <= m^2, m = fA/fB. Invertible
/// ideals of (A, B) satisfy [B:L][B:L^{-1}] = m^2, so this list contains all of them.
inline std::vector<QuadInvertible> enumerate_invertible_quad(const QuadExt& e) {
  if (e.b_is_field()) throw Error(Errc::enumeration_impossible, "invertible ideals of an order in its field are not finite in number");
  Int m = e.fA / e.fB, bound = m * m;
  std::vector<QuadInvertible> out;
  for (Int n = 1; n <= bound; ++n)
    for (Int a = 1; a <= n; ++a) {
      if (n % a != 0) continue;
      Int c = n / a;
      for (Int b = 0; b < c; ++b) {
        QuadLattice L{e.K, 1, {{a, b * e.fB}, {0, c * e.fB}}};
        if (!is_A_stable(e, L)) continue;
        auto inv = try_invertible(QuadSubmodule{e, L});
        if (inv) out.push_back(*inv);
      }
    }
  return out;
}

/// Canonical representative of L modulo multiplication by units of B (B an order).
inline QuadLattice unit_canonical(const QuadExt& e, const QuadLattice& L) {
  std::optional<QuadLattice> best;
  std::string bk;
  for (const auto& u : order_units(e.K, e.fB)) {
    QuadLattice M = lat_scale(L, u);
    std::string k = M.str();
    if (!best || k < bk) {
      best = M;
      bk = k;
    }
  }
  return *best;
}

/// The class group of an order-in-order extension built from the enumerated
/// invertible ideals modulo {A*u : u in B*}.
struct QuadEnumeratedGroup {
  QuadExt ext;
  std::vector<QuadInvertible> G;            // all invertible ideals
  std::vector<QuadLattice> class_reps;      // canonical representatives
  FiniteAbelianGroup<QuadLattice> group;
  std::size_t units_quotient = 0;           // |B*/A*|
};

inline QuadEnumeratedGroup class_group_enumerated(const QuadExt& e) {
  auto G = enumerate_invertible_quad(e);
  std::map<std::string, QuadLattice> classes;
  for (const auto& I : G) {
    QuadLattice c = unit_canonical(e, I.L.lat);
    classes.emplace(c.str(), c);
  }
  std::vector<QuadLattice> reps;
  for (auto& [k, v] : classes) reps.push_back(v);
  auto op = [e](const QuadLattice& a, const QuadLattice& b) { return unit_canonical(e, lat_mul(a, b)); };
  FiniteAbelianGroup<QuadLattice> grp(reps, unit_canonical(e, e.A()), op, [](const QuadLattice& L) { return L.str(); });
  std::set<std::string> principal;
  for (const auto& u : order_units(e.K, e.fB)) principal.insert(lat_scale(e.A(), u).str());
  return {e, G, reps, grp, principal.size()};
}

// ===========================================================================
// Algebra family

struct AlgInvertible {
  AlgSubmodule L;
  AlgSubmodule Linv;
  std::vector<std::pair<IntVec, IntVec>> cert;
  bool LB_is_B = false;
};

inline std::optional<AlgInvertible> try_invertible(const AlgSubmodule& L) {
  if (L.is_zero()) throw Error(Errc::zero_module, "invertibility of the zero module");
  AlgSubmodule C = colon_into_A(L);
  if (mul(L, C).rows != L.ext->A) return std::nullopt;
  const Algebra& B = L.B();
  std::vector<IntVec> xs, ys;
  for (const auto& x : L.rows)
    if (!B.is_zero(x)) xs.push_back(B.reduce(x));
  for (const auto& y : C.rows)
    if (!B.is_zero(y)) ys.push_back(B.reduce(y));
  std::vector<IntVec> rows;
  for (const auto& x : xs)
    for (const auto& y : ys) rows.push_back(B.mul(x, y));
  auto t = solve_moduli(IntMatrix::from_rows(rows, B.rank()), B.one, B.ord, IntVec(rows.size(), 0));
  if (!t) throw Error(Errc::invalid_structure, "no certificate although L*L' = A");
  AlgInvertible inv{L, C, {}, false};
  IntVec s = B.zero();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    IntVec y = B.zero();
    for (std::size_t j = 0; j < ys.size(); ++j) y = B.add(y, B.scale(ys[j], (*t)[i * ys.size() + j]));
    if (B.is_zero(y)) continue;
    inv.cert.emplace_back(xs[i], y);
    s = B.add(s, B.mul(xs[i], y));
  }
  if (!B.eq(s, B.one)) throw Error(Errc::invalid_structure, "certificate does not sum to 1");
  inv.LB_is_B = extends_to_whole(L);
  if (!inv.LB_is_B) throw Error(Errc::invalid_structure, "invertible ideal with LB != B");
  return inv;
}

inline AlgInvertible require_invertible(const AlgSubmodule& L) {
  auto inv = try_invertible(L);
  if (!inv) throw Error(Errc::not_invertible, L.str() + " is not invertible over " + L.ext->name);
  return *inv;
}

/// Search elements of L for a unit g of B with A*g = L. Finite rings are
/// scanned completely; otherwise coefficients on free pivots are bounded by height.
inline std::optional<IntVec> principal_generator(const AlgSubmodule& L, const Int& height = 20) {
  const Algebra& B = L.B();
  std::optional<IntVec> found;
  auto test = [&](const IntVec& x) {
    if (found || B.is_zero(x)) return;
    if (!is_unit(B, x)) return;
    if (submodule(L.ext, {x}).rows == L.rows) found = x;
  };
  if (B.finite()) {
    for_each_in_lattice(B, L.rows, test);
    return found;
  }
  std::vector<std::size_t> free_rows;
  std::vector<Int> fin_range(L.rows.size(), 0);
  for (std::size_t k = 0; k < L.rows.size(); ++k) {
    std::size_t c = leading_index(L.rows[k]);
    if (B.ord[c] == 0) free_rows.push_back(k);
    else fin_range[k] = B.ord[c] / L.rows[k][c];
  }
  for (Int h = 0; h <= height && !found; ++h) {
    // Coefficient vectors whose free part has sup-norm exactly h.
    std::vector<Int> co(L.rows.size(), 0);
    for (std::size_t k : free_rows) co[k] = -h;
    for (;;) {
      Int mx = 0;
      for (std::size_t k : free_rows) mx = std::max(mx, abs_int(co[k]));
      if (mx == h) {
        IntVec x(B.rank());
        for (std::size_t k = 0; k < L.rows.size(); ++k)
          if (co[k] != 0)
            for (std::size_t j = 0; j < B.rank(); ++j) x[j] += co[k] * L.rows[k][j];
        test(B.reduce(x));
        if (found) return found;
      }
      std::size_t k = 0;
      for (; k < L.rows.size(); ++k) {
        bool fr = std::find(free_rows.begin(), free_rows.end(), k) != free_rows.end();
        co[k] += 1;
        if (fr ? co[k] <= h : co[k] < fin_range[k]) break;
        co[k] = fr ? -h : Int(0);
      }
      if (k == L.rows.size()) break;
    }
  }
  return found;
}

inline std::optional<IntVec> is_principal(const AlgInvertible& I, const Int& height = 20) { return principal_generator(I.L, height); }

/// Units of B when that group is finite and computable: finite rings, imaginary
/// quadratic orders, and idealizations of such orders by finite modules.
inline std::vector<IntVec> finite_unit_group(const Algebra& B, const Limits& lim) {
  if (B.finite()) return all_units(B, lim);
  auto quad_units = [](const Algebra& O) {
    const Int D = O.param;
    const Int bound = abs_int(D) + 2;
    std::vector<IntVec> out;
    for (Int y = -2; y <= 2; ++y)
      for (Int x = -bound; x <= bound; ++x)
        if (x * x + D * x * y + (D * D - D) / 4 * y * y == 1) out.push_back({x, y});
    return out;
  };
  if (B.kind == AlgKind::quad_order) return quad_units(B);
  if (B.kind == AlgKind::idealization && B.base && B.base->kind == AlgKind::quad_order) {
    const std::size_t r = B.base_rank;
    IntVec mord(B.ord.begin() + r, B.ord.end());
    for (const auto& d : mord)
      if (d == 0) throw Error(Errc::unsupported_ring, "idealization by an infinite module");
    Algebra M;
    M.ord = mord;
    std::vector<IntVec> out;
    for (const auto& u : quad_units(*B.base))
      M.for_each_element([&](const IntVec& m) {
        IntVec x = u;
        x.insert(x.end(), m.begin(), m.end());
        out.push_back(x);
      });
    return out;
  }
  throw Error(Errc::unsupported_ring, "unit group of " + B.name + " is not available");
}

/// All A-submodules of a finite B, by closing the cyclic submodules under sums.
inline std::vector<AlgSubmodule> enumerate_submodules(const ExtPtr& e, const Limits& lim) {
  const Algebra& B = *e->B;
  if (!B.finite()) throw Error(Errc::enumeration_impossible, "submodules of an infinite ring");
  if (B.size() > lim.max_size) throw Error(Errc::size_bound_exceeded, "ambient size " + to_dec(B.size()) + " exceeds the enumeration bound " + to_dec(lim.max_size));
  std::map<std::string, std::vector<IntVec>> cyc;
  std::vector<std::pair<IntVec, std::vector<IntVec>>> cyclic;
  B.for_each_element([&](const IntVec& x) {
    if (B.is_zero(x)) return;
    auto S = submodule(e, {x});
    if (cyc.emplace(lattice_key(S.rows), S.rows).second) cyclic.emplace_back(x, S.rows);
  });
  std::map<std::string, std::vector<IntVec>> seen;
  std::deque<std::vector<IntVec>> todo;
  auto zero = zero_lattice(B);
  seen.emplace(lattice_key(zero), zero);
  todo.push_back(zero);
  while (!todo.empty()) {
    auto S = todo.front();
    todo.pop_front();
    for (const auto& [x, C] : cyclic) {
      if (lattice_contains(B, S, x)) continue;
      std::vector<IntVec> g = S;
      g.insert(g.end(), C.begin(), C.end());
      auto T = span_lattice(B, g);
      if (seen.emplace(lattice_key(T), T).second) {
        if (seen.size() > lim.max_submodules) throw Error(Errc::size_bound_exceeded, "more than " + std::to_string(lim.max_submodules) + " submodules");
        todo.push_back(T);
      }
    }
  }
  std::vector<AlgSubmodule> out;
  for (auto& [k, v] : seen) out.push_back({e, v});
  return out;
}

inline std::vector<AlgInvertible> enumerate_invertible(const std::vector<AlgSubmodule>& subs) {
  std::vector<AlgInvertible> out;
  for (const auto& S : subs) {
    if (S.is_zero()) continue;
    auto inv = try_invertible(S);
    if (inv) out.push_back(*inv);
  }
  return out;
}

/// 𝒢(A, B) modulo principal ideals for a finite extension.
struct AlgClassGroup {
  ExtPtr ext;
  std::vector<AlgInvertible> G;
  std::vector<IntVec> units_B;
  std::vector<IntVec> units_A;
  std::vector<std::vector<IntVec>> principal;  // distinct A*u, u in B*
  std::function<std::vector<IntVec>(const std::vector<IntVec>&)> canon;  // lex-minimal member of the class
  FiniteAbelianGroup<std::vector<IntVec>> group;

  std::string class_key(const std::vector<IntVec>& L) const { return lattice_key(canon(L)); }
};

inline AlgClassGroup class_group_extension(const ExtPtr& e, const Limits& lim) {
  const Algebra& B = *e->B;
  auto subs = enumerate_submodules(e, lim);
  auto G = enumerate_invertible(subs);
  auto UB = all_units(B, lim);
  std::vector<IntVec> UA;
  std::map<std::string, std::vector<IntVec>> P;
  for (const auto& u : UB) {
    if (lattice_contains(B, e->A, u)) UA.push_back(u);
    auto S = submodule(e, {u});
    P.emplace(lattice_key(S.rows), S.rows);
  }
  std::vector<std::vector<IntVec>> principal;
  for (auto& [k, v] : P) principal.push_back(v);
  auto canon = [e, principal](const std::vector<IntVec>& L) {
    std::string best;
    std::vector<IntVec> bl;
    for (const auto& p : principal) {
      auto M = mul(AlgSubmodule{e, L}, AlgSubmodule{e, p}).rows;
      std::string k = lattice_key(M);
      if (bl.empty() || k < best) {
        best = k;
        bl = M;
      }
    }
    return bl;
  };
  std::map<std::string, std::vector<IntVec>> classes;
  for (const auto& I : G) {
    auto c = canon(I.L.rows);
    classes.emplace(lattice_key(c), c);
  }
  std::vector<std::vector<IntVec>> reps;
  for (auto& [k, v] : classes) reps.push_back(v);
  auto op = [e, canon](const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
    return canon(mul(AlgSubmodule{e, a}, AlgSubmodule{e, b}).rows);
  };
  FiniteAbelianGroup<std::vector<IntVec>> grp(reps, canon(e->A), op, [](const std::vector<IntVec>& L) { return lattice_key(L); });
  return {e, G, UB, UA, principal, canon, grp};
}

// ---------------------------------------------------------------------------
// Semi-local principalization

/// Maximal ideals of A (as lattices in B coordinates) for a finite extension.
inline std::vector<std::vector<IntVec>> maximal_ideals_of_A(const ExtPtr& e, const Limits& lim) {
  SubringAlgebra S = subring_as_algebra(e);
  std::vector<std::vector<IntVec>> out;
  for (const auto& M : maximal_ideals(S.alg, lim)) {
    std::vector<IntVec> g;
    for (const auto& r : M) g.push_back(S.iota.apply(r));
    out.push_back(span_lattice(*e->B, g));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return lattice_key(a) < lattice_key(b); });
  return out;
}

inline void validate_maximal_ideals(const ExtPtr& e, const std::vector<std::vector<IntVec>>& Ms, const Limits& lim) {
  const Algebra& B = *e->B;
  SubringAlgebra S = subring_as_algebra(e);
  std::set<std::string> keys;
  for (const auto& M0 : Ms) {
    auto M = span_lattice(B, M0);
    if (!lattice_contains(B, e->A, M)) throw Error(Errc::maximal_ideal_list_invalid, "listed ideal is not inside A");
    if (!is_A_stable(e, M)) throw Error(Errc::maximal_ideal_list_invalid, "listed set is not an ideal of A");
    std::vector<IntVec> inA;
    for (const auto& x : M) inA.push_back(S.to_A(B, x));
    auto MA = span_lattice(*S.alg, inA);
    if (MA == whole_lattice(*S.alg)) throw Error(Errc::maximal_ideal_list_invalid, "listed ideal is the unit ideal");
    if (!is_field(*quotient_algebra(S.alg, MA).alg)) throw Error(Errc::maximal_ideal_list_invalid, "listed ideal is not maximal");
    keys.insert(lattice_key(M));
  }
  if (keys.size() != Ms.size()) throw Error(Errc::maximal_ideal_list_invalid, "listed ideals are not distinct");
  if (keys.size() != maximal_ideals(S.alg, lim).size()) throw Error(Errc::maximal_ideal_list_invalid, "list does not contain every maximal ideal");
}

struct SemilocalResult {
  std::vector<std::pair<IntVec, IntVec>> xy;  // x_k in L, y_k in L^{-1}, x_k*y_k not in M_k
  std::vector<IntVec> a;                      // a_k in every M_i (i != k) but not in M_k
  IntVec y;                                   // sum of a_k*y_k
  IntVec g;                                   // y^{-1}, with L = A*g
};

inline SemilocalResult principalize_semilocal(const AlgInvertible& I, const std::vector<std::vector<IntVec>>& Ms, const Limits& lim) {
  const ExtPtr& e = I.L.ext;
  const Algebra& B = *e->B;
  if (mul(I.L, I.Linv).rows != e->A) throw Error(Errc::not_invertible, "ideal is not invertible");
  validate_maximal_ideals(e, Ms, lim);
  SemilocalResult R;
  R.y = B.zero();
  for (std::size_t k = 0; k < Ms.size(); ++k) {
    const auto& Mk = Ms[k];
    std::optional<std::pair<IntVec, IntVec>> pick;
    for (const auto& [x, y] : I.cert)
      if (!lattice_contains(B, Mk, B.mul(x, y))) {
        pick = std::make_pair(x, y);
        break;
      }
    if (!pick) throw Error(Errc::invalid_structure, "certificate lies in a maximal ideal");
    AlgSubmodule Ik = whole_A(e);
    for (std::size_t i = 0; i < Ms.size(); ++i)
      if (i != k) Ik = intersect(Ik, AlgSubmodule{e, Ms[i]});
    std::vector<IntVec> stacked = Ik.rows;
    stacked.insert(stacked.end(), Mk.begin(), Mk.end());
    auto t = solve_moduli(IntMatrix::from_rows(stacked, B.rank()), B.one, B.ord, IntVec(stacked.size(), 0));
    if (!t) throw Error(Errc::maximal_ideal_list_invalid, "maximal ideals are not comaximal");
    IntVec a = B.zero();
    for (std::size_t i = 0; i < Ik.rows.size(); ++i) a = B.add(a, B.scale(Ik.rows[i], (*t)[i]));
    if (lattice_contains(B, Mk, a)) throw Error(Errc::invalid_structure, "CRT element lies in its own maximal ideal");
    R.xy.push_back(*pick);
    R.a.push_back(a);
    R.y = B.add(R.y, B.mul(a, pick->second));
  }
  AlgSubmodule Ay = submodule(e, {R.y});
  if (mul(I.L, Ay).rows != e->A) throw Error(Errc::invalid_structure, "L*(A*y) != A");
  auto g = unit_inverse(B, R.y);
  if (!g) throw Error(Errc::invalid_structure, "y is not a unit of B");
  R.g = *g;
  if (submodule(e, {R.g}).rows != I.L.rows) throw Error(Errc::invalid_structure, "A*g != L");
  return R;
}

}  // namespace classext
