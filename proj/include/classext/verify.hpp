#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "classext/classgroup.hpp"
#include "classext/json_io.hpp"
#include "classext/shapes.hpp"

namespace classext {

/// Outcome of one verifier run. Violations are always reported; other
/// witnesses are shown from verbosity 1 and their certificates from verbosity 2.
struct Report {
  std::string theorem;
  json instance;
  std::vector<json> witnesses;
  std::vector<json> violations;
  json summary = json::object();

  bool pass() const { return violations.empty(); }
  void note(json w) { witnesses.push_back(std::move(w)); }
  void violate(json w) { violations.push_back(std::move(w)); }

  json to_json(int verbosity = 1) const {
    std::vector<json> ws;
    if (verbosity >= 1)
      for (auto w : witnesses) {
        if (verbosity < 2 && w.is_object()) w.erase("certificate");
        ws.push_back(std::move(w));
      }
    for (const auto& v : violations) {
      json w = v;
      w["violation"] = true;
      ws.push_back(std::move(w));
    }
    json j{{"theorem", theorem}, {"instance", instance}, {"status", pass() ? "pass" : "fail"}, {"witnesses", sorted_array(ws)}};
    if (!summary.empty()) j["summary"] = summary;
    return j;
  }
};

inline json group_json(const IntVec& invariants, std::size_t order) {
  return json{{"order", std::to_string(order)}, {"factors", to_json(invariants)}};
}

inline QuadExt field_ext(const QuadExt& e) { return QuadExt{e.K, e.fA, 0}; }

/// Class of an invertible ideal of O_{fA} in Pic(O_{fA}), as a reduced form.
inline BQF pic_class(const QuadSubmodule& L) { return reduce(ideal_to_form(L)); }

// ---------------------------------------------------------------------------
// 0 -> c(A,B) -> Pic(A) -> Pic(B)

inline Report verify_pic_sequence(const QuadExt& e) {
  Report R{"pic-seq", ext_to_json(ExtDesc{e, nullptr})};
  QuadOrderDesc A = make_quad_order(e.D_A());
  QuadClassGroup pic = class_group_quad(A.D);
  QuadKernelGroup ker = class_group_extension(e);
  std::set<std::string> kernel_keys;
  for (const auto& f : ker.forms) kernel_keys.insert(f.str());
  for (const auto& f : pic.forms) {
    QuadSubmodule L = form_to_ideal(f, A);
    json w{{"class", to_json(f)}, {"in_c", kernel_keys.count(f.str()) > 0}};
    bool trivial_image = true;
    if (!e.b_is_field()) {
      BQF img = pic_map(f, A, e.fB);
      QuadSubmodule LB = extend_scalars(L, e.fB);
      bool by_forms = img == principal_form(e.D_B());
      bool by_norms = principal_by_norm_search(QuadSubmodule{field_ext(LB.ext), LB.lat}).has_value();
      if (by_forms != by_norms) R.violate({{"class", to_json(f)}, {"reason", "principality of LB disagrees between forms and norm search"}});
      trivial_image = by_norms;
      w["image"] = to_json(img);
    } else {
      w["image"] = "trivial";
    }
    if (trivial_image != (kernel_keys.count(f.str()) > 0))
      R.violate({{"class", to_json(f)}, {"reason", "membership in c(A,B) differs from triviality of the image"}});
    R.note(w);
  }
  // Injectivity of c(A,B) -> Pic(A) on actual ideals of the extension.
  if (!e.b_is_field()) {
    QuadEnumeratedGroup en = class_group_enumerated(e);
    std::set<std::string> seen;
    for (const auto& Lc : en.class_reps) {
      BQF f = pic_class(QuadSubmodule{field_ext(e), Lc});
      if (!seen.insert(f.str()).second) R.violate({{"class", to_json(f)}, {"reason", "two classes of c(A,B) have the same image in Pic(A)"}});
      if (!kernel_keys.count(f.str())) R.violate({{"class", to_json(f)}, {"reason", "image of c(A,B) is not in the kernel"}});
    }
    if (seen.size() != kernel_keys.size()) R.violate({{"reason", "image of c(A,B) is smaller than the kernel"}, {"image", std::to_string(seen.size())}});
    R.summary["enumerated_G"] = std::to_string(en.G.size());
    R.summary["B*/A*"] = std::to_string(en.units_quotient);
  } else {
    // The map is a homomorphism, so it is injective iff exactly one class lands on a principal ideal.
    std::size_t principal_reps = 0;
    for (std::size_t i = 0; i < ker.reps.size(); ++i)
      if (principal_by_norm_search(ker.reps[i].L)) {
        ++principal_reps;
        if (!(ker.forms[i] == principal_form(e.D_A())))
          R.violate({{"class", to_json(ker.forms[i])}, {"reason", "non-identity class of c(A,K) is principal"}});
      }
    if (principal_reps != 1) R.violate({{"reason", "kernel of c(A,K) -> Pic(A) is not trivial"}, {"principal", std::to_string(principal_reps)}});
  }
  R.summary["Pic(A)"] = group_json(pic.group.invariants(), pic.group.order());
  R.summary["c(A,B)"] = group_json(ker.group.invariants(), ker.group.order());
  return R;
}

// ---------------------------------------------------------------------------
// 0 -> c(A,B) -> c(A,C) -> c(B,C) for A in B in C

/// L1 = {b in B : b*x in L}, invertible over (A,B) with L = L1*x.
inline QuadInvertible recover_kernel_witness(const QuadInvertible& L, const QuadElt& x, const Int& fB) {
  const QuadExt& eAC = L.L.ext;
  QuadExt eAB{eAC.K, eAC.fA, fB};
  QuadLattice L1 = lat_intersect(QuadLattice::order(eAC.K, fB), lat_scale(L.L.lat, x.inverse()));
  if (lat_scale(L1, x) != L.L.lat) throw Error(Errc::invalid_structure, "L1*x != L; x does not generate LB");
  return require_invertible(submodule_from_lattice(eAB, L1));
}

inline Report verify_tower_quad(const Int& fA, const Int& fB, const Int& fC, const QuadField& K) {
  QuadExt eAB{K, fA, fB}, eAC{K, fA, fC}, eBC{K, fB, fC};
  for (const auto& e : {eAB, eAC, eBC})
    if (e.fA <= 0 || (e.fB != 0 && e.fA % e.fB != 0)) throw Error(Errc::unsupported_extension, "conductors do not form a tower");
  Report R{"tower",
           json{{"A", to_dec(eAB.D_A())}, {"B", to_dec(eBC.D_A())}, {"C", fC == 0 ? std::string("field") : to_dec(eAC.D_B())}}};
  auto cAB = class_group_extension(eAB);
  auto cAC = class_group_extension(eAC);
  auto cBC = class_group_extension(eBC);
  std::set<std::string> kAC, kBC;
  for (const auto& f : cAC.forms) kAC.insert(f.str());
  for (const auto& f : cBC.forms) kBC.insert(f.str());
  const BQF oneB = principal_form(eBC.D_A());
  // g : c(A,B) -> c(A,C)
  std::set<std::string> im_g;
  for (const auto& I : cAB.reps) {
    QuadInvertible J = require_invertible(rebase(I.L, eAC));
    BQF f = pic_class(J.L);
    if (!kAC.count(f.str())) R.violate({{"map", "g"}, {"class", to_json(f)}, {"reason", "image is not a class of c(A,C)"}});
    if (!im_g.insert(f.str()).second) R.violate({{"map", "g"}, {"class", to_json(f)}, {"reason", "g is not injective"}});
    BQF h = pic_class(require_invertible(rebase(extend_scalars(J.L, fB), eBC)).L);
    if (h != oneB) R.violate({{"map", "h"}, {"class", to_json(f)}, {"reason", "h(g(L)) is not trivial"}});
  }
  // h : c(A,C) -> c(B,C), and ker h in im g via L1
  std::set<std::string> ker_h;
  for (const auto& I : cAC.reps) {
    BQF f = pic_class(I.L);
    QuadSubmodule LB = rebase(extend_scalars(I.L, fB), eBC);
    QuadInvertible J = require_invertible(LB);
    BQF h = pic_class(J.L);
    json w{{"class", to_json(f)}, {"h", to_json(h)}};
    if (!kBC.count(h.str())) R.violate({{"map", "h"}, {"class", to_json(f)}, {"reason", "image is not a class of c(B,C)"}});
    if (h == oneB) {
      ker_h.insert(f.str());
      auto x = is_principal(J);
      if (!x) {
        R.violate({{"class", to_json(f)}, {"reason", "LB has trivial class but no generator was recovered"}});
        continue;
      }
      QuadInvertible L1 = recover_kernel_witness(I, *x, fB);
      BQF f1 = pic_class(L1.L);
      w["x"] = to_json(*x);
      w["L1"] = to_json(L1.L.lat);
      if (f1 != f) R.violate({{"class", to_json(f)}, {"reason", "class of L1 differs from class of L"}});
      if (!im_g.count(f1.str())) R.violate({{"class", to_json(f)}, {"reason", "kernel element is not in the image of g"}});
    }
    R.note(w);
  }
  if (ker_h != im_g) R.violate({{"reason", "ker h != im g"}});
  R.summary["c(A,B)"] = group_json(cAB.group.invariants(), cAB.group.order());
  R.summary["c(A,C)"] = group_json(cAC.group.invariants(), cAC.group.order());
  R.summary["c(B,C)"] = group_json(cBC.group.invariants(), cBC.group.order());
  return R;
}

/// Finite tower: A and B are subrings of the algebra C.
inline Report verify_tower_finite(const AlgPtr& C, const std::vector<IntVec>& latA, const std::vector<IntVec>& latB, const Limits& lim) {
  ExtPtr eAC = make_ext(C, latA, std::nullopt, "A in C");
  ExtPtr eBC = make_ext(C, latB, std::nullopt, "B in C");
  if (!lattice_contains(*C, eBC->A, eAC->A)) throw Error(Errc::not_intermediate, "A is not contained in B");
  SubringAlgebra Bs = subring_as_algebra(eBC);
  std::vector<IntVec> AinB;
  for (const auto& a : eAC->A) AinB.push_back(Bs.to_A(*C, a));
  ExtPtr eAB = make_ext(Bs.alg, AinB, std::nullopt, "A in B");
  Report R{"tower", json{{"C", C->name}, {"A", to_json(eAC->A)}, {"B", to_json(eBC->A)}}};
  auto cAB = class_group_extension(eAB, lim);
  auto cAC = class_group_extension(eAC, lim);
  auto cBC = class_group_extension(eBC, lim);
  const std::string oneBC = cBC.class_key(eBC->A);
  std::map<std::string, std::string> g_of;  // class in c(A,B) -> class in c(A,C)
  std::set<std::string> im_g;
  for (const auto& I : cAB.G) {
    std::vector<IntVec> img;
    for (const auto& r : I.L.rows) img.push_back(Bs.iota.apply(r));
    auto J = try_invertible(submodule(eAC, img));
    if (!J) {
      R.violate({{"map", "g"}, {"ideal", I.L.str()}, {"reason", "g(L) is not invertible"}});
      continue;
    }
    const std::string src = cAB.class_key(I.L.rows), dst = cAC.class_key(J->L.rows);
    auto [it, fresh] = g_of.emplace(src, dst);
    if (!fresh && it->second != dst) R.violate({{"map", "g"}, {"ideal", I.L.str()}, {"reason", "g is not well defined on classes"}});
    im_g.insert(dst);
  }
  if (im_g.size() != g_of.size()) R.violate({{"map", "g"}, {"reason", "g is not injective"}});
  std::set<std::string> ker_h;
  for (const auto& I : cAC.G) {
    auto LB = extend_scalars(I.L, eBC);
    auto J = try_invertible(LB);
    if (!J) {
      R.violate({{"map", "h"}, {"ideal", I.L.str()}, {"reason", "LB is not invertible over (B,C)"}});
      continue;
    }
    if (cBC.class_key(J->L.rows) != oneBC) continue;
    ker_h.insert(cAC.class_key(I.L.rows));
    auto x = principal_generator(J->L);
    if (!x) {
      R.violate({{"ideal", I.L.str()}, {"reason", "no generator of LB"}});
      continue;
    }
    auto xinv = unit_inverse(*C, *x);
    std::vector<IntVec> scaled;
    for (const auto& r : I.L.rows) scaled.push_back(C->mul(r, *xinv));
    AlgSubmodule L1 = intersect(AlgSubmodule{eAC, span_lattice(*C, scaled)}, AlgSubmodule{eAC, eBC->A});
    std::vector<IntVec> back;
    for (const auto& r : L1.rows) back.push_back(C->mul(r, *x));
    if (span_lattice(*C, back) != I.L.rows) R.violate({{"ideal", I.L.str()}, {"reason", "L1*x != L"}});
    std::vector<IntVec> inB;
    for (const auto& r : L1.rows) inB.push_back(Bs.to_A(*C, r));
    if (!try_invertible(submodule(eAB, inB))) R.violate({{"ideal", I.L.str()}, {"reason", "L1 is not invertible over (A,B)"}});
  }
  if (ker_h != im_g) R.violate({{"reason", "ker h != im g"}});
  R.summary["c(A,B)"] = group_json(cAB.group.invariants(), cAB.group.order());
  R.summary["c(A,C)"] = group_json(cAC.group.invariants(), cAC.group.order());
  R.summary["c(B,C)"] = group_json(cBC.group.invariants(), cBC.group.order());
  R.summary["G"] = json::array({std::to_string(cAB.G.size()), std::to_string(cAC.G.size()), std::to_string(cBC.G.size())});
  return R;
}

// ---------------------------------------------------------------------------
// c(A,B) = c(A_red, B_red)

/// Extension (A_red, B_red) with the reduction morphism.
struct Reduction {
  ExtPtr red;
  ExtMorphism phi;
  IntMatrix section;  // B_red coordinates -> B coordinates
};

inline Reduction reduction_of(const ExtPtr& e, const Limits& lim) {
  const AlgPtr& B = e->B;
  QuotientAlgebra Q = quotient_algebra(B, nilradical(*B, lim), B->name + "_red");
  std::vector<IntVec> Ared;
  for (const auto& a : e->A) Ared.push_back(Q.proj.apply(a));
  ExtPtr red = make_ext(Q.alg, Ared, std::nullopt, "reduction of " + e->name);
  return {red, ExtMorphism::make(e, red, Q.proj.img), Q.section};
}

inline bool reduced_base_idealization(const Algebra& B, const Limits& lim) {
  if (B.kind != AlgKind::idealization) return false;
  if (B.base->kind == AlgKind::quad_order) return true;
  return B.base->finite() && B.base->size() <= lim.scan_size && nilradical(*B.base, lim) == zero_lattice(*B.base);
}

inline Report verify_reduction_finite(const ExtPtr& e, const Limits& lim) {
  Report R{"reduction", json{{"ext", e->name}}};
  Reduction rd = reduction_of(e, lim);
  auto c = class_group_extension(e, lim);
  auto cr = class_group_extension(rd.red, lim);
  const bool formula = reduced_base_idealization(*e->B, lim);
  std::map<std::string, std::string> fwd;
  std::set<std::string> hit;
  for (const auto& I : c.G) {
    AlgSubmodule P = pushforward(I.L, rd.phi);
    auto J = try_invertible(P);
    if (!J) {
      R.violate({{"ideal", I.L.str()}, {"reason", "image under reduction is not invertible"}});
      continue;
    }
    const std::string src = c.class_key(I.L.rows), dst = cr.class_key(P.rows);
    auto [it, fresh] = fwd.emplace(src, dst);
    if (!fresh && it->second != dst) R.violate({{"ideal", I.L.str()}, {"reason", "forward map is not well defined on classes"}});
    hit.insert(dst);
  }
  if (hit.size() != fwd.size()) R.violate({{"reason", "forward map is not injective on classes"}});
  if (hit.size() != cr.group.order()) R.violate({{"reason", "forward map is not surjective on classes"}});
  for (const auto& I : cr.G) {
    std::vector<IntVec> lifted;
    std::string how;
    if (formula) {
      for (const auto& r : I.L.rows) lifted.push_back(vec_mul(r, rd.section));
      how = "generated";
    } else {
      auto g = principal_generator(I.L);
      if (!g) {
        R.violate({{"ideal", I.L.str()}, {"reason", "no generator to lift"}});
        continue;
      }
      lifted.push_back(vec_mul(*g, rd.section));
      how = "unit";
    }
    AlgSubmodule Lt = submodule(e, lifted);
    auto J = try_invertible(Lt);
    if (!J) {
      R.violate({{"ideal", I.L.str()}, {"reason", "lift is not invertible"}});
      continue;
    }
    AlgSubmodule back = pushforward(Lt, rd.phi);
    if (back.rows != I.L.rows) R.violate({{"ideal", I.L.str()}, {"reason", "forward(lift(L)) != L"}});
    if (formula) {
      std::vector<IntVec> inv;
      for (const auto& r : I.Linv.rows) inv.push_back(vec_mul(r, rd.section));
      if (mul(Lt, submodule(e, inv)).rows != e->A) R.violate({{"ideal", I.L.str()}, {"reason", "lift(L)*lift(L^-1) != A"}});
    }
    R.note({{"ideal", I.L.str()}, {"lift", Lt.str()}, {"lift_kind", how}});
  }
  R.summary["c(A,B)"] = group_json(c.group.invariants(), c.group.order());
  R.summary["c(A_red,B_red)"] = group_json(cr.group.invariants(), cr.group.order());
  return R;
}

/// A0 (+) M in O (+) M with O an imaginary quadratic order and M finite.
inline Report verify_reduction_order(const ExtPtr& e, const Limits& lim) {
  const Algebra& B = *e->B;
  if (B.kind != AlgKind::idealization || !B.base || B.base->kind != AlgKind::quad_order)
    throw Error(Errc::unsupported_shape, B.name + " is not an idealization over a quadratic order");
  const Algebra& Rb = *B.base;
  const QuadOrderDesc oB = make_quad_order(Rb.param);
  // A must be A0 (+) M with A0 an order of conductor m*fB.
  std::vector<IntVec> A0g;
  for (const auto& a : e->A) A0g.push_back(to_base(B, a));
  auto A0 = span_lattice(Rb, A0g);
  if (A0.size() != 2 || A0[0] != IntVec{1, 0} || A0[1][0] != 0) throw Error(Errc::unsupported_shape, "subring of the base is not a quadratic order");
  const Int m = A0[1][1];
  for (std::size_t i = B.base_rank; i < B.rank(); ++i)
    if (!lattice_contains(B, e->A, B.basis(i))) throw Error(Errc::unsupported_shape, "subring does not contain the module");
  QuadField K = QuadField::of(oB);
  QuadExt q{K, m * oB.f, oB.f};
  Report R{"reduction", json{{"ext", e->name}, {"A_red", to_dec(q.D_A())}, {"B_red", to_dec(q.D_B())}}};
  auto ker = class_group_extension(q);
  auto units = finite_unit_group(B, lim);
  for (std::size_t i = 0; i < ker.reps.size(); ++i) {
    const QuadInvertible& I = ker.reps[i];
    auto lift = [&](const QuadLattice& L) {
      std::vector<IntVec> g;
      for (const auto& x : quad_lattice_to_alg(oB, Rb, L)) g.push_back(from_base(B, x));
      return submodule(e, g);
    };
    AlgSubmodule Lt = lift(I.L.lat), Lti = lift(I.Linv.lat);
    auto J = try_invertible(Lt);
    json w{{"class", to_json(ker.forms[i])}, {"lift", Lt.str()}};
    if (!J) {
      R.violate({{"class", to_json(ker.forms[i])}, {"reason", "lift is not invertible"}});
      continue;
    }
    if (mul(Lt, Lti).rows != e->A) R.violate({{"class", to_json(ker.forms[i])}, {"reason", "lift(L)*lift(L^-1) != A"}});
    std::vector<IntVec> down;
    for (const auto& r : Lt.rows) down.push_back(to_base(B, r));
    if (span_lattice(Rb, down) != quad_lattice_to_alg(oB, Rb, I.L.lat)) R.violate({{"class", to_json(ker.forms[i])}, {"reason", "forward(lift(L)) != L"}});
    bool principal_bar = is_principal(I).has_value();
    bool principal_up = false;
    for (const auto& u : units)
      if (submodule(e, {u}).rows == Lt.rows) {
        principal_up = true;
        break;
      }
    if (principal_bar != principal_up) R.violate({{"class", to_json(ker.forms[i])}, {"reason", "lift changes the class"}});
    w["principal"] = principal_up;
    w["certificate"] = json::array();
    for (const auto& [x, y] : J->cert) w["certificate"].push_back(json::array({to_json(x), to_json(y)}));
    R.note(w);
  }
  R.summary["c(A_red,B_red)"] = group_json(ker.group.invariants(), ker.group.order());
  R.summary["units(B)"] = std::to_string(units.size());
  return R;
}

inline Report verify_reduction(const ExtPtr& e, const Limits& lim) {
  if (e->B->finite()) return verify_reduction_finite(e, lim);
  return verify_reduction_order(e, lim);
}

// ---------------------------------------------------------------------------
// Retraction vanishing

/// Non-principal invertible ideals of the base order, placed in degree 0.
inline std::vector<AlgSubmodule> canonical_nonprincipal_candidates(const ExtPtr& e) {
  const Algebra& B = *e->B;
  std::vector<AlgSubmodule> out;
  if (!has_base(B) || B.base->kind != AlgKind::quad_order) return out;
  const Algebra& Rb = *B.base;
  QuadOrderDesc o = make_quad_order(Rb.param);
  for (const auto& f : reduced_forms(o.D)) {
    if (f == principal_form(o.D)) continue;
    std::vector<IntVec> g;
    for (const auto& x : quad_lattice_to_alg(o, Rb, form_to_ideal(f, o).lat)) g.push_back(from_base(B, x));
    out.push_back(submodule(e, g));
  }
  return out;
}

/// A unit of B outside the base: 1+m, 1+x, or the group generator.
inline std::optional<IntVec> non_base_unit(const Algebra& B) {
  if (!has_base(B) || B.rank() == B.base_rank) return std::nullopt;
  IntVec u(B.rank());
  const IntVec& one = B.base->one;
  if (B.kind == AlgKind::idealization) {
    u = from_base(B, one);
    u[B.base_rank] += 1;
  } else {
    for (std::size_t i = 0; i < B.base_rank; ++i) u[B.base_rank + i] = one[i];
    if (B.kind == AlgKind::trunc_poly) u = B.add(u, B.one);
  }
  return B.reduce(u);
}

inline Report check_retraction_vanishing(const ExtPtr& e, std::vector<AlgSubmodule> candidates, const Limits& lim, const Int& height = 6) {
  if (!e->retraction) throw Error(Errc::no_retraction, e->name + " carries no retraction");
  Report R{"retraction", json{{"ext", e->name}}};
  const Algebra& B = *e->B;
  bool exhaustive = false;
  if (candidates.empty()) {
    if (B.finite() && B.size() <= lim.max_size) {
      candidates = enumerate_submodules(e, lim);
      exhaustive = true;
    } else {
      candidates = canonical_nonprincipal_candidates(e);
      if (auto u = non_base_unit(B)) {
        candidates.push_back(submodule(e, {*u}));
        for (auto c : canonical_nonprincipal_candidates(e)) {
          std::vector<IntVec> g;
          for (const auto& r : c.rows) g.push_back(B.mul(r, *u));
          candidates.push_back(submodule(e, g));
        }
      }
    }
  }
  const auto nonprincipal = canonical_nonprincipal_candidates(e);
  std::set<std::string> np_keys;
  for (const auto& c : nonprincipal) np_keys.insert(c.str());
  std::size_t invertible = 0;
  for (const auto& L : candidates) {
    if (L.is_zero()) continue;
    auto I = try_invertible(L);
    if (!I) {
      json w{{"candidate", L.str()}, {"invertible", false}};
      if (np_keys.count(L.str())) w["colon_product"] = mul(L, colon_into_A(L)).str();
      R.note(w);
      continue;
    }
    ++invertible;
    auto g = principal_generator(L, height);
    if (!g) {
      R.violate({{"candidate", L.str()}, {"reason", B.finite() ? "invertible but not principal" : "invertible, no generator at height " + to_dec(height)}});
      continue;
    }
    R.note({{"candidate", L.str()}, {"invertible", true}, {"generator", to_json(*g)}});
  }
  for (const auto& L : nonprincipal)
    if (try_invertible(L)) R.violate({{"candidate", L.str()}, {"reason", "non-principal ideal of A is invertible over (A,B)"}});
  R.summary["candidates"] = std::to_string(candidates.size());
  R.summary["invertible"] = std::to_string(invertible);
  R.summary["exhaustive"] = exhaustive;
  return R;
}

// ---------------------------------------------------------------------------
// Semi-local principalization over every invertible ideal

inline Report verify_semilocal(const ExtPtr& e, const Limits& lim) {
  Report R{"semilocal", json{{"ext", e->name}}};
  auto Ms = maximal_ideals_of_A(e, lim);
  auto G = enumerate_invertible(enumerate_submodules(e, lim));
  for (const auto& I : G) {
    try {
      SemilocalResult s = principalize_semilocal(I, Ms, lim);
      const Algebra& B = *e->B;
      if (!is_unit(B, s.g) || submodule(e, {s.g}).rows != I.L.rows) R.violate({{"ideal", I.L.str()}, {"reason", "generator does not validate"}});
      json cert = json::array();
      for (std::size_t k = 0; k < s.xy.size(); ++k)
        cert.push_back({{"x", to_json(s.xy[k].first)}, {"y", to_json(s.xy[k].second)}, {"a", to_json(s.a[k])}});
      R.note({{"ideal", I.L.str()}, {"y", to_json(s.y)}, {"g", to_json(s.g)}, {"certificate", cert}});
    } catch (const Error& err) {
      R.violate({{"ideal", I.L.str()}, {"reason", err.what()}});
    }
  }
  R.summary["maximal_ideals"] = std::to_string(Ms.size());
  R.summary["G"] = std::to_string(G.size());
  return R;
}

// ---------------------------------------------------------------------------
// Avoidance

struct AvoidanceVerdict {
  bool covered = false;                 // L lies in the union of the covers
  std::optional<std::size_t> inside;    // index k with L in L_k
  bool invertible = false;
  bool violation() const { return invertible && covered && !inside; }
};

inline AvoidanceVerdict avoidance_check(const AlgSubmodule& L, const std::vector<AlgSubmodule>& covers) {
  for (const auto& C : covers) check_parent(L, C);
  AvoidanceVerdict v;
  v.invertible = !L.is_zero() && try_invertible(L).has_value();
  for (std::size_t k = 0; k < covers.size(); ++k)
    if (contains(covers[k], L)) {
      v.inside = k;
      break;
    }
  const Algebra& B = L.B();
  if (v.inside) {
    v.covered = true;
  } else if (B.finite()) {
    bool all = true;
    for_each_in_lattice(B, L.rows, [&](const IntVec& x) {
      if (!all) return;
      bool in_some = false;
      for (const auto& C : covers)
        if (contains(C, x)) {
          in_some = true;
          break;
        }
      all = in_some;
    });
    v.covered = all;
  } else {
    throw Error(Errc::enumeration_impossible, "union membership in an infinite ring");
  }
  return v;
}

/// Searches for a cover of L by at most `max_covers` proper submodules; it is
/// enough to use the maximal proper submodules of L.
inline std::optional<std::vector<std::size_t>> find_bad_cover(const AlgSubmodule& L, const std::vector<AlgSubmodule>& subs, std::size_t max_covers) {
  const Algebra& B = L.B();
  std::vector<std::size_t> proper;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i].rows != L.rows && contains(L, subs[i])) proper.push_back(i);
  std::vector<std::size_t> maximal;
  for (std::size_t i : proper) {
    bool is_max = true;
    for (std::size_t j : proper)
      if (j != i && contains(subs[j], subs[i])) {
        is_max = false;
        break;
      }
    if (is_max) maximal.push_back(i);
  }
  std::vector<IntVec> elts;
  for_each_in_lattice(B, L.rows, [&](const IntVec& x) { elts.push_back(x); });
  const std::size_t n = elts.size();
  std::vector<std::vector<bool>> mask(maximal.size(), std::vector<bool>(n));
  for (std::size_t t = 0; t < maximal.size(); ++t)
    for (std::size_t i = 0; i < n; ++i) mask[t][i] = contains(subs[maximal[t]], elts[i]);
  std::vector<std::size_t> pick;
  std::optional<std::vector<std::size_t>> found;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (found) return;
    if (!pick.empty()) {
      bool all = true;
      for (std::size_t i = 0; i < n && all; ++i) {
        bool any = false;
        for (std::size_t t : pick) any = any || mask[t][i];
        all = any;
      }
      if (all) {
        found = std::vector<std::size_t>();
        for (std::size_t t : pick) found->push_back(maximal[t]);
        return;
      }
    }
    if (pick.size() == max_covers) return;
    for (std::size_t t = start; t < maximal.size() && !found; ++t) {
      pick.push_back(t);
      rec(t + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return found;
}

inline Report verify_avoidance_ext(const ExtPtr& e, const Limits& lim, std::size_t max_covers = 4) {
  Report R{"avoidance", json{{"ext", e->name}}};
  auto subs = enumerate_submodules(e, lim);
  std::size_t inv = 0;
  for (const auto& L : subs) {
    if (L.is_zero() || !try_invertible(L)) continue;
    ++inv;
    if (auto bad = find_bad_cover(L, subs, max_covers)) {
      json cov = json::array();
      for (std::size_t i : *bad) cov.push_back(subs[i].str());
      R.violate({{"ideal", L.str()}, {"cover", cov}, {"reason", "invertible ideal covered by proper submodules"}});
    }
  }
  R.summary["submodules"] = std::to_string(subs.size());
  R.summary["invertible"] = std::to_string(inv);
  return R;
}

/// F2 in F4: the whole ring is the union of its three one-dimensional subspaces.
inline Report avoidance_control() {
  Report R{"avoidance-control", json{{"ext", "F2 in F4"}}};
  AlgPtr F4 = make_F4();
  ExtPtr e = make_ext_generated(F4, {}, std::nullopt, "F2 in F4");
  AlgSubmodule L = whole_B(e);
  std::vector<AlgSubmodule> covers{submodule(e, {{1, 0}}), submodule(e, {{0, 1}}), submodule(e, {{1, 1}})};
  AvoidanceVerdict v = avoidance_check(L, covers);
  R.note({{"ideal", L.str()}, {"covered", v.covered}, {"inside_one", v.inside.has_value()}, {"invertible", v.invertible}});
  if (!v.covered || v.inside || v.invertible) R.violate({{"reason", "control case did not show the expected failure of avoidance"}});
  return R;
}

// ---------------------------------------------------------------------------
// 0 -> B*/A* -> G(A,B) -> Pic(A)

inline Report verify_units_sequence(const ExtPtr& e, const Limits& lim) {
  Report R{"units-seq", json{{"ext", e->name}}};
  auto cg = class_group_extension(e, lim);
  std::set<std::string> G;
  for (const auto& I : cg.G) G.insert(I.L.str());
  std::map<std::string, std::size_t> fiber;
  for (const auto& u : cg.units_B) {
    AlgSubmodule P = submodule(e, {u});
    if (!G.count(P.str())) R.violate({{"unit", to_json(u)}, {"reason", "A*u is not among the invertible ideals"}});
    ++fiber[P.str()];
  }
  for (const auto& [k, n] : fiber)
    if (n != cg.units_A.size()) R.violate({{"ideal", k}, {"reason", "fiber of u -> A*u is not a coset of A*"}, {"size", std::to_string(n)}});
  const std::size_t q = cg.units_B.size() / std::max<std::size_t>(1, cg.units_A.size());
  if (cg.units_B.size() % std::max<std::size_t>(1, cg.units_A.size()) != 0) R.violate({{"reason", "|A*| does not divide |B*|"}});
  if (cg.G.size() != q * cg.group.order())
    R.violate({{"reason", "|G(A,B)| != |B*/A*| * |c(A,B)|"}, {"G", std::to_string(cg.G.size())}, {"B*/A*", std::to_string(q)}});
  R.summary["G"] = std::to_string(cg.G.size());
  R.summary["B*"] = std::to_string(cg.units_B.size());
  R.summary["A*"] = std::to_string(cg.units_A.size());
  R.summary["c(A,B)"] = group_json(cg.group.invariants(), cg.group.order());
  return R;
}

// ---------------------------------------------------------------------------
// c(A,B) = c(A, B (x)_A B)

inline Report verify_tensor_square(const ExtPtr& e, const Limits& lim) {
  Report R{"tensor-square", json{{"ext", e->name}}};
  TensorSquare ts = tensor_square(e, lim);
  ExtPtr e2 = tensor_square_base_ext(e, ts);
  auto c1 = class_group_extension(e, lim);
  auto c2 = class_group_extension(e2, lim);
  ExtMorphism phi = ExtMorphism::make(e, e2, ts.iota1.img);
  std::map<std::string, std::string> img;
  std::set<std::string> hit;
  for (const auto& I : c1.G) {
    AlgSubmodule P = pushforward(I.L, phi);
    if (!try_invertible(P)) {
      R.violate({{"ideal", I.L.str()}, {"reason", "image in the tensor square is not invertible"}});
      continue;
    }
    const std::string s = c1.class_key(I.L.rows), d = c2.class_key(P.rows);
    auto [it, fresh] = img.emplace(s, d);
    if (!fresh && it->second != d) R.violate({{"ideal", I.L.str()}, {"reason", "map is not well defined on classes"}});
    hit.insert(d);
  }
  if (hit.size() != img.size() || hit.size() != c2.group.order()) R.violate({{"reason", "canonical map is not bijective on classes"}});
  for (const auto* cg : {&c1, &c2}) {
    std::size_t q = cg->units_B.size() / std::max<std::size_t>(1, cg->units_A.size());
    if (cg->G.size() != q * cg->group.order()) R.violate({{"reason", "units sequence count fails"}, {"ext", cg->ext->name}});
  }
  R.summary["c(A,B)"] = group_json(c1.group.invariants(), c1.group.order());
  R.summary["c(A,BxB)"] = group_json(c2.group.invariants(), c2.group.order());
  R.summary["|BxB|"] = to_dec(ts.T->size());
  R.summary["G"] = json::array({std::to_string(c1.G.size()), std::to_string(c2.G.size())});
  return R;
}

}  // namespace classext
