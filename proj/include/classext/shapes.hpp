#pragma once

#include <optional>
#include <vector>

#include "classext/alg_ext.hpp"
#include "classext/algebra.hpp"
#include "classext/quad_ideal.hpp"
#include "classext/quadratic.hpp"

namespace classext {

/// True for algebras built over a base ring R placed in the first base_rank coordinates.
inline bool has_base(const Algebra& B) {
  return B.base && (B.kind == AlgKind::idealization || B.kind == AlgKind::trunc_poly || B.kind == AlgKind::group_ring);
}

/// The retraction B -> R onto the base: M -> 0 for idealizations, x -> 0 for
/// truncated polynomials, g -> 1 for group rings.
inline std::optional<IntMatrix> base_retraction(const Algebra& B) {
  if (!has_base(B)) return std::nullopt;
  const std::size_t r = B.base_rank, n = B.rank();
  IntMatrix f(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < r) f(i, i) = 1;
    else if (B.kind == AlgKind::group_ring) f(i, i % r) = 1;
  }
  return f;
}

/// Embeds an element of the base ring.
inline IntVec from_base(const Algebra& B, const IntVec& x) {
  IntVec y = x;
  y.resize(B.rank());
  return B.reduce(y);
}

inline IntVec to_base(const Algebra& B, const IntVec& x) { return IntVec(x.begin(), x.begin() + B.base_rank); }

/// R in B with its retraction.
inline ExtPtr make_base_ext(const AlgPtr& B) {
  if (!has_base(*B)) throw Error(Errc::no_retraction, B->name + " has no distinguished base ring");
  std::vector<IntVec> A;
  for (std::size_t i = 0; i < B->base_rank; ++i) A.push_back(B->basis(i));
  return make_ext(B, A, base_retraction(*B), B->base->name + " in " + B->name);
}

/// A0 + M inside R + M for a subring A0 of R given in base coordinates.
inline ExtPtr make_idealization_ext(const AlgPtr& B, const std::vector<IntVec>& A0) {
  if (B->kind != AlgKind::idealization) throw Error(Errc::unsupported_shape, B->name + " is not an idealization");
  std::vector<IntVec> A;
  for (const auto& a : A0) A.push_back(from_base(*B, a));
  for (std::size_t i = B->base_rank; i < B->rank(); ++i) A.push_back(B->basis(i));
  return make_ext(B, A, std::nullopt, "A0 (+) M in " + B->name);
}

/// Coordinates of x on {1, w} with w = (D + sqrt D)/2, for x in O_D.
inline IntVec quad_to_alg(const QuadOrderDesc& o, const QuadElt& x) {
  QuadField K = QuadField::of(o);
  W0Coords c = to_w0(K, x);
  if (c.den != 1 || c.b % o.f != 0) throw Error(Errc::element_not_in_ambient, x.str() + " is not in O_" + to_dec(o.D));
  // w = f*w0 + D0*f*(f-1)/2
  Int y = c.b / o.f;
  Int xx = c.a - y * o.D0 * o.f * (o.f - 1) / 2;
  return {xx, y};
}

inline QuadElt alg_to_quad(const QuadOrderDesc& o, const IntVec& v) {
  return QuadElt::integer(o.d, v[0]) + omega_of(o).scaled(v[1]);
}

/// A lattice inside O_D written in algebra coordinates.
inline std::vector<IntVec> quad_lattice_to_alg(const QuadOrderDesc& o, const Algebra& R, const QuadLattice& L) {
  std::vector<IntVec> g;
  for (const auto& x : L.basis()) g.push_back(quad_to_alg(o, x));
  return span_lattice(R, g);
}

}  // namespace classext
