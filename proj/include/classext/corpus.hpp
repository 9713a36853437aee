#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "classext/alg_ext.hpp"
#include "classext/algebra.hpp"
#include "classext/classgroup.hpp"
#include "classext/shapes.hpp"

namespace classext {

/// Seeded generator of small finite rings and extensions for property sweeps.
class Corpus {
 public:
  explicit Corpus(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

  AlgPtr random_base() {
    switch (below(6)) {
      case 0:
      case 1: {
        static const int mods[] = {2, 3, 4, 5, 6, 8, 9, 10, 12};
        return make_zmod(mods[below(9)]);
      }
      case 2: {
        static const int q[] = {4, 8, 9};
        int k = q[below(3)];
        return k == 4 ? make_F4() : k == 8 ? make_F8() : make_F9();
      }
      default: {
        static const int mods[] = {2, 3, 4, 5, 6};
        Int n = mods[below(5)];
        IntVec c{Int(below(static_cast<std::uint64_t>(to_ll(n)))), Int(below(static_cast<std::uint64_t>(to_ll(n))))};
        return make_poly_quotient(make_zmod(n), c);
      }
    }
  }

  IntVec random_element(const Algebra& R) {
    IntVec x(R.rank());
    for (std::size_t i = 0; i < R.rank(); ++i) x[i] = Int(below(static_cast<std::uint64_t>(to_ll(R.ord[i]))));
    return x;
  }

  /// R (+) M with M cyclic or 2-generated and random relations.
  AlgPtr random_idealization(const AlgPtr& R) {
    const std::size_t g = 1 + below(2);
    std::vector<std::vector<IntVec>> rels;
    const std::size_t nrel = below(3);
    for (std::size_t k = 0; k < nrel; ++k) {
      std::vector<IntVec> rel;
      for (std::size_t t = 0; t < g; ++t) rel.push_back(random_element(*R));
      rels.push_back(rel);
    }
    return make_idealization(R, g, rels);
  }

  AlgPtr random_ring(const Int& max_size) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      AlgPtr R = random_base();
      switch (below(6)) {
        case 0:
          break;
        case 1:
          R = make_product(R, random_base());
          break;
        case 2:
          R = make_trunc_poly(R, 2 + below(2));
          break;
        case 3:
          R = make_group_ring(R, 2 + below(2));
          break;
        default:
          R = random_idealization(R);
          break;
      }
      if (R->size() <= max_size && R->size() > 1) return R;
    }
    return make_zmod(6);
  }

  /// A subring of B: prime ring, generated by random elements, the base, or B itself.
  ExtPtr random_subring(const AlgPtr& B) {
    switch (below(5)) {
      case 0:
        return make_ext_generated(B, {}, std::nullopt, "prime ring in " + B->name);
      case 1:
        return make_ext_generated(B, {random_element(*B)}, std::nullopt, "Z[x] in " + B->name);
      case 2:
        return make_ext_generated(B, {random_element(*B), random_element(*B)}, std::nullopt, "Z[x,y] in " + B->name);
      case 3:
        if (has_base(*B)) return make_base_ext(B);
        return make_ext_generated(B, {random_element(*B)}, std::nullopt, "Z[x] in " + B->name);
      default:
        return make_trivial_ext(B);
    }
  }

 private:
  std::mt19937_64 rng_;
};

/// `count` finite extensions with ambient size at most max_size whose
/// submodule lattice is small enough to enumerate under `lim`.
inline std::vector<ExtPtr> random_finite_extensions(std::uint64_t seed, std::size_t count, const Int& max_size, const Limits& lim,
                                                    std::size_t max_submodules = 4000) {
  Corpus c(seed);
  Limits tight = lim;
  tight.max_size = max_size;
  tight.max_submodules = max_submodules;
  std::vector<ExtPtr> out;
  for (std::size_t tries = 0; out.size() < count && tries < 50 * count; ++tries) {
    AlgPtr B = c.random_ring(max_size);
    ExtPtr e = c.random_subring(B);
    try {
      enumerate_submodules(e, tight);
    } catch (const Error& err) {
      if (err.code() == Errc::size_bound_exceeded) continue;
      throw;
    }
    out.push_back(e);
  }
  return out;
}

/// Pairs A0 (+) M in R (+) M with A0 a random subring of a finite R.
inline std::vector<ExtPtr> random_idealization_pairs(std::uint64_t seed, std::size_t count, const Int& max_size, const Limits& lim) {
  Corpus c(seed);
  Limits tight = lim;
  tight.max_size = max_size;
  tight.max_submodules = 4000;
  std::vector<ExtPtr> out;
  for (std::size_t tries = 0; out.size() < count && tries < 50 * count; ++tries) {
    AlgPtr R = c.random_base();
    if (c.below(3) == 0) R = make_product(R, c.random_base());
    if (R->size() > 64) continue;
    AlgPtr B = c.random_idealization(R);
    if (B->kind != AlgKind::idealization || B->size() > max_size) continue;
    std::vector<IntVec> A0;
    switch (c.below(3)) {
      case 0:
        A0 = subring_generated(*R, {});
        break;
      case 1:
        A0 = subring_generated(*R, {c.random_element(*R)});
        break;
      default:
        A0 = whole_lattice(*R);
        break;
    }
    ExtPtr e = make_idealization_ext(B, A0);
    try {
      enumerate_submodules(e, tight);
    } catch (const Error& err) {
      if (err.code() == Errc::size_bound_exceeded) continue;
      throw;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace classext
