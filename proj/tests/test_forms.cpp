#include <gtest/gtest.h>

#include <numeric>

#include "gen.hpp"

using namespace classext;

namespace {

/// Reduced primitive forms of discriminant D counted with machine integers.
std::size_t brute_class_number(long long D) {
  std::size_t h = 0;
  for (long long a = 1; 3 * a * a <= -D; ++a)
    for (long long b = -a + 1; b <= a; ++b) {
      if ((b * b - D) % (4 * a) != 0) continue;
      long long c = (b * b - D) / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      ++h;
    }
  return h;
}

}  // namespace

TEST(Forms, ClassNumbersAgreeWithBruteForce) {
  for (long long D = -3; D >= -600; --D) {
    if (!is_valid_discriminant(D)) continue;
    ASSERT_EQ(class_number(D), brute_class_number(D)) << D;
  }
}

TEST(Forms, KnownClassGroups) {
  EXPECT_EQ(class_number(-4), 1u);
  EXPECT_EQ(class_number(-20), 2u);
  EXPECT_EQ(class_number(-23), 3u);
  EXPECT_EQ(class_number(-36), 2u);
  EXPECT_EQ(class_number(-47), 5u);
  EXPECT_EQ(class_number(-163), 1u);
  EXPECT_EQ(class_group_quad(-84).group.invariants(), (IntVec{2, 2}));
  EXPECT_EQ(class_group_quad(-56).group.invariants(), (IntVec{4}));
}

TEST(Forms, ReductionIsIdempotentAndPreservesDiscriminant) {
  gen::Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    Int a = rng.range(1, 50), b = rng.integer(60);
    Int c = (b * b) / (4 * a) + rng.range(1, 30);
    BQF f{a, b, c};
    if (!f.primitive()) continue;
    BQF r = reduce(f);
    EXPECT_TRUE(r.is_reduced());
    EXPECT_EQ(r.disc(), f.disc());
    EXPECT_EQ(reduce(r), r);
  }
}

TEST(Forms, ReductionTrackedMovesMapTheForm) {
  BQF f{33, 30, 7};
  auto r = reduce_tracked(f);
  EXPECT_EQ(r.form, reduce(f));
  EXPECT_TRUE(r.form.is_reduced());
  EXPECT_EQ(r.p * r.s - r.q * r.r, 1);
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y) EXPECT_EQ(r.form.eval(x, y), f.eval(r.p * x + r.q * y, r.r * x + r.s * y));
}

TEST(Forms, CompositionGroupLaws) {
  gen::Rng rng(32);
  for (int t = 0; t < 40; ++t) {
    Int D = rng.discriminant(400);
    auto forms = reduced_forms(D);
    BQF e = principal_form(D);
    for (int s = 0; s < 10; ++s) {
      const BQF& f = forms[rng.range(0, forms.size() - 1)];
      const BQF& g = forms[rng.range(0, forms.size() - 1)];
      const BQF& h = forms[rng.range(0, forms.size() - 1)];
      EXPECT_EQ(compose(f, e), f);
      EXPECT_EQ(compose(f, g), compose(g, f));
      EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
      EXPECT_EQ(compose(f, reduce(f.inverse())), e);
      EXPECT_EQ(form_power(f, static_cast<long long>(forms.size())), e);
    }
  }
}

TEST(Forms, OrderOfClassDividesClassNumber) {
  auto G = class_group_quad(-47);
  for (const auto& f : G.forms) EXPECT_EQ(Int(5) % G.group.element_order(f), 0);
}

TEST(QuadIdeals, FormIdealRoundTrip) {
  gen::Rng rng(33);
  for (int t = 0; t < 40; ++t) {
    Int D = rng.discriminant(300);
    auto o = make_quad_order(D);
    for (const auto& f : reduced_forms(D)) {
      QuadSubmodule L = form_to_ideal(f, o);
      EXPECT_EQ(reduce(ideal_to_form(L)), f) << D;
    }
  }
}

TEST(QuadIdeals, ProductMatchesComposition) {
  gen::Rng rng(34);
  for (int t = 0; t < 30; ++t) {
    Int D = rng.discriminant(300);
    auto o = make_quad_order(D);
    auto forms = reduced_forms(D);
    const BQF& f = forms[rng.range(0, forms.size() - 1)];
    const BQF& g = forms[rng.range(0, forms.size() - 1)];
    QuadSubmodule I = mul(form_to_ideal(f, o), form_to_ideal(g, o));
    EXPECT_EQ(reduce(ideal_to_form(I)), compose(f, g)) << D << " " << f.str() << " " << g.str();
  }
}

TEST(QuadIdeals, ColonGivesInverse) {
  auto o = make_quad_order(-20);
  QuadExt e = QuadExt::make(o, std::nullopt);
  QuadSubmodule L = submodule(e, {QuadElt(-5, 2), QuadElt(-5, 1, 1)});
  QuadSubmodule Li = colon_into_A(L);
  EXPECT_EQ(mul(L, Li).lat, e.A());
  EXPECT_EQ(norm_rel_A(L), Rat(2));
}

TEST(QuadIdeals, LatticeOperationsAreConsistent) {
  gen::Rng rng(35);
  QuadField K = QuadField::of(make_quad_order(-4));
  for (int t = 0; t < 100; ++t) {
    auto x = QuadElt(-1, rng.integer(9), rng.integer(9), 1), y = QuadElt(-1, rng.integer(9), rng.integer(9), 1);
    auto z = QuadElt(-1, rng.integer(9), rng.integer(9), 1);
    if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
    QuadLattice L = QuadLattice::span(K, {x, y}), M = QuadLattice::span(K, {z});
    if (L.rank() < 2) continue;
    EXPECT_TRUE(lat_sum(L, M).contains(L));
    EXPECT_TRUE(lat_sum(L, M).contains(M));
    EXPECT_TRUE(L.contains(lat_intersect(L, lat_sum(L, M))));
    EXPECT_EQ(lat_intersect(L, lat_sum(L, M)), L);
    EXPECT_EQ(lat_mul(L, M), lat_scale(L, z));
  }
}

TEST(QuadIdeals, PrincipalityByForms) {
  auto o = make_quad_order(-20);
  QuadExt e = QuadExt::make(o, std::nullopt);
  EXPECT_FALSE(principality_by_forms(submodule(e, {QuadElt(-5, 2), QuadElt(-5, 1, 1)})).generator);
  auto g = principality_by_forms(submodule(e, {QuadElt(-5, 0, 1)})).generator;
  ASSERT_TRUE(g);
  EXPECT_EQ(submodule(e, {*g}).lat, submodule(e, {QuadElt(-5, 0, 1)}).lat);
}

TEST(QuadIdeals, NormSearchAgreesWithForms) {
  for (int D : {-20, -23, -36, -56, -84, -100}) {
    auto o = make_quad_order(D);
    for (const auto& f : reduced_forms(D)) {
      QuadSubmodule L = form_to_ideal(f, o);
      bool by_forms = principality_by_forms(L).generator.has_value();
      bool by_norm = principal_by_norm_search(L).has_value();
      EXPECT_EQ(by_forms, by_norm) << D << " " << f.str();
      EXPECT_EQ(by_forms, f == principal_form(D));
    }
  }
}
