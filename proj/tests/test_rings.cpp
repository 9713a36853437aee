#include <gtest/gtest.h>

#include <set>

#include "gen.hpp"

using namespace classext;

namespace {

Limits lim;

/// Ring axioms checked elementwise on a finite algebra.
void expect_ring_axioms(const Algebra& R) {
  auto el = R.elements();
  ASSERT_EQ(Int(el.size()), R.size());
  for (const auto& x : el) {
    EXPECT_TRUE(R.eq(R.mul(R.one, x), x));
    for (const auto& y : el) {
      ASSERT_TRUE(R.eq(R.mul(x, y), R.mul(y, x))) << R.name;
      if (el.size() > 64) continue;
      for (const auto& z : el) {
        ASSERT_TRUE(R.eq(R.mul(R.mul(x, y), z), R.mul(x, R.mul(y, z)))) << R.name;
        ASSERT_TRUE(R.eq(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z)))) << R.name;
      }
    }
  }
}

std::size_t count_units_brute(long long n) {
  std::size_t c = 0;
  for (long long a = 0; a < n; ++a)
    for (long long b = 0; b < n; ++b)
      if (a * b % n == 1 % n) {
        ++c;
        break;
      }
  return c;
}

}  // namespace

TEST(QuadOrder, ConductorAndField) {
  auto o = make_quad_order(-36);
  EXPECT_EQ(o.D0, -4);
  EXPECT_EQ(o.f, 3);
  EXPECT_EQ(o.d, -1);
  auto p = make_quad_order(-75);
  EXPECT_EQ(p.D0, -3);
  EXPECT_EQ(p.f, 5);
  EXPECT_THROW(make_quad_order(-5), Error);
  EXPECT_THROW(make_quad_order(5), Error);
  EXPECT_THROW(make_quad_order(9), Error);
}

TEST(QuadOrder, ElementArithmetic) {
  QuadElt x(-5, 1, 1, 1), y(-5, 1, -1, 1);
  EXPECT_EQ(x * y, QuadElt::integer(-5, 6));
  EXPECT_EQ(x.norm(), Rat(6));
  EXPECT_EQ(x * x.inverse(), QuadElt::integer(-5, 1));
  gen::Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    Int d = std::vector<int>{-1, -2, -3, -5, -7, -11}[rng.range(0, 5)];
    QuadElt a(d, rng.integer(20), rng.integer(20), rng.range(1, 4));
    QuadElt b(d, rng.integer(20), rng.integer(20), rng.range(1, 4));
    EXPECT_EQ((a * b).norm(), a.norm() * b.norm());
    EXPECT_EQ((a + b).conj(), a.conj() + b.conj());
    if (!b.is_zero()) EXPECT_EQ((a * b) * b.inverse(), a);
  }
}

TEST(QuadOrder, UnitsOfOrders) {
  auto Qi = QuadField::of(make_quad_order(-4));
  EXPECT_EQ(order_units(Qi, 1).size(), 4u);
  EXPECT_EQ(order_units(Qi, 3).size(), 2u);
  auto Qw = QuadField::of(make_quad_order(-3));
  EXPECT_EQ(order_units(Qw, 1).size(), 6u);
  EXPECT_EQ(order_units(QuadField::of(make_quad_order(-20)), 1).size(), 2u);
}

TEST(QuadOrder, AlgebraRoundTrip) {
  for (int D : {-3, -4, -20, -23, -36, -75}) {
    auto o = make_quad_order(D);
    AlgPtr R = make_quad_order_algebra(D);
    EXPECT_FALSE(R->finite());
    QuadElt w = omega_of(o);
    IntVec v = quad_to_alg(o, w);
    EXPECT_EQ(v, (IntVec{0, 1}));
    EXPECT_EQ(alg_to_quad(o, R->mul(v, v)), w * w);
  }
}

TEST(Finite, ZmodUnitsMatchBruteForce) {
  for (long long n = 2; n <= 30; ++n) {
    AlgPtr R = make_zmod(n);
    EXPECT_EQ(all_units(*R, lim).size(), count_units_brute(n)) << n;
  }
}

TEST(Finite, ConstructionsSatisfyRingAxioms) {
  expect_ring_axioms(*make_zmod(12));
  expect_ring_axioms(*make_F4());
  expect_ring_axioms(*make_F9());
  expect_ring_axioms(*make_product(make_zmod(2), make_zmod(3)));
  expect_ring_axioms(*make_idealization(make_zmod(4), 1, {{{2}}}));
  expect_ring_axioms(*make_trunc_poly(make_zmod(3), 3));
  expect_ring_axioms(*make_group_ring(make_zmod(2), 3));
  expect_ring_axioms(*make_poly_quotient(make_zmod(4), {1, 1}));
}

TEST(Finite, RandomCorpusRingsAreRings) {
  Corpus c(22);
  for (int t = 0; t < 25; ++t) {
    AlgPtr R = c.random_ring(64);
    R->validate();
    expect_ring_axioms(*R);
  }
}

TEST(Finite, FieldsAndMaximalIdeals) {
  EXPECT_TRUE(is_field(*make_F4()));
  EXPECT_TRUE(is_field(*make_F8()));
  EXPECT_TRUE(is_field(*make_F9()));
  EXPECT_FALSE(is_field(*make_zmod(6)));
  EXPECT_EQ(maximal_ideals(make_zmod(6), lim).size(), 2u);
  EXPECT_EQ(maximal_ideals(make_zmod(30), lim).size(), 3u);
  EXPECT_EQ(maximal_ideals(make_zmod(8), lim).size(), 1u);
  EXPECT_EQ(maximal_ideals(make_product(make_F4(), make_zmod(3)), lim).size(), 2u);
  // x^2 + 1 splits mod 5, stays irreducible mod 3
  EXPECT_EQ(maximal_ideals(make_poly_quotient(make_zmod(5), {1, 0}), lim).size(), 2u);
  EXPECT_EQ(maximal_ideals(make_poly_quotient(make_zmod(3), {1, 0}), lim).size(), 1u);
}

TEST(Finite, MaximalIdealsHavePrimeFieldQuotients) {
  Corpus c(23);
  for (int t = 0; t < 20; ++t) {
    AlgPtr R = c.random_ring(64);
    for (const auto& M : maximal_ideals(R, lim)) {
      auto Q = quotient_algebra(R, M);
      EXPECT_TRUE(is_field(*Q.alg)) << R->name;
    }
  }
}

TEST(Finite, NilradicalAndReduction) {
  AlgPtr R = make_trunc_poly(make_zmod(4), 2);  // Z/4[e]/(e^2)
  auto N = nilradical(*R, lim);
  EXPECT_EQ(lattice_size(*R, N), 8);
  auto red = reduce_ring(R, lim);
  EXPECT_EQ(red.alg->size(), 2);
  EXPECT_TRUE(is_field(*red.alg));
  AlgPtr I = make_idealization(make_zmod(6), 1, {});
  EXPECT_EQ(reduce_ring(I, lim).alg->size(), 6);
}

TEST(Finite, IdealizationSquaresModuleToZero) {
  AlgPtr R = make_idealization(make_zmod(4), 2, {{{2}, {0}}});
  EXPECT_EQ(R->size(), 4 * 2 * 4);
  for (std::size_t i = R->base_rank; i < R->rank(); ++i)
    for (std::size_t j = R->base_rank; j < R->rank(); ++j) EXPECT_TRUE(R->is_zero(R->mul(R->basis(i), R->basis(j))));
}

TEST(Finite, GroupRingOfCyclicGroup) {
  AlgPtr R = make_group_ring(make_zmod(3), 3);
  EXPECT_EQ(R->size(), 27);
  IntVec g = R->basis(1);
  EXPECT_TRUE(R->eq(R->pow(g, 3), R->one));
  // augmentation ideal is nilpotent in characteristic 3
  EXPECT_EQ(maximal_ideals(R, lim).size(), 1u);
}

TEST(Finite, TotalRingOfFractions) {
  EXPECT_TRUE(total_fractions_is_identity(*make_zmod(12), lim));
  EXPECT_TRUE(total_fractions_is_identity(*make_idealization(make_zmod(4), 1, {{{2}}}), lim));
}

TEST(Finite, SizeBoundIsEnforced) {
  Limits tight;
  tight.scan_size = 10;
  EXPECT_THROW(nilradical(*make_zmod(12), tight), Error);
}

TEST(Finite, InconsistentTableIsRejected) {
  // e0*e1 = e1 but e1*e0 = 0
  std::vector<std::vector<IntVec>> table{{{1, 0}, {0, 1}}, {{0, 0}, {0, 0}}};
  EXPECT_THROW(make_finite({2, 2}, table, {1, 0}, "bad"), Error);
}

TEST(Json, ParsesDescriptors) {
  auto R = parse_algebra(json::parse(R"({"kind":"idealization","base":{"kind":"zmod","n":"4"},"module":{"gens":"1","rels":[["2"]]}})"));
  EXPECT_EQ(R->size(), 8);
  auto T = parse_algebra(json::parse(R"({"kind":"trunc_poly","base":{"kind":"zmod","n":3},"k":3})"));
  EXPECT_EQ(T->size(), 27);
  auto G = parse_algebra(json::parse(R"({"kind":"group_ring","base":{"kind":"zmod","n":"2"},"order":"4"})"));
  EXPECT_EQ(G->size(), 16);
  auto F = parse_algebra(json::parse(R"({"kind":"finite","n":"2","rank":"2","mul":[[["1","0"],["0","1"]],[["0","1"],["1","1"]]],"one":["1","0"]})"));
  EXPECT_TRUE(is_field(*F));
  EXPECT_THROW(parse_algebra(json::parse(R"({"kind":"nonsense"})")), Error);
  EXPECT_THROW(parse_algebra(json::parse(R"({"kind":"zmod"})")), Error);
}
