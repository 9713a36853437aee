#include <gtest/gtest.h>

#include "gen.hpp"

using namespace classext;

namespace {

Limits lim;

ExtPtr f2_in_f4() { return make_ext_generated(make_F4(), {}, std::nullopt, "F2 in F4"); }
ExtPtr diagonal() { return make_ext_generated(make_product(make_zmod(2), make_zmod(2)), {}, std::nullopt, "diag"); }

}  // namespace

TEST(AlgExt, SubringGeneratedIsASubring) {
  Corpus c(41);
  for (int t = 0; t < 30; ++t) {
    AlgPtr B = c.random_ring(128);
    ExtPtr e = c.random_subring(B);
    EXPECT_TRUE(lattice_contains(*B, e->A, B->one));
    for (const auto& x : e->A)
      for (const auto& y : e->A) EXPECT_TRUE(lattice_contains(*B, e->A, B->mul(x, y)));
  }
}

TEST(AlgExt, RejectsNonSubring) {
  AlgPtr B = make_zmod(6);
  EXPECT_THROW(make_ext(B, {{2}}), Error);  // 2Z/6 misses 1
}

TEST(AlgExt, SubmoduleArithmetic) {
  Corpus c(42);
  for (int t = 0; t < 30; ++t) {
    AlgPtr B = c.random_ring(64);
    ExtPtr e = c.random_subring(B);
    IntVec x = c.random_element(*B), y = c.random_element(*B);
    AlgSubmodule L = submodule(e, {x}), M = submodule(e, {y});
    EXPECT_TRUE(is_A_stable(e, L.rows));
    EXPECT_TRUE(contains(L, x));
    EXPECT_TRUE(contains(sum(L, M), L));
    EXPECT_TRUE(contains(sum(L, M), M));
    EXPECT_TRUE(contains(L, intersect(L, M)));
    EXPECT_EQ(mul(L, M), mul(M, L));
    EXPECT_TRUE(contains(mul(L, M), B->mul(x, y)));
    EXPECT_EQ(mul(L, whole_A(e)), L);
    // L * (A : L) is contained in A
    if (!L.is_zero()) EXPECT_TRUE(contains(whole_A(e), mul(L, colon_into_A(L))));
  }
}

TEST(AlgExt, InvertibleIdealsOfFieldExtension) {
  ExtPtr e = f2_in_f4();
  auto subs = enumerate_submodules(e, lim);
  EXPECT_EQ(subs.size(), 5u);  // 0, three lines, F4
  auto G = enumerate_invertible(subs);
  EXPECT_EQ(G.size(), 3u);
  for (const auto& I : G) {
    EXPECT_EQ(mul(I.L, I.Linv).rows, e->A);
    EXPECT_TRUE(I.LB_is_B);
  }
  EXPECT_FALSE(try_invertible(whole_B(e)).has_value());
}

TEST(AlgExt, InvertibilityCertificateReconstructsOne) {
  Corpus c(43);
  auto exts = random_finite_extensions(43, 15, 64, lim);
  for (const auto& e : exts) {
    const Algebra& B = *e->B;
    for (const auto& I : enumerate_invertible(enumerate_submodules(e, lim))) {
      IntVec s = B.zero();
      for (const auto& [x, y] : I.cert) {
        EXPECT_TRUE(contains(I.L, x));
        EXPECT_TRUE(contains(I.Linv, y));
        s = B.add(s, B.mul(x, y));
      }
      EXPECT_TRUE(B.eq(s, B.one));
    }
  }
}

TEST(AlgExt, ExtendScalarsAndPushforward) {
  AlgPtr C = make_product(make_product(make_zmod(2), make_zmod(2)), make_zmod(2));
  ExtPtr eAC = make_ext_generated(C, {}, std::nullopt, "A in C");
  ExtPtr eBC = make_ext_generated(C, {{1, 1, 0}}, std::nullopt, "B in C");
  AlgSubmodule L = submodule(eAC, {{1, 1, 1}});
  EXPECT_EQ(extend_scalars(L, eBC).rows, eBC->A);
  ExtMorphism id = identity_morphism(eAC);
  EXPECT_EQ(pushforward(L, id), L);
}

TEST(AlgExt, SubringAsAlgebra) {
  ExtPtr e = make_ext_generated(make_product(make_zmod(4), make_zmod(4)), {{1, 3}}, std::nullopt, "Z/4[(1,3)]");
  SubringAlgebra S = subring_as_algebra(e);
  EXPECT_EQ(S.alg->size(), lattice_size(*e->B, e->A));
  for (const auto& a : e->A) EXPECT_EQ(S.iota.apply(S.to_A(*e->B, a)), e->B->reduce(a));
}

TEST(AlgExt, TensorSquareSizes) {
  auto ts = tensor_square(f2_in_f4(), lim);
  EXPECT_EQ(ts.T->size(), 16);
  auto td = tensor_square(diagonal(), lim);
  EXPECT_EQ(td.T->size(), 16);
  auto tt = tensor_square(make_trivial_ext(make_zmod(6)), lim);
  EXPECT_EQ(tt.T->size(), 6);
  // mu o iota1 = id
  for (const auto& b : f2_in_f4()->B->elements()) EXPECT_EQ(ts.mu.apply(ts.iota1.apply(b)), f2_in_f4()->B->reduce(b));
}

TEST(AlgExt, QuotientAlgebraProjectsHomomorphically) {
  AlgPtr R = make_zmod(12);
  auto Q = quotient_algebra(R, ideal_lattice(*R, {{4}}));
  EXPECT_EQ(Q.alg->size(), 4);
  gen::Rng rng(44);
  for (int t = 0; t < 50; ++t) {
    IntVec x{rng.range(0, 11)}, y{rng.range(0, 11)};
    EXPECT_EQ(Q.proj.apply(R->mul(x, y)), Q.alg->mul(Q.proj.apply(x), Q.proj.apply(y)));
  }
}

TEST(QuadExt, SubmoduleValidation) {
  auto A = make_quad_order(-36), B = make_quad_order(-4);
  QuadExt e = QuadExt::make(A, B);
  EXPECT_THROW(QuadExt::make(B, A), Error);
  EXPECT_THROW(QuadExt::make(make_quad_order(-20), B), Error);
  // Z + Z*i is not stable under multiplication by 3i
  QuadLattice L = QuadLattice::from_hnf(e.K, 1, {{1, 0}, {0, 1}});
  EXPECT_TRUE(is_A_stable(e, L));
  QuadLattice M = QuadLattice::from_hnf(e.K, 1, {{1, 0}, {0, 2}});
  EXPECT_FALSE(is_A_stable(e, M));
  EXPECT_THROW(submodule_from_lattice(e, M), Error);
}

TEST(QuadExt, ExtendScalarsToMaximalOrder) {
  auto A = make_quad_order(-36);
  QuadExt e = QuadExt::make(A, std::nullopt);
  QuadSubmodule L = submodule(e, {QuadElt(-1, 2), QuadElt(-1, -1, 3)});
  QuadSubmodule LB = extend_scalars(L, 1);
  EXPECT_EQ(LB.lat, lat_scale(QuadLattice::order(e.K, 1), QuadElt(-1, 1, 1)));
}

TEST(Json, ExtensionDocuments) {
  auto e = parse_extension(json::parse(R"({"A":{"kind":"quad_order","D":"-36"},"B":{"kind":"quad_order","D":"-4"}})"));
  ASSERT_TRUE(e.is_quad());
  EXPECT_EQ(e.quad->fA, 3);
  auto f = parse_extension(json::parse(R"({"B":{"kind":"field","q":"4"},"A":"prime"})"));
  ASSERT_FALSE(f.is_quad());
  EXPECT_EQ(lattice_size(*f.alg->B, f.alg->A), 2);
  auto s = parse_submodule(json::parse(R"({"ext":{"A":{"kind":"quad_order","D":"-20"},"B":{"kind":"quad_field","D":"-20"}},"den":"1","hnf":[["1","1"],["0","2"]]})"));
  ASSERT_TRUE(s.quad);
  EXPECT_EQ(norm_rel_A(*s.quad), Rat(2));
  EXPECT_THROW(parse_extension(json::parse(R"({"A":{"kind":"quad_order","D":"-4"},"B":{"kind":"quad_order","D":"-36"}})")), Error);
}
