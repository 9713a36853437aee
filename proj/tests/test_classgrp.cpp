#include <gtest/gtest.h>

#include "gen.hpp"

using namespace classext;

namespace {

Limits lim;

QuadExt conductor_ext(int D, std::optional<int> DB) {
  std::optional<QuadOrderDesc> b;
  if (DB) b = make_quad_order(*DB);
  return QuadExt::make(make_quad_order(D), b);
}

}  // namespace

TEST(QuadClassGroup, KernelOfPicMap) {
  EXPECT_EQ(class_group_extension(conductor_ext(-36, -4)).group.order(), 2u);
  EXPECT_EQ(class_group_extension(conductor_ext(-100, -4)).group.order(), 2u);
  EXPECT_EQ(class_group_extension(conductor_ext(-20, std::nullopt)).group.order(), 2u);
  EXPECT_EQ(class_group_extension(conductor_ext(-20, -20)).group.order(), 1u);
}

TEST(QuadClassGroup, KernelRouteMatchesEnumeration) {
  for (int D0 : {-3, -4, -7, -8, -11, -15, -20}) {
    for (int f : {2, 3, 4, 5}) {
      int D = f * f * D0;
      for (int g = 1; g <= f; ++g) {
        if (f % g != 0 || g == f) continue;
        QuadExt e = conductor_ext(D, g * g * D0);
        auto K = class_group_extension(e);
        auto E = class_group_enumerated(e);
        EXPECT_EQ(K.group.order(), E.group.order()) << D << " in " << g * g * D0;
        // |G(A,B)| = |c(A,B)| * |B*/A*|
        EXPECT_EQ(E.G.size(), E.group.order() * E.units_quotient) << D;
      }
    }
  }
}

TEST(QuadClassGroup, InvertibleIdealsHaveCertificates) {
  QuadExt e = conductor_ext(-36, -4);
  for (const auto& I : enumerate_invertible_quad(e)) {
    QuadElt s = QuadElt::integer(e.K.d, 0);
    for (const auto& [x, y] : I.cert) {
      EXPECT_TRUE(I.L.lat.contains(x));
      EXPECT_TRUE(I.Linv.lat.contains(y));
      s = s + x * y;
    }
    EXPECT_EQ(s, QuadElt::integer(e.K.d, 1));
    EXPECT_TRUE(I.LB_is_B);
  }
}

TEST(QuadClassGroup, NonInvertibleIdealIsRejected) {
  QuadExt e = conductor_ext(-20, std::nullopt);
  // the conductor-type ideal (2, 1+sqrt-5) is invertible in the maximal order
  EXPECT_TRUE(try_invertible(submodule(e, {QuadElt(-5, 2), QuadElt(-5, 1, 1)})).has_value());
  QuadExt n = conductor_ext(-36, std::nullopt);
  // the conductor 3*O_K is an ideal of Z+3Z[i] that is not invertible
  QuadSubmodule c = submodule_from_lattice(n, QuadLattice::from_hnf(n.K, 1, {{3, 0}, {0, 3}}));
  EXPECT_FALSE(try_invertible(c).has_value());
  EXPECT_THROW(require_invertible(c), Error);
}

TEST(QuadClassGroup, PicMapSendsClassesToClasses) {
  auto A = make_quad_order(-36);
  for (const auto& f : reduced_forms(-36)) EXPECT_EQ(pic_map(f, A, 1), principal_form(-4));
  auto C = make_quad_order(-80);
  std::size_t trivial = 0;
  for (const auto& f : reduced_forms(-80)) trivial += pic_map(f, C, 1) == principal_form(-20);
  EXPECT_EQ(trivial, class_group_extension(conductor_ext(-80, -20)).group.order());
}

TEST(AlgClassGroup, FiniteClassGroupsAreTrivial) {
  for (const auto& e : random_finite_extensions(51, 25, 256, lim)) {
    auto C = class_group_extension(e, lim);
    EXPECT_EQ(C.group.order(), 1u) << e->name;
    EXPECT_EQ(C.G.size() * C.units_A.size(), C.units_B.size()) << e->name;
  }
}

TEST(AlgClassGroup, NamedFiniteCounts) {
  auto f = class_group_extension(make_ext_generated(make_F4(), {}, std::nullopt, "F2 in F4"), lim);
  EXPECT_EQ(f.G.size(), 3u);
  auto d = class_group_extension(make_ext_generated(make_product(make_zmod(2), make_zmod(2)), {}, std::nullopt, "diag"), lim);
  EXPECT_EQ(d.G.size(), 1u);
}

TEST(AlgClassGroup, SemilocalGeneratorIsValidated) {
  for (const auto& e : random_finite_extensions(52, 20, 128, lim)) {
    auto Ms = maximal_ideals_of_A(e, lim);
    for (const auto& I : enumerate_invertible(enumerate_submodules(e, lim))) {
      SemilocalResult r = principalize_semilocal(I, Ms, lim);
      EXPECT_EQ(submodule(e, {r.g}).rows, I.L.rows);
      EXPECT_TRUE(is_unit(*e->B, r.g));
    }
  }
}

TEST(AlgClassGroup, BadMaximalIdealListIsRejected) {
  ExtPtr e = make_trivial_ext(make_zmod(6));
  auto Ms = maximal_ideals_of_A(e, lim);
  ASSERT_EQ(Ms.size(), 2u);
  auto I = require_invertible(whole_A(e));
  EXPECT_THROW(principalize_semilocal(I, {Ms[0]}, lim), Error);
}

TEST(AlgClassGroup, EnumerationBoundIsEnforced) {
  Limits tight;
  tight.max_size = 8;
  EXPECT_THROW(enumerate_submodules(make_trivial_ext(make_zmod(16)), tight), Error);
}

TEST(AlgClassGroup, PrincipalGeneratorOverQuadraticOrderAlgebra) {
  AlgPtr R = make_quad_order_algebra(-20);
  ExtPtr e = make_base_ext(make_trunc_poly(R, 2));
  AlgSubmodule L = submodule(e, {{1, 0, 1, 0}});  // A*(1+x)
  ASSERT_TRUE(try_invertible(L).has_value());
  auto g = principal_generator(L);
  ASSERT_TRUE(g.has_value());
  EXPECT_TRUE(is_unit(*e->B, *g));
  EXPECT_EQ(submodule(e, {*g}).rows, L.rows);
}

TEST(Verifiers, PicSequence) {
  EXPECT_TRUE(verify_pic_sequence(conductor_ext(-36, -4)).pass());
  EXPECT_TRUE(verify_pic_sequence(conductor_ext(-20, std::nullopt)).pass());
  EXPECT_TRUE(verify_pic_sequence(conductor_ext(-100, -4)).pass());
}

TEST(Verifiers, TowerAndKernelWitness) {
  QuadField K = QuadField::of(make_quad_order(-4));
  Report r = verify_tower_quad(3, 1, 0, K);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.summary["c(A,B)"]["order"], "2");
  EXPECT_EQ(r.summary["c(A,C)"]["order"], "2");
  EXPECT_EQ(r.summary["c(B,C)"]["order"], "1");
  QuadExt eAC = conductor_ext(-36, std::nullopt);
  QuadInvertible L = require_invertible(submodule(eAC, {QuadElt(-1, 2), QuadElt(-1, -1, 3)}));
  QuadElt x(-1, 1, 1, 1);
  QuadInvertible L1 = recover_kernel_witness(L, x, 1);
  EXPECT_EQ(lat_scale(L1.L.lat, x), L.L.lat);
  EXPECT_EQ(pic_class(L1.L), pic_class(L.L));
  EXPECT_TRUE(verify_tower_quad(1, 1, 1, QuadField::of(make_quad_order(-20))).pass());
}

TEST(Verifiers, FiniteTower) {
  AlgPtr C = make_product(make_product(make_zmod(2), make_zmod(2)), make_zmod(2));
  EXPECT_TRUE(verify_tower_finite(C, subring_generated(*C, {}), subring_generated(*C, {{1, 1, 0}}), lim).pass());
}

TEST(Verifiers, Reduction) {
  EXPECT_TRUE(verify_reduction(make_base_ext(make_idealization(make_zmod(4), 1, {{{2}}})), lim).pass());
  for (const auto& e : random_idealization_pairs(53, 8, 128, lim)) EXPECT_TRUE(verify_reduction(e, lim).pass()) << e->name;
}

TEST(Verifiers, RetractionAndCandidates) {
  AlgPtr O20 = make_quad_order_algebra(-20);
  ExtPtr e = make_base_ext(make_trunc_poly(O20, 2));
  EXPECT_TRUE(check_retraction_vanishing(e, {}, lim).pass());
  auto cands = canonical_nonprincipal_candidates(e);
  ASSERT_FALSE(cands.empty());
  for (const auto& c : cands) EXPECT_FALSE(try_invertible(c).has_value());
  EXPECT_THROW(make_base_ext(make_zmod(4)), Error);
}

TEST(Verifiers, AvoidanceAndControl) {
  EXPECT_TRUE(verify_avoidance_ext(make_ext_generated(make_F4(), {}, std::nullopt, "F2 in F4"), lim).pass());
  Report c = avoidance_control();
  EXPECT_TRUE(c.pass());
}

TEST(Verifiers, UnitsAndTensorSquare) {
  std::size_t squares = 0;
  for (const auto& e : random_finite_extensions(54, 10, 64, lim)) {
    EXPECT_TRUE(verify_units_sequence(e, lim).pass()) << e->name;
    try {
      EXPECT_TRUE(verify_tensor_square(e, lim).pass()) << e->name;
      ++squares;
    } catch (const Error& err) {
      EXPECT_EQ(err.code(), Errc::size_bound_exceeded);
    }
  }
  EXPECT_GT(squares, 3u);
}

TEST(Verifiers, ReportJsonIsSortedAndFiltered) {
  Report r{"x", json{{"k", 1}}};
  r.note({{"b", 2}, {"certificate", "secret"}});
  r.note({{"a", 1}});
  json v0 = r.to_json(0), v1 = r.to_json(1), v2 = r.to_json(2);
  EXPECT_TRUE(v0["witnesses"].empty());
  EXPECT_EQ(v1["witnesses"][0]["a"], 1);
  EXPECT_FALSE(v1["witnesses"][1].contains("certificate"));
  EXPECT_TRUE(v2["witnesses"][1].contains("certificate"));
  r.violate({{"reason", "bad"}});
  EXPECT_EQ(r.to_json(0)["status"], "fail");
  EXPECT_EQ(r.to_json(0)["witnesses"].size(), 1u);
}
