#include <gtest/gtest.h>

#include "gen.hpp"

using namespace classext;

namespace {

QuadSubmodule ideal_2_1(const QuadOrderDesc& A) {
  QuadExt e = QuadExt::make(A, std::nullopt);
  return submodule(e, {QuadElt(-5, 2), QuadElt(-5, 1, 1)});
}

}  // namespace

TEST(Torsor, PowerLawSymmetryAssociativity) {
  auto A = make_quad_order(-20);
  TorsorAlgebra T = build_torsor(A, ideal_2_1(A), 3);
  TorsorCheck c = check_commutativity(T);
  EXPECT_TRUE(c.ok());
  EXPECT_TRUE(c.failures.empty());
  EXPECT_EQ(T.component(0), QuadLattice::order(T.ext.K, 1));
  EXPECT_EQ(T.component(2), lat_scale(T.component(0), QuadElt(-5, 2)));  // L^2 = (2)
  EXPECT_THROW(T.component(4), Error);
}

TEST(Torsor, VanishingCertificate) {
  auto A = make_quad_order(-20);
  TorsorAlgebra T = build_torsor(A, ideal_2_1(A), 3);
  VanishingCertificate V = check_vanishing(T);
  ASSERT_TRUE(V.verified);
  QuadElt s = QuadElt::integer(-5, 0);
  for (const auto& [x, y] : V.pairs) {
    EXPECT_TRUE(T.component(1).contains(x));
    EXPECT_TRUE(T.component(-1).contains(y));
    s = s + x * y;
  }
  EXPECT_EQ(s, QuadElt::integer(-5, 1));
  // (1+sqrt-5) * (1-sqrt-5)/2 - 2 * 1 = 1
  QuadElt a(-5, 1, 1), b(-5, 1, -1, 2);
  EXPECT_EQ(a * b - QuadElt::integer(-5, 2), QuadElt::integer(-5, 1));
  EXPECT_TRUE(T.component(-1).contains(b));
}

TEST(Torsor, TrivialIdealCertificate) {
  auto A = make_quad_order(-20);
  QuadExt e = QuadExt::make(A, std::nullopt);
  TorsorAlgebra T = build_torsor(A, whole_A(e), 2);
  VanishingCertificate V = check_vanishing(T);
  EXPECT_TRUE(V.verified);
  auto u = graded_unit_search(T, 1, 5);
  ASSERT_TRUE(u.unit);
}

TEST(Torsor, UnitSearchMatchesPrincipality) {
  auto A = make_quad_order(-20);
  TorsorAlgebra T = build_torsor(A, ideal_2_1(A), 3);
  EXPECT_FALSE(graded_unit_search(T, 1, 20).unit.has_value());
  auto u0 = graded_unit_search(T, 0, 3);
  ASSERT_TRUE(u0.unit);
  EXPECT_EQ(*u0.unit, QuadElt::integer(-5, 1));
  QuadExt e = QuadExt::make(A, std::nullopt);
  TorsorAlgebra P = build_torsor(A, submodule(e, {QuadElt(-5, 0, 1)}), 3);
  auto u = graded_unit_search(P, 1, 20);
  ASSERT_TRUE(u.unit);
  EXPECT_EQ(submodule(e, {*u.unit}).lat, P.component(1));
  EXPECT_TRUE(P.component(-1).contains(u.unit->inverse()));
  // degree 2 of the non-principal torsor: L^2 = (2) is principal
  EXPECT_TRUE(graded_unit_search(T, 2, 5).unit.has_value());
}

TEST(Torsor, OrderThreeClass) {
  auto A = make_quad_order(-23);
  TorsorAlgebra T = build_torsor(A, form_to_ideal({2, 1, 3}, A), 3);
  EXPECT_TRUE(check_commutativity(T).ok());
  EXPECT_TRUE(check_vanishing(T).verified);
  EXPECT_FALSE(graded_unit_search(T, 1, 20).unit);
  EXPECT_FALSE(graded_unit_search(T, 2, 20).unit);
  EXPECT_TRUE(graded_unit_search(T, 3, 20).unit);
}

TEST(Torsor, RandomDiscriminants) {
  gen::Rng rng(61);
  for (int t = 0; t < 15; ++t) {
    Int D = rng.discriminant(150);
    auto A = make_quad_order(D);
    auto forms = reduced_forms(D);
    const BQF& f = forms[rng.range(0, forms.size() - 1)];
    TorsorAlgebra T = build_torsor(A, form_to_ideal(f, A), 3);
    EXPECT_TRUE(check_commutativity(T).ok()) << D;
    EXPECT_TRUE(check_vanishing(T).verified) << D;
    EXPECT_EQ(graded_unit_search(T, 1, 30).unit.has_value(), f == principal_form(D)) << D << " " << f.str();
  }
}

TEST(Torsor, RejectsBadTruncation) {
  auto A = make_quad_order(-20);
  EXPECT_THROW(build_torsor(A, ideal_2_1(A), 0), Error);
  TorsorAlgebra T = build_torsor(A, ideal_2_1(A), 1);
  EXPECT_THROW(graded_unit_search(T, 2, 3), Error);
}

TEST(Torsor, JsonLayout) {
  auto A = make_quad_order(-20);
  json j = torsor_to_json(build_torsor(A, ideal_2_1(A), 2));
  EXPECT_EQ(j["D"], "-20");
  EXPECT_EQ(j["components"].size(), 5u);
  EXPECT_TRUE(j["components"].contains("-2"));
}
