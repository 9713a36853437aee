#include <gtest/gtest.h>

#include "gen.hpp"

using namespace classext;

namespace {

bool upper_hermite(const IntMatrix& H) {
  std::size_t last = 0;
  bool seen_zero = false;
  for (std::size_t i = 0; i < H.rows(); ++i) {
    IntVec r = H.row(i);
    std::size_t c = leading_index(r);
    if (c == r.size()) {
      seen_zero = true;
      continue;
    }
    if (seen_zero) return false;
    if (i > 0 && c <= last) return false;
    if (r[c] <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (H(k, c) < 0 || H(k, c) >= r[c]) return false;
    last = c;
  }
  return true;
}

}  // namespace

TEST(Hnf, KnownExample) {
  IntMatrix M = IntMatrix::from_rows({{2, 4}, {6, 8}});
  auto [H, U] = hnf(M);
  EXPECT_EQ(H, IntMatrix::from_rows({{2, 0}, {0, 4}}));
  EXPECT_EQ(U * M, H);
}

TEST(Hnf, RandomMatricesAreCanonical) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m = rng.range(1, 4), n = rng.range(1, 4);
    IntMatrix M = rng.matrix(m, n, 9);
    auto [H, U] = hnf(M);
    ASSERT_TRUE(upper_hermite(H)) << M.str();
    ASSERT_EQ(U * M, H);
    ASSERT_EQ(abs_int(determinant(U)), 1);
    // same lattice: H is a fixed point and every row of M lies in H
    EXPECT_EQ(hnf(H).H, H);
    auto basis = hnf_rows(M.row_list(), n);
    for (const auto& r : M.row_list()) EXPECT_TRUE(hnf_contains(basis, r));
  }
}

TEST(Hnf, InvariantUnderUnimodularRowOperations) {
  gen::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = rng.range(1, 3);
    auto rows = rng.rows(3, n, 7);
    auto base = hnf_rows(rows, n);
    auto shuffled = rows;
    std::swap(shuffled[0], shuffled[2]);
    for (auto& x : shuffled[1]) x = -x;
    Int k = rng.integer(5);
    for (std::size_t j = 0; j < n; ++j) shuffled[0][j] += k * shuffled[1][j];
    EXPECT_EQ(hnf_rows(shuffled, n), base);
  }
}

TEST(Snf, KnownExample) {
  IntMatrix M = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto S = snf(M);
  EXPECT_EQ(snf_diagonal(S.S), (IntVec{2, 6, 12}));
}

TEST(Snf, RandomMatricesDivisibilityChain) {
  gen::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m = rng.range(1, 4), n = rng.range(1, 4);
    IntMatrix M = rng.matrix(m, n, 6);
    auto [S, U, V] = snf(M);
    ASSERT_EQ(U * M * V, S);
    ASSERT_EQ(abs_int(determinant(U)), 1);
    ASSERT_EQ(abs_int(determinant(V)), 1);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) ASSERT_EQ(S(i, j), 0);
    auto d = snf_diagonal(S);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      ASSERT_GE(d[i], 0);
      if (d[i] == 0) ASSERT_EQ(d[i + 1], 0);
      else ASSERT_EQ(d[i + 1] % d[i], 0);
    }
  }
}

TEST(Snf, RepeatedPivotTerminates) {
  IntMatrix M = IntMatrix::from_rows({{2, 0, 0}, {2, 2, 0}, {0, 2, 2}});
  auto S = snf(M);
  EXPECT_EQ(snf_diagonal(S.S), (IntVec{2, 2, 2}));
}

TEST(Kernel, ModularKernelAnnihilates) {
  gen::Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t m = rng.range(1, 4), n = rng.range(1, 3);
    Int mod = rng.range(2, 12);
    IntMatrix M = rng.matrix(m, n, 10);
    IntMatrix K = kernel_mod(M, mod);
    for (const auto& r : K.row_list()) {
      IntVec y = vec_mul(r, M);
      for (const auto& x : y) ASSERT_EQ(mod_floor(x, mod), 0);
    }
  }
}

TEST(Kernel, RowConvention) {
  // x*M = 0 mod 4 for M = [[2],[2]] is spanned by (1,1) and (2,0) modulo 4
  IntMatrix K = kernel_mod(IntMatrix::from_rows({{2}, {2}}), 4);
  std::vector<IntVec> expected{{1, 1}, {0, 2}};
  for (const auto& e : expected) EXPECT_TRUE(hnf_contains(hnf_modular(K.row_list(), {4, 4}), e));
}

TEST(Solve, ModularSolutionsCheckOut) {
  gen::Rng rng(15);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m = rng.range(1, 3), n = rng.range(1, 3);
    Int mod = rng.range(2, 10);
    IntMatrix M = rng.matrix(m, n, 10);
    IntVec x0 = rng.vec(m, 10);
    IntVec b = vec_mul(x0, M);
    auto x = solve_mod(M, b, mod);
    ASSERT_TRUE(x.has_value());
    IntVec got = vec_mul(*x, M);
    for (std::size_t j = 0; j < n; ++j) ASSERT_EQ(mod_floor(got[j] - b[j], mod), 0);
    ++solved;
  }
  EXPECT_EQ(solved, 200);
}

TEST(Solve, InconsistentSystemIsAbsent) {
  EXPECT_FALSE(solve_mod(IntMatrix::from_rows({{2}}), IntVec{1}, 4).has_value());
}

TEST(Integer, GcdAndParsing) {
  auto [g, s, t] = xgcd(240, 46);
  EXPECT_EQ(g, 2);
  EXPECT_EQ(s * 240 + t * 46, 2);
  EXPECT_EQ(parse_int("-123456789012345678901234567890"), Int("-123456789012345678901234567890"));
  EXPECT_THROW(parse_int("12a"), Error);
  EXPECT_EQ(mod_floor(-7, 3), 2);
  EXPECT_EQ(floor_div(-7, 2), -4);
}
