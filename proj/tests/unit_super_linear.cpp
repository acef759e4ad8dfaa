#include <gtest/gtest.h>

#include "yqn/super_linear.hpp"

using namespace yqn;

TEST(SuperLinear, MatrixUnitParity) {
  EXPECT_EQ(*matrix_unit(1, 1, 1).declared_parity, 0);
  EXPECT_EQ(*matrix_unit(1, 1, -1).declared_parity, 1);
  EXPECT_EQ(matrix_unit(1, 1, -1).parity(), 1);
  EXPECT_THROW(matrix_unit(1, 2, 1), std::out_of_range);
}

TEST(SuperLinear, KoszulConvention) {
  auto a = matrix_unit(1, 1, -1), b = matrix_unit(1, -1, 1);
  // (X (x) Y)(X' (x) Y') with deg X' = deg Y = 1 picks up a minus sign
  auto lhs = koszul_tensor(a, b) * koszul_tensor(b, a);
  auto rhs = koszul_tensor(a * b, b * a).scaled(GaussRat(-1));
  EXPECT_EQ(lhs, rhs);
  auto one = SuperOp::identity(cspace(1, 1));
  EXPECT_EQ(koszul_tensor(one, b) * koszul_tensor(a, one), koszul_tensor(a, b).scaled(GaussRat(-1)));
  EXPECT_EQ(koszul_tensor(one, one), SuperOp::identity(cspace(1, 2)));
}

TEST(SuperLinear, EmbedAndP) {
  for (int N : {1, 2}) {
    auto c = constants(N);
    EXPECT_EQ(embed(matrix_unit(N, 1, 1), {2}, 2), koszul_tensor(SuperOp::identity(cspace(N, 1)), matrix_unit(N, 1, 1)));
    auto P13 = embed(c.P, {1, 3}, 3);
    EXPECT_EQ(P13 * P13, SuperOp::identity(cspace(N, 3)));
    EXPECT_EQ(embed(c.P, {2, 1}, 2), c.P);
    EXPECT_EQ(c.P * c.P, SuperOp::identity(cspace(N, 2)));
    EXPECT_EQ(eta(eta(c.P, 1), 2), -c.P);
    EXPECT_EQ(c.J * c.J, -SuperOp::identity(cspace(N, 1)));
    EXPECT_EQ(c.E, SuperOp::identity(cspace(N, 1)));
    EXPECT_EQ(tau(c.P, 2), c.Q);
  }
  // coefficient of E_{1,-1} (x) E_{-1,1} in P is -1
  auto P = constants(1).P;
  EXPECT_EQ(P.m.get(0 * 2 + 1, 1 * 2 + 0), GaussRat(-1));
}

TEST(SuperLinear, PInvariantAndJSupercommutes) {
  for (int N : {1, 2}) {
    auto c = constants(N);
    auto one = SuperOp::identity(cspace(N, 1));
    for (int i : sindices(N))
      for (int j : sindices(N)) {
        auto X = matrix_unit(N, i, j);
        auto X12 = koszul_tensor(X, one) + koszul_tensor(one, X);
        EXPECT_TRUE(supercommutator(X12, c.P).is_zero());
        if (i > 0) {
          EXPECT_TRUE(supercommutator(c.J, c.F(i, j)).is_zero());
          EXPECT_EQ(eta(c.F(i, j), 1), c.F(i, j));
        }
      }
  }
}

TEST(SuperLinear, TauAntiAndThetaInvolution) {
  int N = 1;
  auto idx = sindices(N);
  for (int a : idx)
    for (int b : idx)
      for (int c : idx)
        for (int d : idx) {
          auto A = matrix_unit(N, a, b), B = matrix_unit(N, c, d);
          int s = (*A.declared_parity) * (*B.declared_parity);
          EXPECT_EQ(tau(A * B, 1), (tau(B, 1) * tau(A, 1)).scaled(GaussRat(s ? -1 : 1)));
          auto AB = koszul_tensor(A, B);
          EXPECT_EQ(theta(theta(AB)), AB);
          EXPECT_EQ(theta(AB), koszul_tensor(B, A).scaled(GaussRat(s ? -1 : 1)));
          EXPECT_EQ(eta(eta(AB, 1), 1), AB);
        }
}

TEST(SuperLinear, MatrixFormIsAlgebraMap) {
  int N = 1;
  auto c = constants(N);
  auto X = koszul_tensor(matrix_unit(N, 1, -1), c.J) + koszul_tensor(c.J, matrix_unit(N, -1, -1));
  auto Y = c.P + SuperOp::identity(c.P.sp).scaled(GaussRat(2)) + koszul_tensor(c.J, c.J).scaled(GaussRat::frac(1, 3));
  EXPECT_EQ(to_matrix(X * Y), to_matrix(X) * to_matrix(Y));
  EXPECT_EQ(from_matrix(to_matrix(X), X.sp), X);
  EXPECT_EQ(op_inverse(Y) * Y, SuperOp::identity(Y.sp));
}
