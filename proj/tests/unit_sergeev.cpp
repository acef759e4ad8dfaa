#include <gtest/gtest.h>

#include <random>

#include "yqn/sergeev.hpp"

using namespace yqn;

#define EXPECT_PASS(r) EXPECT_EQ((r).status, Status::Pass) << (r).name << ": " << (r).witness

using E = AnElement;

TEST(Sergeev, CliffordAndConjugation) {
  auto one = E::scalar(2, GaussRat(1));
  EXPECT_EQ(E::c(2, 1) * E::c(2, 1), -one);
  EXPECT_EQ(E::c(2, 2) * E::c(2, 1), -(E::c(2, 1) * E::c(2, 2)));
  EXPECT_EQ(E::w(2, 1, 2) * E::c(2, 1), E::c(2, 2) * E::w(2, 1, 2));
  // c2 c1 is stored as -c1c2
  auto c21 = E::c(2, 2) * E::c(2, 1);
  ASSERT_EQ(c21.t.size(), 1u);
  EXPECT_EQ(c21.t.begin()->first.c, 3u);
  EXPECT_EQ(c21.t.begin()->second, GaussRat(-1));
  EXPECT_THROW(hn_mul(E::x(2, 1), E::c(2, 1)), std::invalid_argument);
}

TEST(Sergeev, RewritingExamples) {
  auto one = E::scalar(2, GaussRat(1));
  auto x1 = E::x(2, 1), x2 = E::x(2, 2), w = E::w(2, 1, 2), c1 = E::c(2, 1), c2 = E::c(2, 2);
  EXPECT_EQ(x1 * w, w * x2 - one - c1 * c2);
  EXPECT_EQ(x1 * c1, -(c1 * x1));
  EXPECT_EQ(x1 * c2, c2 * x1);
  EXPECT_EQ((x1 * x2) * (x2 * x1), E::basis(2, 0, perm_id(2), {2, 2}));
  // x2 w = w x1 + 1 - c1c2, by conjugating the defining relation
  EXPECT_EQ(x2 * w, w * x1 + one - c1 * c2);
  // x1^2 w by hand: x1(w x2 - 1 - c1c2) = (w x2 - 1 - c1c2) x2 - x1 - x1 c1 c2,
  // x1 c1 c2 = -c1 x1 c2 = -c1 c2 x1
  auto expect = w * x2 * x2 - x2 - c1 * c2 * x2 - x1 + c1 * c2 * x1;
  EXPECT_EQ(x1 * x1 * w, expect);
}

TEST(Sergeev, RelationsAndAssociativity) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_PASS(check_hn_relations(n));
    EXPECT_PASS(check_an_relations(n));
  }
  for (int n = 1; n <= 3; ++n) EXPECT_PASS(check_an_associative(n, 2, 60, 7 + n));
}

TEST(Sergeev, YGenerators) {
  auto ys = y_generators(2);
  EXPECT_EQ(ys[0], E::x(2, 1));
  auto one = E::scalar(2, GaussRat(1));
  EXPECT_EQ(ys[1], E::x(2, 2) - (one + E::c(2, 2) * E::c(2, 1)) * E::w(2, 2, 1));
  EXPECT_EQ(E::w(2, 1, 2) * ys[0] * E::w(2, 1, 2), ys[1]);
  for (int n = 1; n <= 4; ++n) EXPECT_PASS(check_y_relations(n));
}

TEST(Sergeev, Gamma) {
  EXPECT_TRUE(gamma(0, E::x(2, 1)).is_zero());
  auto one = E::scalar(2, GaussRat(1));
  EXPECT_EQ(gamma(1, E::x(1, 1)), (one + E::c(2, 2) * E::c(2, 1)) * E::w(2, 2, 1));
  EXPECT_EQ(gamma(2, E::c(1, 1)), E::c(3, 3));
  for (int n = 1; n <= 3; ++n) {
    EXPECT_PASS(check_gamma0_y(n));
    for (int m = 0; m <= 2; ++m) EXPECT_PASS(check_gamma_relations(m, n));
  }
  EXPECT_PASS(check_gamma_homomorphism(2, 2, 2, 20, 3));
}

TEST(Sergeev, MatrixRep) {
  HnMatrixRep rho(1, 2);
  auto K = constants(1);
  EXPECT_EQ(rho(E::w(2, 1, 2)), K.P);
  EXPECT_EQ(rho(gamma(0, E::x(2, 2))), rho((E::scalar(2, GaussRat(1)) + E::c(2, 2) * E::c(2, 1)) * E::w(2, 2, 1)));
  for (int N = 1; N <= 2; ++N)
    for (int n = 1; n <= 3; ++n) EXPECT_PASS(check_hn_matrix_rep(N, n));
}

TEST(Sergeev, ProductsAgainstMatrices) {
  // gamma_m followed by the matrix representation turns A_n products into matrix products
  int n = 2, m = 2;
  HnMatrixRep rho(2, m + n);
  std::mt19937_64 rng(11);
  auto ps = all_perms(n);
  for (int t = 0; t < 12; ++t) {
    E a(n), b(n);
    for (int k = 0; k < 2; ++k) {
      std::vector<uint8_t> ea{uint8_t(rng() % 2), uint8_t(rng() % 2)}, eb{uint8_t(rng() % 2), uint8_t(rng() % 2)};
      a.add(SKey{uint32_t(rng() % 4), ps[rng() % 2], ea}, GaussRat(1 + k));
      b.add(SKey{uint32_t(rng() % 4), ps[rng() % 2], eb}, GaussRat(2 - 3 * k));
    }
    EXPECT_EQ(rho(gamma(m, a * b)), rho(gamma(m, a)) * rho(gamma(m, b))) << a.str() << " | " << b.str();
  }
}

TEST(Sergeev, Pbw) {
  EXPECT_PASS(check_pbw_independence(2, 0));
  EXPECT_PASS(check_pbw_independence(1, 2));
  EXPECT_PASS(check_pbw_independence(2, 1));
  EXPECT_PASS(check_pbw_independence(3, 2));
}
