#include <gtest/gtest.h>

#include "yqn/drinfeld.hpp"

using namespace yqn;

#define EXPECT_PASS(r) EXPECT_EQ((r).status, Status::Pass) << (r).name << ": " << (r).witness

using E = AnElement;

namespace {

uint32_t basis_index(int n, uint32_t c, const Perm& w) {
  auto B = hn_basis(n);
  for (uint32_t k = 0; k < B.size(); ++k)
    if (B[k].c == c && B[k].w == w) return k;
  throw std::logic_error("not a basis element");
}

std::vector<GaussRat> column(const SpMat& m, uint32_t c) {
  std::vector<GaussRat> e(m.nc);
  e[c] = GaussRat(1);
  return m.apply(e);
}

}  // namespace

TEST(Drinfeld, PrincipalSeriesOneVariable) {
  GaussRat z = GaussRat::frac(3, 2);
  auto U = principal_series({z});
  ASSERT_EQ(U.dim(), 2u);
  uint32_t one = basis_index(1, 0, perm_id(1)), c1 = basis_index(1, 1, perm_id(1));
  // x1 . 1 = z,  x1 . c1 = -c1 x1 = -z c1
  auto a = column(U.x[0], one), b = column(U.x[0], c1);
  EXPECT_EQ(a[one], z);
  EXPECT_TRUE(a[c1].is_zero());
  EXPECT_EQ(b[c1], -z);
  EXPECT_TRUE(b[one].is_zero());
  EXPECT_EQ(U.par[one], 0);
  EXPECT_EQ(U.par[c1], 1);
}

TEST(Drinfeld, PrincipalSeriesTwoVariables) {
  GaussRat z1(2), z2(-5);
  auto U = principal_series({z1, z2});
  ASSERT_EQ(U.dim(), 8u);
  auto id = perm_id(2), s = transposition(2, 1, 2);
  uint32_t w = basis_index(2, 0, s), one = basis_index(2, 0, id), cc = basis_index(2, 3, id);
  // x1 w12 = w12 x2 - 1 - c1c2
  auto v = column(U.x[0], w);
  std::vector<GaussRat> want(8);
  want[w] = z2;
  want[one] = GaussRat(-1);
  want[cc] = GaussRat(-1);
  EXPECT_EQ(v, want);
  EXPECT_PASS(check_an_module(U));
}

TEST(Drinfeld, ModuleValidation) {
  auto U = principal_series({GaussRat(1), GaussRat(4)});
  auto bad = U.x;
  bad[0] = bad[0] + SpMat::identity(8);  // breaks x1 c1 = -c1 x1
  EXPECT_THROW(AnModule::make(2, U.par, U.w, U.c, bad, "bad"), std::invalid_argument);
  EXPECT_PASS(check_an_module(gamma_pullback(1, 1, 2)));
  EXPECT_PASS(check_an_module(gamma_pullback(1, 2, 1)));
}

TEST(Drinfeld, Coinvariants) {
  for (int N = 1; N <= 2; ++N) {
    auto U = principal_series({GaussRat(3)});
    auto cs = coinvariants(N, U);
    EXPECT_EQ(cs.dim, uint32_t(2 * N));
    EXPECT_EQ(cs.alpha.size(), 1u);
    EXPECT_EQ(cs.alpha[0] * cs.alpha[0], SpMat::identity(cs.amb_dim));
    EXPECT_PASS(check_coinvariants(N, U));
    EXPECT_PASS(check_functor_dim(N, GaussRat(3)));
  }
  EXPECT_PASS(check_coinvariants(1, principal_series({GaussRat(1), GaussRat(2)})));
  EXPECT_PASS(check_generators_suffice(1, principal_series({GaussRat(1), GaussRat(2)})));
  EXPECT_PASS(check_generators_suffice(2, principal_series({GaussRat(1), GaussRat(2)})));
}

TEST(Drinfeld, EvalMatch) {
  EXPECT_PASS(check_eval_match(1, GaussRat(3), 4));
  EXPECT_PASS(check_eval_match(2, GaussRat::frac(-1, 2), 3));
}

TEST(Drinfeld, TableAndLeftIdeal) {
  auto D = functor_apply(1, principal_series({GaussRat(2), GaussRat(7)}), 3);
  EXPECT_PASS(check_functor_table(D));
  EXPECT_PASS(check_left_ideal(D));
  EXPECT_PASS(check_commutation(D, 3));
  EXPECT_PASS(check_table_symmetry(D.rep));
  EXPECT_PASS(check_rtt(D.rep));
  EXPECT_PASS(check_eta_T(D.rep));
}

TEST(Drinfeld, Odot) {
  auto shuffles = shuffle_reps(1, 1);
  EXPECT_EQ(shuffles.size(), 2u);
  EXPECT_EQ(shuffles[0], perm_id(2));
  EXPECT_EQ(shuffle_reps(2, 1).size(), 3u);
  auto W = odot(principal_series({GaussRat(2)}), principal_series({GaussRat(5)}));
  EXPECT_EQ(W.dim(), 8u);
  EXPECT_PASS(check_odot_principal(GaussRat(2), GaussRat(5)));
}

TEST(Drinfeld, TensorProduct) {
  auto U1 = principal_series({GaussRat(2)}), U2 = principal_series({GaussRat(-3)});
  EXPECT_PASS(check_tensor_product(1, U1, U2, 3));
  EXPECT_PASS(check_tensor_product(1, U1, U2, 1));
  EXPECT_PASS(check_tensor_product(2, U1, U2, 2));
  // the map a(x)b(x)a'(x)b' -> a(x)a'(x)b(x)b' matches T^(1) but not T^(2);
  // composed with the flip V'(x)V -> V(x)V' it intertwines everything
  EXPECT_NE(natural_map_defect(1, U1, U2, 3, false), "");
  EXPECT_EQ(natural_map_defect(1, U1, U2, 1, false), "");
  EXPECT_EQ(natural_map_defect(1, U1, U2, 3, true), "");
  EXPECT_EQ(natural_map_defect(2, U1, U2, 2, true), "");
}

TEST(Drinfeld, Functoriality) {
  EXPECT_PASS(check_functoriality(1, principal_series({GaussRat(2), GaussRat(3)}), 5));
}

TEST(Drinfeld, Irreducibility) {
  auto V = functor_apply(1, principal_series({GaussRat(3)}), 2).rep;
  EXPECT_PASS(check_irreducible(V, 2, 10, 1));
  EXPECT_PASS(check_reducible_control(direct_sum(V, V), 2, 10, 1));
  auto r = irreducibility_test(direct_sum(V, V), 2, 10, 1);
  ASSERT_EQ(r.status, Status::Fail);
  EXPECT_GT(r.certificate.size(), 0u);
  EXPECT_LT(r.certificate.size(), 4u);
}

TEST(Drinfeld, TwoPointModule) {
  // already irreducible as an A_2-module, so the quotient is the module itself
  auto U = irreducible_quotient(principal_series({GaussRat(2), GaussRat(5)}), 10, 3);
  EXPECT_EQ(U.dim(), 8u);
  auto D = functor_apply(1, U, 3);
  EXPECT_EQ(D.V.dim, 4u);
  EXPECT_PASS(check_irreducible(D.rep, 3, 10, 3));
  EXPECT_PASS(check_centre_scalars(D.rep, 4));
  EXPECT_PASS(check_rtt(D.rep));
}

TEST(Drinfeld, QuotientOfReducible) {
  // pullback along gamma_2 of (C^{1|1})^{(x)3}: reducible over Q(i)
  auto U = gamma_pullback(1, 2, 1);
  auto r = irreducibility_test(module_generators(U), U.par, 10, 2);
  ASSERT_EQ(r.status, Status::Fail) << r.note;
  auto Q = quotient(U, r.certificate);
  EXPECT_EQ(Q.dim() + r.certificate.size(), U.dim());
  EXPECT_PASS(check_an_module(Q));
  // the quotient splits further only over Q(i, sqrt 2)
  EXPECT_THROW(irreducible_quotient(U, 10, 2), std::runtime_error);
}

TEST(Drinfeld, SplitsOnlyOverExtension) {
  // gamma_1(x_1) squares to 2 here; invariant subspaces need sqrt(2), so no rational certificate exists
  auto U = gamma_pullback(1, 1, 1);
  auto r = irreducibility_test(module_generators(U), U.par, 10, 2);
  EXPECT_EQ(r.status, Status::Inconclusive);
  EXPECT_EQ(r.span_dim, 8u);
}

TEST(Drinfeld, CentreOnIrreducible) {
  auto V = functor_apply(2, principal_series({GaussRat::frac(5, 3)}), 4).rep;
  EXPECT_PASS(check_irreducible(V, 4, 10, 1));
  EXPECT_PASS(check_centre_scalars(V, 5));
}
