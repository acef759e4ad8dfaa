#include <gtest/gtest.h>

#include "yqn/yangian.hpp"

using namespace yqn;

#define EXPECT_PASS(r) EXPECT_EQ((r).status, Status::Pass) << (r).name << ": " << (r).witness
#define EXPECT_FAILS(r) EXPECT_EQ((r).status, Status::Fail) << (r).name << ": " << (r).witness

TEST(Yangian, EvalTableMatchesExpansion) {
  for (int N : {1, 2}) {
    EXPECT_PASS(check_eval_formula(N, GaussRat(3), 5));
    EXPECT_PASS(check_eval_formula(N, GaussRat(0), 4));
    EXPECT_PASS(check_table_symmetry(eval_rep(N, GaussRat::frac(-2, 3), 5)));
  }
}

TEST(Yangian, EvalAtZeroFirstGenerator) {
  // hand value: N=1, T_{1,-1}^(1) -> -F_{-1,1}(-1)^1 = E_{-1,1} + E_{1,-1}
  auto rep = eval_rep(1, GaussRat(0), 2);
  auto expect = matrix_unit(1, -1, 1) + matrix_unit(1, 1, -1);
  EXPECT_EQ(rep.get(1, -1, 1), expect);
  EXPECT_TRUE(rep.get(1, 1, 2).is_zero());
}

TEST(Yangian, SinglePointMultiEvalIsEval) {
  auto a = multi_eval_rep(2, {GaussRat(5)}, 4), b = eval_rep(2, GaussRat(5), 4);
  for (auto& [k, v] : b.table) EXPECT_EQ(a.table.at(k), v);
  EXPECT_EQ(a.table.size(), b.table.size());
}

TEST(Yangian, ComultiplicationAndCounit) {
  EXPECT_PASS(check_comultiplication(1, {GaussRat(1), GaussRat(2)}, 6));
  EXPECT_PASS(check_comultiplication(2, {GaussRat(1), GaussRat(-3), GaussRat(1)}, 4));
  EXPECT_PASS(check_counit(1, 4));
}

TEST(Yangian, TwoPointTableByHand) {
  // s=2 coefficient of R12(u,z1)R13(u,z2) at N=1 for T_{11}: oracle by direct expansion of both factors
  GaussRat z1(1), z2(2);
  auto rep = multi_eval_rep(1, {z1, z2}, 2);
  auto e1 = eval_rep(1, z1, 2), e2 = eval_rep(1, z2, 2);
  auto id = SuperOp::identity(cspace(1, 1));
  SuperOp expect = koszul_tensor(e1.get(1, 1, 2), id) + koszul_tensor(id, e2.get(1, 1, 2)) +
                   koszul_tensor(e1.get(1, 1, 1), e2.get(1, 1, 1)) - koszul_tensor(e1.get(1, -1, 1), e2.get(-1, 1, 1));
  EXPECT_EQ(rep.get(1, 1, 2), expect);
}

TEST(Yangian, RTT) {
  EXPECT_PASS(check_rtt(eval_rep(1, GaussRat(3), 2)));
  EXPECT_PASS(check_rtt(multi_eval_rep(2, {GaussRat(1), GaussRat(2)}, 2)));
  EXPECT_PASS(check_rtt(multi_eval_rep(1, {GaussRat(1), GaussRat(1)}, 2)));  // coincident points
  EXPECT_PASS(check_eta_T(multi_eval_rep(2, {GaussRat(1), GaussRat(2)}, 2)));
}

TEST(Yangian, RTTNegativeControl) {
  EXPECT_FAILS(check_rtt(eval_rep(1, GaussRat(3), 2, RVariant::FlippedSecond)));
  EXPECT_FAILS(check_eta_T(eval_rep(1, GaussRat(3), 2, RVariant::NoPlusTerm)));
}

TEST(Yangian, Centre) {
  for (int N : {1, 2}) {
    auto rep = eval_rep(N, GaussRat(2), 6);
    EXPECT_PASS(check_centre_structure(rep));
    EXPECT_PASS(check_antipode_relation(rep));
    EXPECT_PASS(check_centre_even(rep));
    EXPECT_PASS(check_centrality(rep, 7));
  }
  auto multi = multi_eval_rep(1, {GaussRat(1), GaussRat(2)}, 6);
  EXPECT_PASS(check_centre_structure(multi));
  EXPECT_PASS(check_centrality(multi, 7));
  EXPECT_PASS(check_group_like(1, GaussRat(1), GaussRat(2)));
}

TEST(Yangian, CentreOfTrivialIsOne) {
  auto t = trivial_rep(2, 4);
  auto cs = centre_series(t, 5);
  EXPECT_EQ(cs.coeff[0], SuperOp::identity(t.carrier));
  for (int s = 1; s < 5; ++s) EXPECT_TRUE(cs.coeff[s].is_zero());
}

TEST(Yangian, CentreSecondCoefficientAtZero) {
  // by hand from sum_i T_ij T~_ki = Z delta_jk with T^(1)_ij = -F_ji(-1)^j:
  // Z^(2) = sum_i [F_ij, F_ji] = sum_i (F_ii - (-1)^{i+j} F_jj) = 2E, the identity times 2
  for (int N : {1, 2}) {
    auto cs = centre_series(eval_rep(N, GaussRat(0), 4), 5);
    EXPECT_EQ(cs.coeff[2], SuperOp::identity(cspace(N, 1)).scaled(GaussRat(2)));
  }
}

TEST(Yangian, CentreFromDefiningEquation) {
  // (Q(x)1) T1(u) Tbar2(u) = Q (x) Z(u), Tbar = (tau(x)id)(T^{-1}), against the block-sum route
  for (int N : {1, 2})
    for (GaussRat u : {GaussRat(7), GaussRat::frac(5, 3)}) {
      auto rep = eval_rep(N, GaussRat(2), 1);
      auto T = rep.closed_form(u);
      auto Tbar = tau(op_inverse(T), 1);
      auto sp = concat(cspace(N, 2), rep.carrier);
      auto c = constants(N);
      auto lhs = embed(c.Q, {1, 2}, sp) * embed(T, {1, 3}, sp) * embed(Tbar, {2, 3}, sp);
      EXPECT_EQ(lhs, koszul_tensor(c.Q, centre_at(rep, u)));
    }
}

TEST(Yangian, CentreAtZeroClosedValue) {
  // at z = 0 the series 1 + 2u^-2 + 4u^-4 + ... sums to u^2/(u^2-2)
  auto rep = eval_rep(2, GaussRat(0), 1);
  for (long long k : {3, 5, 11}) {
    GaussRat u(k);
    EXPECT_EQ(centre_at(rep, u), SuperOp::identity(rep.carrier).scaled(u * u / (u * u - GaussRat(2))));
  }
}

TEST(Yangian, PrintedCentreFormulasDisagree) {
  // the derivative formula and the closed pi_N formulas as printed do not match the centre defined by
  // the Q-relation; the checks report failure with a diagnostic witness (see the decisions ledger)
  auto r = check_centre_derivative(eval_rep(1, GaussRat(2), 2));
  EXPECT_FAILS(r);
  EXPECT_NE(r.witness.find("identity holds"), std::string::npos) << r.witness;
  EXPECT_FAILS(check_centre_images(1));
}

TEST(Yangian, SeriesAndPointCentreAgree) {
  // Z(u) on eval(2) vs its u^{-1} expansion: compare Z(u) u-sampled against the truncated sum scaled by u^L
  auto rep = eval_rep(1, GaussRat(2), 10);
  auto cs = centre_series(rep, 11);
  // at large u the partial sum approaches Z(u); check exact agreement of the Laurent tail through a
  // rational identity instead: Z(u) * (denominator) is a polynomial, so compare coefficients via many points
  // here only the first few coefficients at a large sample point are compared to bound the remainder
  GaussRat u(1000);
  auto Z = centre_at(rep, u);
  SuperOp partial(rep.carrier);
  for (int s = 0; s <= 10; ++s) partial = partial + cs.coeff[s].scaled(u.pow(-s));
  auto diff = Z - partial;
  // remainder is O(u^-12): every entry is below 1e-30 in size
  for (auto& row : diff.m.rows)
    for (auto& e : row) {
      auto q = e.v.re.to_mpq();
      EXPECT_LT(abs(q), mpq_class(1, 1000000000) * mpq_class(1, 1000000000) * mpq_class(1, 1000000000));
    }
}

TEST(Yangian, LoopAndCoPoisson) {
  EXPECT_PASS(check_loop_relations(1, 2));
  EXPECT_PASS(check_copoisson(1, 3));
  EXPECT_PASS(check_copoisson(2, 3));
}
