#include <gtest/gtest.h>

#include "yqn/dual_pairing.hpp"

using namespace yqn;

#define EXPECT_PASS(r) EXPECT_EQ((r).status, Status::Pass) << (r).name << ": " << (r).witness
#define EXPECT_FAILS(r) EXPECT_EQ((r).status, Status::Fail) << (r).name << ": " << (r).witness

TEST(Pairing, UnitAndEmpty) {
  Pairing P(1);
  EXPECT_EQ(P.value(Word{}, Word{}), GaussRat(1));
  EXPECT_EQ(P.value(Word{{1, 1, 1}}, Word{}), GaussRat(0));
  EXPECT_EQ(P.value(Word{}, Word{{1, 1, 1}}), GaussRat(0));
}

TEST(Pairing, FirstGeneratorsByHand) {
  // u^-1 v^0 coefficient of R12(u,v) = 1 - sum E_ab(x)E_ba(-1)^b/(u-v) - sum E_ab(x)E_{-b,-a}(-1)^b/(u+v)
  // at E_ij (x) E_kl: -[k=j][l=i](-1)^j - [k=-j][l=-i](-1)^j
  Pairing P(1);
  int n = 0;
  for (int i : {1, -1})
    for (int j : {1, -1})
      for (int k : {1, -1})
        for (int l : {1, -1}) {
          int sj = j < 0 ? -1 : 1, expect = 0;
          if (k == j && l == i) expect -= sj;
          if (k == -j && l == -i) expect -= sj;
          EXPECT_EQ(P.value(Word{{i, j, 1}}, Word{{k, l, 1}}), GaussRat(expect)) << i << j << k << l;
          ++n;
        }
  EXPECT_EQ(n, 16);
}

TEST(Pairing, HigherGeneratorSingle) {
  // <T_ij^(s), T_kl^(-r)> is the u^-s v^(r-1) coefficient of R: nonzero only for r = s,
  // value -[k=j][l=i](-1)^j - (-1)^(s-1) [k=-j][l=-i](-1)^j
  Pairing P(2);
  for (int s = 1; s <= 3; ++s)
    for (int r = 1; r <= 3; ++r)
      for (int i : sindices(2))
        for (int j : sindices(2))
          for (int k : {1, -2})
            for (int l : {2, -1}) {
              int sj = j < 0 ? -1 : 1, expect = 0;
              if (r == s) {
                if (k == j && l == i) expect -= sj;
                if (k == -j && l == -i) expect -= sj * ((s - 1) % 2 ? -1 : 1);
              }
              EXPECT_EQ(P.value(Word{{i, j, s}}, Word{{k, l, r}}), GaussRat(expect));
            }
}

TEST(Pairing, DualDisplayAtOne) {
  // explicit formula at s=1, z=1: -(E_ji + E_{-j,-i} (-1)^1)(-1)^i
  auto rep = dual_eval_rep(1, GaussRat(1), 2);
  for (int i : {1, -1})
    for (int j : {1, -1}) {
      auto expect = (matrix_unit(1, j, i) - matrix_unit(1, -j, -i)).scaled(GaussRat(i < 0 ? 1 : -1));
      EXPECT_EQ(rep.get(i, j, 1), expect);
    }
  EXPECT_PASS(check_dual_table(1, GaussRat(1), 3));
  EXPECT_PASS(check_dual_table(2, GaussRat::frac(-3, 2), 3));
}

TEST(Pairing, DualRelations) {
  EXPECT_PASS(check_dual_rtt(1));
  EXPECT_PASS(check_dual_eta(1));
  EXPECT_PASS(check_dual_eta(2));
}

TEST(Pairing, TensorSquareSign) {
  // (1 (x) a)(b (x) 1) = b (x) a (-1)^{deg a deg b}
  Word a{{1, -1, 1}}, b{{-1, 1, 2}}, e;
  Elem2 x{{{e, a}, GaussRat(1)}}, y{{{b, e}, GaussRat(1)}};
  auto p = tensor_mul(x, y);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.begin()->first, std::make_pair(b, a));
  EXPECT_EQ(p.begin()->second, GaussRat(-1));
}

TEST(Pairing, CoproductOfFirstGenerator) {
  // Delta T_ij^(1) = T_ij^(1)(x)1 + 1(x)T_ij^(1)
  auto d = coproduct_Y(Word{{1, -1, 1}});
  Elem2 expect{{{Word{{1, -1, 1}}, Word{}}, GaussRat(1)}, {{Word{}, Word{{1, -1, 1}}}, GaussRat(1)}};
  EXPECT_EQ(d, expect);
  auto ds = coproduct_Ystar(Word{{1, 1, 1}});
  // T*(v) at v^0 is delta + T^(-1): Delta T^(-1)_11 = T^(-1)_11(x)1 + 1(x)T^(-1)_11 + sum_k T^(-1)_1k (x) T^(-1)_k1 sign
  EXPECT_EQ(ds.size(), 4u);
  EXPECT_EQ(ds.at({Word{{1, -1, 1}}, Word{{-1, 1, 1}}}), GaussRat(-1));
}

TEST(Pairing, SupportAndParity) {
  EXPECT_PASS(check_pairing_support(1, 4));
  EXPECT_PASS(check_parity_pairing(1, 2));
  EXPECT_PASS(check_counit_pairing(1, 3));
}

TEST(Pairing, GramTriangularFactorials) {
  // at equal total degree every dual generator takes its whole degree from one Y generator
  // (each v-block contributes exactly one nonzero u-power), so <m-factor word, n-factor word> = 0 for n < m;
  // for n = m it is a bijection: zero unless the words agree, and +-(product of multiplicity factorials) if they do
  Pairing P(1);
  for (int s = 0; s <= 3; ++s) {
    auto g = gram_matrix(P, s);
    EXPECT_EQ(g.rank, g.rows.size());
    for (uint32_t a = 0; a < g.rows.size(); ++a) {
      std::map<Gen, int> mult;
      for (auto& x : g.rows[a]) mult[x]++;
      long long f = 1;
      for (auto& [k, c] : mult)
        for (int t = 2; t <= c; ++t) f *= t;
      for (uint32_t b = 0; b < g.rows.size(); ++b) {
        GaussRat v = g.m.get(a, b);
        size_t m = g.rows[a].size(), n = g.rows[b].size();
        if (a == b) EXPECT_TRUE(v == GaussRat(f) || v == GaussRat(-f)) << word_str(g.rows[a], false) << " " << v.str();
        else if (n <= m) EXPECT_TRUE(v.is_zero()) << a << "," << b;
      }
    }
  }
  EXPECT_EQ(pbw_basis(1, 2).size(), 4u);
  EXPECT_EQ(pbw_basis(1, 3).size(), 8u);
}

TEST(Pairing, GramNotDiagonal) {
  // <T_11^(2), T_11^(-1) T_11^(-1)>: coefficient of u^-2 v1^0 v2^0 in (R12-1)(R13-1) at E_11(x)E_11(x)E_11,
  // the product of the u^-1 coefficients -A-B of both factors, each contributing -1 there
  Pairing P(1);
  EXPECT_EQ(P.value(Word{{1, 1, 2}}, Word{{1, 1, 1}, {1, 1, 1}}), GaussRat(1));
}

TEST(Pairing, HopfExample) {
  Pairing P(1);
  Gen t{1, 1, 1};
  Word xp{{1, 1, 2}};
  GaussRat l = P.value(Word{t, t}, xp);
  GaussRat r = P.value2({{{Word{t}, Word{t}}, GaussRat(1)}}, coproduct_Ystar(xp));
  EXPECT_EQ(l, r);
  EXPECT_PASS(check_hopf_pairing(1, 3));
}

TEST(Pairing, UniversalR) {
  Pairing P(1);
  auto r0 = truncated_universal_R(P, 0);
  EXPECT_EQ(r0.ybasis.size(), 1u);
  EXPECT_EQ(r0.coef.get(0, 0), GaussRat(1));
  for (int D : {0, 1, 2}) EXPECT_PASS(check_universal_R_image(P, D, GaussRat(3)));
  EXPECT_PASS(check_universal_R_coproducts(P, 2, GaussRat(2), GaussRat::frac(-1, 3)));
}

TEST(Pairing, DoubleRelation) {
  EXPECT_PASS(check_double_relation(1));
  EXPECT_PASS(check_double_relation(2));
  EXPECT_FAILS(check_double_relation(1, RVariant::NoPlusTerm));
  EXPECT_PASS(check_double_relation_twofold(1));
}
