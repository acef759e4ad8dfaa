#include <gtest/gtest.h>

#include <random>

#include "yqn/scalar.hpp"

using namespace yqn;

TEST(Rat, SmallAndBigAgree) {
  Rat a(INT64_MAX / 3, 7), b(INT64_MAX / 5, 11);
  Rat p = a * b * b;  // overflows int64, falls back to mpq
  mpq_class q = a.to_mpq() * b.to_mpq() * b.to_mpq();
  EXPECT_EQ(p.to_mpq(), q);
  Rat back = p / b / b;
  EXPECT_TRUE(back == a);
  EXPECT_TRUE(back.is_small());
}

TEST(GaussRat, FieldLawsRandomTriples) {
  std::mt19937_64 rng(7);
  auto rnd = [&] {
    std::uniform_int_distribution<int> d(-9, 9), e(1, 9);
    return GaussRat(Rat(d(rng), e(rng)), Rat(d(rng), e(rng)));
  };
  for (int t = 0; t < 200; ++t) {
    GaussRat a = rnd(), b = rnd(), c = rnd();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    if (!a.is_zero()) EXPECT_EQ(a * a.inv(), GaussRat(1));
  }
  EXPECT_EQ(GaussRat::I() * GaussRat::I(), GaussRat(-1));
}

TEST(GaussRat, StringRoundTrip) {
  EXPECT_EQ(GaussRat::frac(6, -4).str(), "-3/2");
  GaussRat z(Rat(1, 2), Rat(-3, 4));
  EXPECT_EQ(z.str(), "1/2-3/4*i");
  EXPECT_EQ(GaussRat::parse(z.str()), z);
  EXPECT_EQ(GaussRat::parse("3"), GaussRat(3));
  EXPECT_EQ(GaussRat::parse("2+i"), GaussRat(Rat(2), Rat(1)));
  EXPECT_THROW(GaussRat::parse("1/0"), ParseError);
  EXPECT_THROW(GaussRat::parse("abc"), ParseError);
}

TEST(RatFun, IdentityCertify) {
  std::vector<std::string> v{"u", "v"};
  auto u = RatFun::var(v, "u"), w = RatFun::var(v, "v");
  EXPECT_TRUE(identity_certify((u * u - w * w) / (u - w), u + w, 2));
  EXPECT_FALSE(identity_certify(RatFun::constant(v, 1) / (u - w), RatFun::constant(v, 1) / (u + w), 2));
  auto f = (u + w) / (u * w - RatFun::constant(v, 3));
  EXPECT_TRUE(identity_certify(f, f, 1));
}

TEST(RatFun, UnitarityScalarN1) {
  // scalar shadow of R(u,v)R(-u,-v) on E_11 (x) E_11: (1-1/(u-v))(1+1/(u-v)) - ... checked in rmatrix tests;
  // here just a degree-6 rational identity
  std::vector<std::string> v{"u", "v"};
  auto u = RatFun::var(v, "u"), w = RatFun::var(v, "v"), one = RatFun::constant(v, 1);
  auto lhs = (one - one / (u - w)) * (one + one / (u - w));
  auto rhs = one - one / ((u - w) * (u - w));
  EXPECT_TRUE(identity_certify(lhs, rhs, 6));
}

TEST(Series, Invert) {
  TruncSeries<GaussRat> s{"u", SeriesDir::Neg, {GaussRat(1), GaussRat(-1), GaussRat(0)}};
  auto t = series_invert(s);
  ASSERT_EQ(t.order(), 3);
  EXPECT_EQ(t.c[0], GaussRat(1));
  EXPECT_EQ(t.c[1], GaussRat(1));
  EXPECT_EQ(t.c[2], GaussRat(1));
  auto tt = series_invert(t);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(tt.c[k], s.c[k]);
  TruncSeries<GaussRat> one{"u", SeriesDir::Neg, std::vector<GaussRat>(5)};
  one.c[0] = GaussRat(1);
  EXPECT_EQ(series_invert(one).c, one.c);
  TruncSeries<GaussRat> bad{"u", SeriesDir::Neg, {GaussRat(0), GaussRat(1)}};
  EXPECT_THROW(series_invert(bad), std::domain_error);
}
