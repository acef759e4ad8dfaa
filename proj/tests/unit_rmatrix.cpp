#include <gtest/gtest.h>

#include "yqn/rmatrix.hpp"

using namespace yqn;

TEST(RMatrix, EntryE11E11N1) {
  // oracle: 1 - 1/(u-v) from expanding the sum form by hand
  auto R = build_R(1);
  std::vector<std::string> v{"u", "v"};
  auto u = RatFun::var(v, "u"), w = RatFun::var(v, "v"), one = RatFun::constant(v, 1);
  EXPECT_TRUE(identity_certify(R.e.at({0, 0}), one - one / (u - w), 3));
}

TEST(RMatrix, LimitAtInfinity) {
  // R(u,v) -> 1: every non-identity entry has den degree > num degree in u
  for (auto& [k, f] : build_R(2).e) {
    if (k.first == k.second) continue;
    EXPECT_LT(f.num.degree_in(0), f.den.degree_in(0));
  }
}

TEST(RMatrix, Identities) {
  for (int N : {1, 2}) {
    EXPECT_TRUE(check_R_forms(N).ok()) << check_R_forms(N).witness;
    EXPECT_TRUE(check_qybe(N).ok());
    EXPECT_TRUE(check_unitarity(N).ok());
    EXPECT_TRUE(check_rbar(N).ok());
    EXPECT_TRUE(check_eta_covariance(N).ok());
    auto c = check_classical_r(N);
    EXPECT_TRUE(c.ok()) << c.witness;
    EXPECT_TRUE(check_cybe(N).ok());
    EXPECT_TRUE(check_cybe(N, false).ok());
    auto cs = check_cosupercommutator(N, 3);
    EXPECT_TRUE(cs.ok()) << cs.witness;
  }
}

TEST(RMatrix, NegativeControls) {
  auto q = check_qybe(1, RVariant::FlippedSecond);
  EXPECT_EQ(q.status, Status::Fail);
  EXPECT_FALSE(q.witness.empty());
  auto q2 = check_qybe(2, RVariant::FlippedSecond);
  EXPECT_EQ(q2.status, Status::Fail);
}

TEST(RMatrix, TwistedHypothesisEnforced) {
  auto c = constants(1);
  // omega = id does not satisfy omega(x)omega(P) = -P
  auto id = [](const SuperOp& x) { return x; };
  EXPECT_THROW(twisted_r(c.P, id, id, 2), std::invalid_argument);
}
