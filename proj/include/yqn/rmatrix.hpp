#pragma once
// rational R-matrix and the twisted classical r-matrix

#include <functional>
#include <map>

#include "yqn/check.hpp"
#include "yqn/super_linear.hpp"

namespace yqn {

// operator with rational-function entries
struct RatOp {
  SpacePtr sp;
  std::vector<std::string> vars;
  std::map<std::pair<uint32_t, uint32_t>, RatFun> e;

  void add(uint32_t r, uint32_t c, const RatFun& f);
  SuperOp eval(const std::vector<GaussRat>& pt) const;  // throws Singular
  std::string dump_json() const;
};
// entrywise identity_certify
Verdict ratop_equal(const RatOp& a, const RatOp& b, int bound);

enum class RVariant {
  Standard,
  FlippedSecond,  // sign of the (u+v) sum flipped
  NoPlusTerm      // (u+v) sum dropped
};

struct RParts {
  SuperOp A, B;  // A = sum E_ij (x) E_ji (-1)^j = P, B = sum E_ij (x) E_{-j,-i} (-1)^j
};
const RParts& rparts(int N);

// R(u,v) = 1 - sum E_ij(x)E_ji(-1)^j/(u-v) - sum E_ij(x)E_{-j,-i}(-1)^j/(u+v)
SuperOp R_at(int N, const GaussRat& u, const GaussRat& v, RVariant var = RVariant::Standard);
// 1 - P/(u-v) + P J1 J2/(u+v)
SuperOp R_closed_at(int N, const GaussRat& u, const GaussRat& v);
// derivative dR/du
SuperOp R_du_at(int N, const GaussRat& u, const GaussRat& v);

RatOp build_R(int N);         // sum form, variables (u,v)
RatOp build_R_closed(int N);  // P form
RatOp build_classical_r(int N);
// r(u,v) = sum_m (id (x) omega^m)(K)/(u - zeta^m v); zeta = -1 for order 2, i for order 4
RatOp twisted_r(const SuperOp& K, const std::function<SuperOp(const SuperOp&)>& omega_slot2,
                const std::function<SuperOp(const SuperOp&)>& omega_both, int order);
SuperOp r_at(int N, const GaussRat& u, const GaussRat& v);

// g-valued loop element F_ij u^s as an operator at u
SuperOp loop_F(int N, int i, int j, int s, const GaussRat& u);

CheckResult check_qybe(int N, RVariant var = RVariant::Standard);
CheckResult check_unitarity(int N);
CheckResult check_rbar(int N);
CheckResult check_eta_covariance(int N);
CheckResult check_R_forms(int N);
CheckResult check_classical_r(int N);  // twisted form, R = 1 - r, antisymmetry
CheckResult check_cybe(int N, bool twisted = true);
CheckResult check_cosupercommutator(int N, int smax);

}  // namespace yqn
