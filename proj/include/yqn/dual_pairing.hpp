#pragma once
// the dual algebra Y*, its pairing with Y, graded Gram matrices, truncated universal R
// and the relation of the double

#include <map>
#include <tuple>

#include "yqn/yangian.hpp"

namespace yqn {

// generator T_ij^(s) of Y, or T_ij^(-s) of Y* (s >= 1 in both cases)
struct Gen {
  int i, j, s;
  auto operator<=>(const Gen&) const = default;
};
using Word = std::vector<Gen>;

inline int gen_parity(const Gen& g) { return spar(g.i) ^ spar(g.j); }
int word_parity(const Word& w);
int word_degree(const Word& w);
std::string word_str(const Word& w, bool dual);

struct DualGenImage {
  int N = 1;
  SpacePtr carrier;
  int smax = 0;
  std::map<std::tuple<int, int, int>, SuperOp> table;  // (i,j,r) -> image of T_ij^(-r)
  // T*(v) = sum T*_ij(v) (x) E_ij on carrier + [C^{N|N}]
  std::function<SuperOp(const GaussRat&)> closed_form;
  std::string label;
  SuperOp get(int i, int j, int r) const;
};

// T*(v) -> R(z,v); table from the expansion in v
DualGenImage dual_eval_rep(int N, const GaussRat& z, int smax);
// the explicit generator formula -(E_ji z^-r + E_{-j,-i}(-z)^-r)(-1)^i
SuperOp dual_display_image(int N, int i, int j, int r, const GaussRat& z);

CheckResult check_dual_table(int N, const GaussRat& z, int smax);
CheckResult check_dual_rtt(int N);  // rational identity in (u,v,z)
CheckResult check_dual_eta(int N);

// linear combinations of words, and of pairs of words (tensor square)
using Elem = std::map<Word, GaussRat>;
using Elem2 = std::map<std::pair<Word, Word>, GaussRat>;
Elem2 tensor_mul(const Elem2& a, const Elem2& b);  // (a(x)b)(c(x)d) = ac(x)bd (-1)^{deg c deg b}
Elem2 coproduct_Y(const Word& w);
Elem2 coproduct_Ystar(const Word& w);

class Pairing {
 public:
  explicit Pairing(int N) : N_(N) {}
  int N() const { return N_; }
  // <T^(s1)..T^(sm), T^(-r1)..T^(-rn)>
  GaussRat value(const Word& y, const Word& ystar);
  GaussRat value(const Elem& y, const Elem& ystar);
  // <X(x)Y, X'(x)Y'> = <X,X'><Y,Y'>(-1)^{deg X' deg Y}
  GaussRat value2(const Elem2& y, const Elem2& ystar);
  // operator coefficient of the R-product at u^-s v^(r-1); entry (I,J) is the signed pairing
  const SuperOp& coefficient(const std::vector<int>& s, const std::vector<int>& r);
  size_t cached() const { return cache_.size(); }

 private:
  int N_;
  std::map<std::pair<std::vector<int>, std::vector<int>>, SuperOp> cache_;
  std::map<std::tuple<int, int, int, int>, SuperOp> factors_;  // (slots, t, k, l)
};

// PBW basis of the degree-s piece of gr Y: i_k in 1..N, j_k in +-1..+-N, degrees non-increasing,
// odd generators at most once
std::vector<Word> pbw_basis(int N, int s);
// matching words G_{j_k i_k}^(-s_k) on the dual side
Word dual_word(const Word& y);

struct Gram {
  SpMat m;
  size_t rank = 0;
  std::vector<Word> rows;
};
Gram gram_matrix(Pairing& P, int s);

CheckResult check_pairing_support(int N, int total_degree);  // pairing vanishes when sum s < sum r
CheckResult check_pairing_unit(int N);                        // <1,1> = 1
CheckResult check_gram(int N, int smax);
CheckResult check_hopf_pairing(int N, int D);
CheckResult check_counit_pairing(int N, int D);
CheckResult check_parity_pairing(int N, int D);

struct UniversalR {
  int N = 1, D = 0;
  std::vector<Word> ybasis, ystarbasis;  // by degree
  SpMat coef;                            // Y^sigma = sum_b coef(b, sigma) Y*_b
};
UniversalR truncated_universal_R(Pairing& P, int D);
CheckResult check_universal_R_image(Pairing& P, int D, const GaussRat& w);
CheckResult check_universal_R_coproducts(Pairing& P, int D, const GaussRat& w1, const GaussRat& w2);

// (T(u)(x)1) Rhat(u,v) (1(x)T*(v)) = (1(x)T*(v)) Rhat(u,v) (T(u)(x)1) with T -> R(u,z), T* -> R(z,v)
CheckResult check_double_relation(int N, RVariant rhat = RVariant::Standard);
// two-fold consequence with T_1(u1)T_2(u2)
CheckResult check_double_relation_twofold(int N);

}  // namespace yqn
