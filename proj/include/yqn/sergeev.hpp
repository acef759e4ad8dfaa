#pragma once
// Hecke-Clifford algebra H_n and the degenerate affine Sergeev algebra A_n.
// Elements are kept in the normal form  c_{b1}..c_{bk} * w * x_1^s1..x_n^sn  (b1 < ... < bk).
// Permutations are one-line, 0-based; (v*w)(p) = v(w(p)).

#include <map>
#include <random>
#include <string>
#include <vector>

#include "yqn/check.hpp"
#include "yqn/super_linear.hpp"

namespace yqn {

using Perm = std::vector<uint8_t>;

struct SKey {
  uint32_t c = 0;          // bit p-1 set: c_p present
  Perm w;                  // w[p-1] = w(p) - 1
  std::vector<uint8_t> x;  // exponents
  auto operator<=>(const SKey&) const = default;
};

Perm perm_id(int n);
Perm perm_mul(const Perm& v, const Perm& w);
Perm perm_inv(const Perm& w);
Perm transposition(int n, int p, int q);  // 1-based
int perm_length(const Perm& w);
std::vector<Perm> all_perms(int n);

class AnElement {
 public:
  int n = 0;
  std::map<SKey, GaussRat> t;

  AnElement() = default;
  explicit AnElement(int n_) : n(n_) {}
  static AnElement scalar(int n, const GaussRat& a);
  static AnElement basis(int n, uint32_t c, const Perm& w, const std::vector<uint8_t>& x = {});
  static AnElement c(int n, int p);
  static AnElement w(int n, int p, int q);
  static AnElement perm(int n, const Perm& w);
  static AnElement x(int n, int p);

  bool is_zero() const { return t.empty(); }
  bool in_hn() const;     // no x factors
  int parity() const;     // -1 zero, 2 mixed
  int x_degree() const;
  void add(const SKey& k, const GaussRat& a);

  AnElement operator-() const;
  AnElement scaled(const GaussRat& a) const;
  friend AnElement operator+(const AnElement& a, const AnElement& b);
  friend AnElement operator-(const AnElement& a, const AnElement& b);
  friend AnElement operator*(const AnElement& a, const AnElement& b);
  friend bool operator==(const AnElement& a, const AnElement& b) { return a.n == b.n && a.t == b.t; }
  AnElement pow(int e) const;

  std::string str() const;
  std::string dump_json() const;  // [[c-subset, permutation, exponents, coefficient], ...]
};
using HnElement = AnElement;

AnElement an_mul(const AnElement& a, const AnElement& b);
HnElement hn_mul(const HnElement& a, const HnElement& b);  // throws if an argument has x factors
AnElement commutator(const AnElement& a, const AnElement& b);

// basis of H_n, deterministic order
std::vector<SKey> hn_basis(int n);

// gamma_m : A_n -> H_{m+n}
HnElement gamma(int m, const AnElement& a);

// y_1..y_n
std::vector<AnElement> y_generators(int n);

// H_n -> End((C^{N|N})^{(x) n}),  w_pq -> P_pq, c_p -> J_p
class HnMatrixRep {
 public:
  HnMatrixRep(int N, int n);
  int N() const { return N_; }
  int n() const { return n_; }
  const SpacePtr& space() const { return sp_; }
  SuperOp perm_image(const Perm& w) const;
  SuperOp c_image(uint32_t mask) const;
  SuperOp operator()(const HnElement& a) const;

 private:
  int N_, n_;
  SpacePtr sp_;
  std::vector<SuperOp> P_, J_;  // adjacent P_{q,q+1}, J_p
  mutable std::map<Perm, SuperOp> pcache_;
};

CheckResult check_hn_relations(int n);
CheckResult check_an_relations(int n);                       // A_n defining relations
CheckResult check_an_associative(int n, int xdeg, int trials, uint64_t seed);
CheckResult check_y_relations(int n);                        // y_p relations and the bracket relation
CheckResult check_gamma_relations(int m, int n);             // images satisfy the A_n relations
CheckResult check_gamma_homomorphism(int m, int n, int xdeg, int trials, uint64_t seed);
CheckResult check_gamma0_y(int n);
CheckResult check_hn_matrix_rep(int N, int n);
CheckResult check_pbw_independence(int n, int degree);

}  // namespace yqn
