#pragma once
// Z2-graded tensor calculus in component form.
// An operator on slots V_1 (x) ... (x) V_n is stored through its coefficients on
// E_{r1 c1} (x) ... (x) E_{rn cn}; slot 1 is the most significant digit of the packed index.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "yqn/linalg.hpp"

namespace yqn {

// parity of #{(k,l): k<l, bit k set in `early`, bit l set in `late`}.
// Every Koszul sign in the library is obtained from this count.
inline int pair_parity(uint32_t late, uint32_t early) {
  int s = 0;
  while (early) {
    int k = __builtin_ctz(early);
    early &= early - 1;
    s ^= __builtin_popcount(late >> (k + 1)) & 1;
  }
  return s;
}

struct Space {
  std::vector<std::vector<uint8_t>> par;  // parity of each basis vector, per slot
  std::vector<int> slotN;                 // N for C^{N|N} slots, 0 for other carriers
  std::vector<uint32_t> dim, stride;
  uint32_t total = 1;
  std::vector<uint32_t> pmask;  // for each packed index: bit k = parity of its k-th digit

  size_t arity() const { return par.size(); }
  uint32_t digit(uint32_t idx, size_t k) const { return (idx / stride[k]) % dim[k]; }
  std::vector<uint8_t> parities() const;  // total parity of each packed index
  bool same_as(const Space& o) const { return par == o.par && slotN == o.slotN; }
};
using SpacePtr = std::shared_ptr<const Space>;

SpacePtr make_space(std::vector<std::vector<uint8_t>> par, std::vector<int> slotN);
SpacePtr cspace(int N, int n);                       // (C^{N|N})^{(x) n}
SpacePtr carrier_space(std::vector<uint8_t> par);    // one generic slot
SpacePtr concat(const SpacePtr& a, const SpacePtr& b);
SpacePtr subspace_slots(const SpacePtr& s, const std::vector<int>& slots0);

// local index of the signed index i in C^{N|N}: 1..N -> 0..N-1, -1..-N -> N..2N-1
int sidx_local(int N, int i);
int sidx_from_local(int N, int a);
inline int spar(int i) { return i < 0 ? 1 : 0; }

class SuperOp {
 public:
  SpacePtr sp;
  SpMat m;
  std::optional<int> declared_parity;

  SuperOp() = default;
  explicit SuperOp(SpacePtr s) : sp(std::move(s)), m(sp->total, sp->total) {}
  static SuperOp identity(SpacePtr s);
  static SuperOp zero(SpacePtr s) { return SuperOp(std::move(s)); }

  size_t arity() const { return sp->arity(); }
  uint32_t dim() const { return sp->total; }
  bool is_zero() const { return m.is_zero(); }
  // -1 if zero, 0/1 if homogeneous, 2 if mixed
  int parity() const;
  int entry_parity(uint32_t r, uint32_t c) const { return __builtin_popcount(sp->pmask[r] ^ sp->pmask[c]) & 1; }
  SuperOp even_part() const;
  SuperOp odd_part() const;

  SuperOp operator-() const;
  SuperOp scaled(const GaussRat& s) const;
  friend SuperOp operator+(const SuperOp& a, const SuperOp& b);
  friend SuperOp operator-(const SuperOp& a, const SuperOp& b);
  friend SuperOp operator*(const SuperOp& a, const SuperOp& b);  // koszul_mul
  friend bool operator==(const SuperOp& a, const SuperOp& b);
  friend bool operator!=(const SuperOp& a, const SuperOp& b) { return !(a == b); }

  std::string dump_json() const;
  // first differing entry, "" if equal
  static std::string first_difference(const SuperOp& a, const SuperOp& b);
};

SuperOp koszul_mul(const SuperOp& a, const SuperOp& b);
SuperOp koszul_tensor(const SuperOp& a, const SuperOp& b);
SuperOp supercommutator(const SuperOp& a, const SuperOp& b);

// X_{p1...pm}: slot k of X goes to slot positions[k] (1-based) of `target`
SuperOp embed(const SuperOp& x, const std::vector<int>& positions, const SpacePtr& target);
SuperOp embed(const SuperOp& x, const std::vector<int>& positions, int n);  // target (C^{N|N})^{(x) n}

SuperOp eta(const SuperOp& a, int slot);  // 1-based slot
SuperOp tau(const SuperOp& a, int slot);
// swap the first k slots with the rest, Koszul sign
SuperOp theta(const SuperOp& a, int k = 1);

// matrix acting on tensor vectors, (A(x)B)(a(x)b) = Aa(x)Bb (-1)^{deg a deg B}; an involutive algebra map
SpMat to_matrix(const SuperOp& a);
SuperOp from_matrix(const SpMat& m, const SpacePtr& sp);

// coefficient of E_ij in slot 1, as an operator on the remaining slots
SuperOp block(const SuperOp& a, int i, int j);
// inverse through the matrix form
SuperOp op_inverse(const SuperOp& a);

SuperOp matrix_unit(int N, int i, int j);

struct Constants {
  int N;
  SuperOp P, J, Q, E;
  SuperOp F(int i, int j) const;
};
Constants constants(int N);

// all (i,j) index pairs with |i|,|j| <= N, nonzero
std::vector<int> sindices(int N);

}  // namespace yqn
