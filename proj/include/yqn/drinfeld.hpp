#pragma once
// A_n-modules, hyperoctahedral coinvariants and the functor to Y(q_N)-modules

#include <random>

#include "yqn/sergeev.hpp"
#include "yqn/yangian.hpp"

namespace yqn {

// actual matrices on a graded carrier U (columns are images of basis vectors)
struct AnModule {
  int n = 0;
  std::vector<uint8_t> par;
  std::vector<SpMat> w;  // w[q-1]: w_{q,q+1}
  std::vector<SpMat> c;  // c[p-1]
  std::vector<SpMat> x;  // x[p-1]
  std::string label;

  uint32_t dim() const { return (uint32_t)par.size(); }
  SpMat perm_matrix(const Perm& v) const;
  SpMat xi(const AnElement& a) const;
  // first violated relation, "" if none
  std::string defect() const;
  // throws std::invalid_argument on a defect
  static AnModule make(int n, std::vector<uint8_t> par, std::vector<SpMat> w, std::vector<SpMat> c,
                       std::vector<SpMat> x, std::string label);
};

AnModule principal_series(const std::vector<GaussRat>& z);
// A_n -> H_{m+n} -> End((C^{N'|N'})^{(x)(m+n)})
AnModule gamma_pullback(int Nprime, int m, int n);
AnModule odot(const AnModule& U, const AnModule& Up);
// U with every generator conjugated by g (even, invertible)
AnModule conjugated(const AnModule& U, const SpMat& g);
// U / S for an invariant graded subspace S spanned by `rows`
AnModule quotient(const AnModule& U, const std::vector<SpRow>& rows);
// minimal length representatives of S_{n+n'}/(S_n x S_n'), in a fixed order
std::vector<Perm> shuffle_reps(int n, int np);

struct CoinvariantSpace {
  int N = 1, n = 0;
  uint32_t amb_dim = 0, dim = 0;
  std::vector<uint8_t> amb_par, par;
  std::vector<SpMat> alpha;  // n-1 adjacent transpositions, then the n Z_2 generators
  SpMat avg;                 // averaging over the group
  SpMat proj;                // dim x amb_dim
  SpMat sec;                 // amb_dim x dim, unit vectors at free_cols
  SpMat lift;                // amb_dim x dim, avg * sec (invariant representatives)
  std::vector<uint32_t> free_cols;
};

// Kronecker product of a matrix on (C^{N|N})^{(x)n} and one on U; sign (-1)^{deg a} on columns when u_odd
SpMat kron_super(const SpMat& C, const std::vector<uint8_t>& cpar, const SpMat& U, bool u_odd);

CoinvariantSpace coinvariants(int N, const AnModule& U);

struct DrinfeldModule {
  int N = 1;
  AnModule U;
  CoinvariantSpace V;
  GenImage rep;            // table from the y-element operators, closed form from the x-product
  std::vector<SpMat> y;    // xi(y_p)
  // ambient operator inducing T_ij^(s+1)
  SpMat coefficient_op(int i, int j, int s) const;
  // (x-product)(u) and (y-sum)(u) applied to the invariant lift, on [C^{N|N}] (x) ambient
  SpMat product_on_lift(const GaussRat& u) const;
  SpMat sum_on_lift(const GaussRat& u) const;
  int product_degree = 0, sum_degree = 0;
};

DrinfeldModule functor_apply(int N, const AnModule& U, int smax);

// Y(q_N)-module direct sum (carrier of one slot)
GenImage direct_sum(const GenImage& a, const GenImage& b);

struct IrreducibilityResult {
  Status status = Status::Inconclusive;  // Pass: irreducible with witness; Fail: certificate found
  size_t span_dim = 0, full_dim = 0;
  std::vector<SpRow> certificate;  // basis of a proper graded invariant subspace
  std::string note;
};
IrreducibilityResult irreducibility_test(const std::vector<SpMat>& gens, const std::vector<uint8_t>& par,
                                         int iterations, uint64_t seed);
// generators: table entries with s <= smax plus closed-form values at a few points
IrreducibilityResult irreducibility_test(const GenImage& V, int smax, int iterations, uint64_t seed);
// the generator matrices of a module, for the same test on A_n-modules
std::vector<SpMat> module_generators(const AnModule& U);
// quotient by certificates until the test reports irreducible; throws if inconclusive
AnModule irreducible_quotient(const AnModule& U, int iterations, uint64_t seed);

CheckResult check_an_module(const AnModule& U);
CheckResult check_coinvariants(int N, const AnModule& U);
CheckResult check_generators_suffice(int N, const AnModule& U);  // generator span = group span
CheckResult check_functor_table(const DrinfeldModule& D);        // table against an expansion of the y-sum
CheckResult check_left_ideal(const DrinfeldModule& D);
// same check with x_p in place of y_p in the sum; fails for n >= 2 (negative control)
CheckResult check_left_ideal_with_x(const DrinfeldModule& D);
CheckResult check_commutation(const DrinfeldModule& D, int smax);
CheckResult check_eval_match(int N, const GaussRat& z, int smax);
CheckResult check_functor_dim(int N, const GaussRat& z);
CheckResult check_odot_principal(const GaussRat& z1, const GaussRat& z2);
CheckResult check_tensor_product(int N, const AnModule& U, const AnModule& Up, int smax);
// "" if the map a(x)b(x)a'(x)b' -> a(x)a'(x)1(x)b(x)b' intertwines V(x)V' (or V'(x)V through the flip)
std::string natural_map_defect(int N, const AnModule& U, const AnModule& Up, int smax, bool reversed);
CheckResult check_functoriality(int N, const AnModule& U, uint64_t seed);
CheckResult check_irreducible(const GenImage& V, int smax, int iterations, uint64_t seed);
// Z(u) coefficients up to L-1 act as scalars; only meaningful on irreducible modules
CheckResult check_centre_scalars(const GenImage& V, int L);
CheckResult check_reducible_control(const GenImage& V, int smax, int iterations, uint64_t seed);

}  // namespace yqn
