#pragma once
// representations of the Yangian given by generator tables and closed forms

#include <functional>
#include <map>
#include <tuple>

#include "yqn/check.hpp"
#include "yqn/rmatrix.hpp"

namespace yqn {

struct GenImage {
  int N = 1;
  SpacePtr carrier;  // slots of the carrier
  int smax = 0;      // table filled for 1 <= s <= smax
  std::map<std::tuple<int, int, int>, SuperOp> table;
  // T(u) on [C^{N|N}] + carrier slots; empty if not available
  std::function<SuperOp(const GaussRat&)> closed_form;
  // d/du T(u), optional
  std::function<SuperOp(const GaussRat&)> closed_du;
  // T(u) = (matrix polynomial of degree <= d) / (scalar polynomial of degree <= d)
  int closed_degree = 0;
  // same kind of bound for T(u)^{-1}; -1 if unknown
  int inverse_degree = -1;
  std::string label;

  // s = 0 gives delta_ij * 1
  SuperOp get(int i, int j, int s) const;
  SpacePtr aux_space() const;  // [C^{N|N}] + carrier
  // T^(s) = sum E_ij (x) table(i,j,s) on aux_space
  SuperOp coefficient(int s) const;
};

GenImage trivial_rep(int N, int smax);
GenImage eval_rep(int N, const GaussRat& z, int smax, RVariant var = RVariant::Standard);
GenImage multi_eval_rep(int N, const std::vector<GaussRat>& points, int smax);
// tensor product of representations through the comultiplication
GenImage delta_compose(const GenImage& a, const GenImage& b);

CheckResult check_table_symmetry(const GenImage& rep);  // parity and T_{-i,-j}^(s) = (-1)^s T_ij^(s)
CheckResult check_eval_formula(int N, const GaussRat& z, int smax);
CheckResult check_comultiplication(int N, const std::vector<GaussRat>& points, int smax);
CheckResult check_counit(int N, int smax);
CheckResult check_rtt(const GenImage& rep);
CheckResult check_eta_T(const GenImage& rep);

struct CentreSeries {
  std::vector<SuperOp> coeff;  // Z^(0..L-1) on the carrier
};
// coefficients from series inversion of T(u), with the block structure checked
CentreSeries centre_series(const GenImage& rep, int L, std::string* problem = nullptr);
// Z(u) at a point from the exact inverse of T(u)
SuperOp centre_at(const GenImage& rep, const GaussRat& u, std::string* problem = nullptr);

CheckResult check_centre_structure(const GenImage& rep);  // block structure of the defining relation
CheckResult check_antipode_relation(const GenImage& rep);
CheckResult check_centre_even(const GenImage& rep);        // Z(-u) = Z(u)
CheckResult check_centre_derivative(const GenImage& rep);  // derivative formula
CheckResult check_centrality(const GenImage& rep, int L);
CheckResult check_group_like(int N, const GaussRat& z1, const GaussRat& z2);
CheckResult check_centre_images(int N);  // images of Z^(2), Z^(4), Z^(6) at z = 0

CheckResult check_loop_relations(int N, int smax);
CheckResult check_copoisson(int N, int smax);

}  // namespace yqn
