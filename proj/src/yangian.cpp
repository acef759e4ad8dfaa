#include "yqn/yangian.hpp"

#include "yqn/modcert.hpp"

#include <map>

namespace yqn {

SuperOp series_coeff_inverse(const SuperOp& x) { return op_inverse(x); }

namespace {

GaussRat sgn(int parity) { return GaussRat((parity & 1) ? -1 : 1); }

Verdict from_cert(const CertResult& r, const std::string& what = "grid points") {
  if (!r.ok) return {false, r.witness};
  return {true, std::to_string(r.points) + " " + what};
}

std::string pt_str(const std::vector<GaussRat>& p) {
  std::string s = "(";
  for (size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + p[k].str();
  return s + ")";
}

// positions {first, first+1, ...} of length n, 1-based
std::vector<int> run(int first, int n) {
  std::vector<int> v;
  for (int k = 0; k < n; ++k) v.push_back(first + k);
  return v;
}

// degree bound for T(u)^{-1}
int inv_degree(const GenImage& rep) {
  if (rep.inverse_degree >= 0) return rep.inverse_degree;
  return rep.closed_degree * (int)rep.aux_space()->total;
}

}  // namespace

// ---------- GenImage ----------

SpacePtr GenImage::aux_space() const { return concat(cspace(N, 1), carrier); }

SuperOp GenImage::get(int i, int j, int s) const {
  if (s == 0) return i == j ? SuperOp::identity(carrier) : SuperOp::zero(carrier);
  auto it = table.find({i, j, s});
  if (it == table.end()) {
    if (s > smax) throw std::out_of_range("GenImage: s beyond table");
    return SuperOp::zero(carrier);
  }
  return it->second;
}

SuperOp GenImage::coefficient(int s) const {
  SuperOp o(aux_space());
  for (int i : sindices(N))
    for (int j : sindices(N)) {
      auto g = get(i, j, s);
      if (!g.is_zero()) o = o + koszul_tensor(matrix_unit(N, i, j), g);
    }
  o.declared_parity = 0;
  return o;
}

static void fill_from_coefficients(GenImage& g, const std::vector<SuperOp>& coef) {
  for (int s = 1; s <= g.smax; ++s)
    for (int i : sindices(g.N))
      for (int j : sindices(g.N)) {
        auto b = block(coef[s], i, j);
        if (!b.is_zero()) g.table[{i, j, s}] = b;
      }
}

GenImage trivial_rep(int N, int smax) {
  GenImage g;
  g.N = N;
  g.carrier = carrier_space({0});
  g.smax = smax;
  auto sp = g.aux_space();
  g.closed_form = [sp](const GaussRat&) { return SuperOp::identity(sp); };
  g.closed_du = [sp](const GaussRat&) { return SuperOp::zero(sp); };
  g.closed_degree = 0;
  g.inverse_degree = 0;
  g.label = "trivial";
  return g;
}

GenImage eval_rep(int N, const GaussRat& z, int smax, RVariant var) {
  GenImage g;
  g.N = N;
  g.carrier = cspace(N, 1);
  g.smax = smax;
  g.closed_degree = 2;
  g.inverse_degree = 4;  // R(u,z)^{-1} = R(-u,-z) / (1 - (u-z)^{-2} - (u+z)^{-2})
  g.label = "eval(" + z.str() + ")";
  if (var == RVariant::Standard) {
    for (int s = 1; s <= smax; ++s)
      for (int i : sindices(N))
        for (int j : sindices(N)) {
          auto x = (matrix_unit(N, j, i).scaled(z.pow(s - 1)) + matrix_unit(N, -j, -i).scaled((-z).pow(s - 1)))
                       .scaled(-sgn(spar(j)));
          if (!x.is_zero()) g.table[{i, j, s}] = x;
        }
    g.closed_form = [N, z](const GaussRat& u) { return R_at(N, u, z); };
    g.closed_du = [N, z](const GaussRat& u) { return R_du_at(N, u, z); };
  } else {
    // expansion 1/(u -+ z) = sum (+-z)^{s-1} u^{-s}, second term sign from the variant
    auto c = constants(N);
    auto B = SuperOp::zero(c.P.sp);
    for (int i : sindices(N))
      for (int j : sindices(N))
        B = B + koszul_tensor(matrix_unit(N, i, j), matrix_unit(N, -j, -i)).scaled(sgn(spar(j)));
    GaussRat bs = var == RVariant::Standard ? GaussRat(-1) : var == RVariant::FlippedSecond ? GaussRat(1) : GaussRat(0);
    std::vector<SuperOp> coef{SuperOp::identity(c.P.sp)};
    for (int s = 1; s <= smax; ++s) coef.push_back(-c.P.scaled(z.pow(s - 1)) + B.scaled(bs * (-z).pow(s - 1)));
    fill_from_coefficients(g, coef);
    g.closed_form = [N, z, var](const GaussRat& u) { return R_at(N, u, z, var); };
    g.label += var == RVariant::FlippedSecond ? "/flipped" : "/no_plus_term";
  }
  return g;
}

GenImage multi_eval_rep(int N, const std::vector<GaussRat>& points, int smax) {
  if (points.empty()) throw std::invalid_argument("multi_eval_rep: need at least one point");
  int n = (int)points.size();
  GenImage g;
  g.N = N;
  g.carrier = cspace(N, n);
  g.smax = smax;
  g.closed_degree = 2 * n;
  g.inverse_degree = 4 * n;
  g.label = "multi_eval(";
  for (int k = 0; k < n; ++k) g.label += (k ? "," : "") + points[k].str();
  g.label += ")";
  auto aux = cspace(N, n + 1);
  // series of R(u,z) in u^{-1}: C_0 = 1, C_s = -P z^{s-1} - B (-z)^{s-1}
  auto c = constants(N);
  auto B = SuperOp::zero(c.P.sp);
  for (int i : sindices(N))
    for (int j : sindices(N))
      B = B + koszul_tensor(matrix_unit(N, i, j), matrix_unit(N, -j, -i)).scaled(sgn(spar(j)));
  TruncSeries<SuperOp> prod;
  for (int k = 0; k < n; ++k) {
    TruncSeries<SuperOp> f;
    const GaussRat& z = points[k];
    f.c.push_back(SuperOp::identity(aux));
    for (int s = 1; s <= smax; ++s)
      f.c.push_back(embed(-c.P.scaled(z.pow(s - 1)) - B.scaled((-z).pow(s - 1)), {1, k + 2}, aux));
    prod = k == 0 ? f : series_mul(prod, f);
  }
  fill_from_coefficients(g, prod.c);
  g.closed_form = [N, points, aux](const GaussRat& u) {
    SuperOp t = SuperOp::identity(aux);
    for (size_t k = 0; k < points.size(); ++k) t = t * embed(R_at(N, u, points[k]), {1, (int)k + 2}, aux);
    return t;
  };
  g.closed_du = [N, points, aux](const GaussRat& u) {
    SuperOp acc = SuperOp::zero(aux);
    for (size_t m = 0; m < points.size(); ++m) {
      SuperOp t = SuperOp::identity(aux);
      for (size_t k = 0; k < points.size(); ++k)
        t = t * embed(k == m ? R_du_at(N, u, points[k]) : R_at(N, u, points[k]), {1, (int)k + 2}, aux);
      acc = acc + t;
    }
    return acc;
  };
  return g;
}

GenImage delta_compose(const GenImage& a, const GenImage& b) {
  if (a.N != b.N) throw std::invalid_argument("delta_compose: N mismatch");
  GenImage g;
  g.N = a.N;
  g.carrier = concat(a.carrier, b.carrier);
  g.smax = std::min(a.smax, b.smax);
  g.closed_degree = a.closed_degree + b.closed_degree;
  if (a.inverse_degree >= 0 && b.inverse_degree >= 0) g.inverse_degree = a.inverse_degree + b.inverse_degree;
  g.label = a.label + "(x)" + b.label;
  int N = a.N;
  for (int s = 1; s <= g.smax; ++s)
    for (int i : sindices(N))
      for (int j : sindices(N)) {
        SuperOp acc(g.carrier);
        for (int k : sindices(N))
          for (int r = 0; r <= s; ++r) {
            auto x = a.get(i, k, r), y = b.get(k, j, s - r);
            if (x.is_zero() || y.is_zero()) continue;
            acc = acc + koszul_tensor(x, y).scaled(sgn((spar(i) ^ spar(k)) & (spar(j) ^ spar(k))));
          }
        if (!acc.is_zero()) g.table[{i, j, s}] = acc;
      }
  if (a.closed_form && b.closed_form) {
    auto aux = g.aux_space();
    int na = (int)a.carrier->arity(), nb = (int)b.carrier->arity();
    std::vector<int> pa{1}, pb{1};
    for (int p : run(2, na)) pa.push_back(p);
    for (int p : run(2 + na, nb)) pb.push_back(p);
    auto fa = a.closed_form, fb = b.closed_form;
    g.closed_form = [fa, fb, pa, pb, aux](const GaussRat& u) { return embed(fa(u), pa, aux) * embed(fb(u), pb, aux); };
    if (a.closed_du && b.closed_du) {
      auto da = a.closed_du, db = b.closed_du;
      g.closed_du = [fa, fb, da, db, pa, pb, aux](const GaussRat& u) {
        return embed(da(u), pa, aux) * embed(fb(u), pb, aux) + embed(fa(u), pa, aux) * embed(db(u), pb, aux);
      };
    }
  }
  return g;
}

// ---------- table checks ----------

CheckResult check_table_symmetry(const GenImage& rep) {
  return run_check("yangian/table_symmetry/" + rep.label, "deg T_ij^(s) = i+j; T_{-i,-j}^(s) = (-1)^s T_ij^(s)",
                   [&]() -> Verdict {
                     for (int s = 1; s <= rep.smax; ++s)
                       for (int i : sindices(rep.N))
                         for (int j : sindices(rep.N)) {
                           auto x = rep.get(i, j, s);
                           int p = x.parity();
                           std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(s) + ")";
                           if (p >= 0 && p != (spar(i) ^ spar(j))) return {false, "parity at " + at};
                           if (rep.get(-i, -j, s) != x.scaled(sgn(s))) return {false, "symmetry at " + at};
                         }
                     return {true, "all generators up to s=" + std::to_string(rep.smax)};
                   });
}

CheckResult check_eval_formula(int N, const GaussRat& z, int smax) {
  return run_check("yangian/eval_formula/N=" + std::to_string(N) + "/z=" + z.str(),
                   "T(u) -> R(u,z) expands to T_ij^(s+1) -> -(E_ji z^s + E_{-j,-i}(-z)^s)(-1)^j", [&]() -> Verdict {
                     auto rep = eval_rep(N, z, smax);
                     // independent expansion of 1 - P/(u-z) + P J1 J2/(u+z)
                     auto c = constants(N);
                     auto id1 = SuperOp::identity(cspace(N, 1));
                     auto PJJ = c.P * koszul_tensor(c.J, id1) * koszul_tensor(id1, c.J);
                     for (int s = 1; s <= smax; ++s) {
                       auto coef = -c.P.scaled(z.pow(s - 1)) + PJJ.scaled((-z).pow(s - 1));
                       auto d = SuperOp::first_difference(coef, rep.coefficient(s));
                       if (!d.empty()) return {false, "u^-" + std::to_string(s) + ": " + d};
                     }
                     if (z.is_zero()) {
                       // standard representation through T_ij(u) -> delta_ij - F_ji u^{-1} (-1)^j
                       for (int i : sindices(N))
                         for (int j : sindices(N)) {
                           if (rep.get(i, j, 1) != c.F(j, i).scaled(-sgn(spar(j))))
                             return {false, "z=0: T_ij^(1) differs from -F_ji(-1)^j"};
                           for (int s = 2; s <= smax; ++s)
                             if (!rep.get(i, j, s).is_zero()) return {false, "z=0: higher generator nonzero"};
                         }
                     }
                     return {true, "coefficients up to u^-" + std::to_string(smax)};
                   });
}

CheckResult check_comultiplication(int N, const std::vector<GaussRat>& points, int smax) {
  std::string lab = multi_eval_rep(N, points, 1).label;
  return run_check("yangian/comultiplication/N=" + std::to_string(N) + "/" + lab,
                   "T_ij(u) -> sum_k T_ik(u)(x)T_kj(u)(-1)^{(i+k)(j+k)}", [&]() -> Verdict {
                     auto multi = multi_eval_rep(N, points, smax);
                     GenImage acc = eval_rep(N, points[0], smax);
                     for (size_t k = 1; k < points.size(); ++k) acc = delta_compose(acc, eval_rep(N, points[k], smax));
                     for (int s = 1; s <= smax; ++s)
                       for (int i : sindices(N))
                         for (int j : sindices(N)) {
                           auto d = SuperOp::first_difference(multi.get(i, j, s), acc.get(i, j, s));
                           if (!d.empty())
                             return {false, "T_" + std::to_string(i) + "," + std::to_string(j) + "^(" +
                                                std::to_string(s) + "): " + d};
                         }
                     return {true, "tables agree for s <= " + std::to_string(smax)};
                   });
}

CheckResult check_counit(int N, int smax) {
  return run_check("yangian/counit/N=" + std::to_string(N), "epsilon(T_ij^(s)) = 0, s >= 1; (epsilon(x)id)Delta = id",
                   [&]() -> Verdict {
                     auto triv = trivial_rep(N, smax);
                     for (int s = 1; s <= smax; ++s)
                       for (int i : sindices(N))
                         for (int j : sindices(N))
                           if (!triv.get(i, j, s).is_zero()) return {false, "trivial table nonzero"};
                     auto rho = multi_eval_rep(N, {GaussRat(1), GaussRat(2)}, smax);
                     for (const auto& g : {delta_compose(triv, rho), delta_compose(rho, triv)})
                       for (int s = 1; s <= smax; ++s)
                         for (int i : sindices(N))
                           for (int j : sindices(N)) {
                             auto x = g.get(i, j, s), y = rho.get(i, j, s);
                             if (!(x.m == y.m) || x.sp->parities() != y.sp->parities())
                               return {false, "counit law fails at s=" + std::to_string(s)};
                           }
                     return {true, "both counit laws hold on " + rho.label};
                   });
}

// ---------- RTT ----------

CheckResult check_rtt(const GenImage& rep) {
  return run_check("yangian/rtt/N=" + std::to_string(rep.N) + "/" + rep.label,
                   "(R(u,v)(x)1)T1(u)T2(v)=T2(v)T1(u)(R(u,v)(x)1)", [&]() -> Verdict {
                     if (!rep.closed_form) throw std::invalid_argument("representation has no closed form");
                     auto sp = concat(cspace(rep.N, 2), rep.carrier);
                     int nc = (int)rep.carrier->arity();
                     std::vector<int> p1{1}, p2{2};
                     for (int p : run(3, nc)) {
                       p1.push_back(p);
                       p2.push_back(p);
                     }
                     std::map<std::string, SpMat> c1, c2;
                     auto T1 = [&](const GaussRat& u) -> const SpMat& {
                       auto k = u.str();
                       auto it = c1.find(k);
                       if (it == c1.end()) it = c1.emplace(k, to_matrix(embed(rep.closed_form(u), p1, sp))).first;
                       return it->second;
                     };
                     auto T2 = [&](const GaussRat& v) -> const SpMat& {
                       auto k = v.str();
                       auto it = c2.find(k);
                       if (it == c2.end()) it = c2.emplace(k, to_matrix(embed(rep.closed_form(v), p2, sp))).first;
                       return it->second;
                     };
                     int bound = rep.closed_degree + 2;
                     auto res = certify_on_grid(2, bound, [&](const std::vector<GaussRat>& p) -> std::string {
                       auto R = to_matrix(embed(R_at(rep.N, p[0], p[1]), {1, 2}, sp));
                       const SpMat &a = T1(p[0]), &b = T2(p[1]);
                       std::vector<const SpMat*> L{&R, &a, &b}, Rr{&b, &a, &R};
                       auto cmp = products_equal(L, Rr);
                       if (cmp.equal) return "";
                       return "at (u,v)=" + pt_str(p) + ": matrix entry (" + std::to_string(cmp.row) + "," +
                              std::to_string(cmp.col) + ") " + product_entry(L, cmp.row, cmp.col).str() + " vs " +
                              product_entry(Rr, cmp.row, cmp.col).str();
                     });
                     return from_cert(res);
                   });
}

CheckResult check_eta_T(const GenImage& rep) {
  return run_check("yangian/eta/N=" + std::to_string(rep.N) + "/" + rep.label, "(eta(x)id)T(u)=T(-u)",
                   [&]() -> Verdict {
                     if (!rep.closed_form) throw std::invalid_argument("representation has no closed form");
                     auto res = certify_on_grid(1, 2 * rep.closed_degree, [&](const std::vector<GaussRat>& p) {
                       auto d = SuperOp::first_difference(eta(rep.closed_form(p[0]), 1), rep.closed_form(-p[0]));
                       return d.empty() ? d : "at u=" + p[0].str() + ": " + d;
                     });
                     return from_cert(res);
                   });
}

// ---------- centre ----------

namespace {

// Z_jk = sum_i T_ij Ttilde_ki, from blocks of T and its inverse
std::string centre_blocks(int N, const std::function<SuperOp(int, int)>& T, const std::function<SuperOp(int, int)>& Tt,
                          SuperOp* Z) {
  std::optional<SuperOp> diag;
  for (int j : sindices(N))
    for (int k : sindices(N)) {
      SuperOp acc;
      bool first = true;
      for (int i : sindices(N)) {
        auto t = T(i, j) * Tt(k, i);
        acc = first ? t : acc + t;
        first = false;
      }
      if (j != k) {
        if (!acc.is_zero())
          return "off-diagonal sum nonzero at (j,k)=(" + std::to_string(j) + "," + std::to_string(k) + ")";
      } else if (!diag) {
        diag = acc;
      } else if (*diag != acc) {
        return "diagonal sum depends on j at j=" + std::to_string(j);
      }
    }
  *Z = *diag;
  return "";
}

}  // namespace

CentreSeries centre_series(const GenImage& rep, int L, std::string* problem) {
  if (L > rep.smax + 1) throw std::invalid_argument("centre_series: table too short");
  TruncSeries<SuperOp> T;
  for (int s = 0; s < L; ++s) T.c.push_back(rep.coefficient(s));
  auto Tt = series_invert(T);
  CentreSeries out;
  for (int s = 0; s < L; ++s) {
    std::optional<SuperOp> diag;
    std::string prob;
    for (int j : sindices(rep.N))
      for (int k : sindices(rep.N)) {
        SuperOp acc(rep.carrier);
        for (int i : sindices(rep.N))
          for (int a = 0; a <= s; ++a) {
            auto x = rep.get(i, j, a);
            if (x.is_zero()) continue;
            acc = acc + x * block(Tt.c[s - a], k, i);
          }
        if (j != k) {
          if (!acc.is_zero() && prob.empty())
            prob = "Z^(" + std::to_string(s) + "): off-diagonal nonzero at (j,k)=(" + std::to_string(j) + "," +
                   std::to_string(k) + ")";
        } else if (!diag) {
          diag = acc;
        } else if (*diag != acc && prob.empty()) {
          prob = "Z^(" + std::to_string(s) + "): diagonal depends on j";
        }
      }
    if (!prob.empty() && problem && problem->empty()) *problem = prob;
    out.coeff.push_back(*diag);
  }
  return out;
}

SuperOp centre_at(const GenImage& rep, const GaussRat& u, std::string* problem) {
  auto T = rep.closed_form(u);
  auto Ti = op_inverse(T);
  SuperOp Z;
  auto msg = centre_blocks(
      rep.N, [&](int i, int j) { return block(T, i, j); }, [&](int k, int i) { return block(Ti, k, i); }, &Z);
  if (!msg.empty()) {
    if (problem) *problem = msg;
    return SuperOp::zero(rep.carrier);
  }
  return Z;
}

CheckResult check_centre_structure(const GenImage& rep) {
  return run_check("yangian/centre_structure/N=" + std::to_string(rep.N) + "/" + rep.label,
                   "sum_i T_ij(u) Ttilde_ki(u) = Z(u) delta_jk", [&]() -> Verdict {
                     int D = rep.closed_degree + inv_degree(rep);
                     auto res = certify_on_grid(1, 2 * D, [&](const std::vector<GaussRat>& p) {
                       std::string prob;
                       auto Z = centre_at(rep, p[0], &prob);
                       if (!prob.empty()) return "at u=" + p[0].str() + ": " + prob;
                       if (Z.parity() == 1 || Z.parity() == 2) return "at u=" + p[0].str() + ": Z(u) not even";
                       return std::string();
                     });
                     if (!res.ok) return from_cert(res);
                     int L = std::min(rep.smax + 1, 7);
                     std::string prob;
                     auto cs = centre_series(rep, L, &prob);
                     if (!prob.empty()) return {false, "series: " + prob};
                     for (int s = 1; s < L; s += 2)
                       if (!cs.coeff[s].is_zero()) return {false, "odd coefficient Z^(" + std::to_string(s) + ") nonzero"};
                     return {true, std::to_string(res.points) + " points; series to order " + std::to_string(L - 1)};
                   });
}

CheckResult check_antipode_relation(const GenImage& rep) {
  return run_check("yangian/antipode/N=" + std::to_string(rep.N) + "/" + rep.label,
                   "sum_i T_ki(u) S(T_ij(u)) (-1)^{(i+k)(i+j)} = delta_jk", [&]() -> Verdict {
                     int D = rep.closed_degree + inv_degree(rep);
                     auto res = certify_on_grid(1, D, [&](const std::vector<GaussRat>& p) -> std::string {
                       auto T = rep.closed_form(p[0]);
                       auto Ti = op_inverse(T);
                       auto one = SuperOp::identity(rep.carrier);
                       for (int j : sindices(rep.N))
                         for (int k : sindices(rep.N)) {
                           SuperOp acc(rep.carrier);
                           for (int i : sindices(rep.N))
                             acc = acc + (block(T, k, i) * block(Ti, i, j))
                                             .scaled(sgn((spar(i) ^ spar(k)) & (spar(i) ^ spar(j))));
                           if (acc != (j == k ? one : SuperOp::zero(rep.carrier)))
                             return "at u=" + p[0].str() + " (j,k)=(" + std::to_string(j) + "," + std::to_string(k) + ")";
                         }
                       return "";
                     });
                     return from_cert(res);
                   });
}

CheckResult check_centre_even(const GenImage& rep) {
  return run_check("yangian/centre_even/N=" + std::to_string(rep.N) + "/" + rep.label, "Z(-u)=Z(u)",
                   [&]() -> Verdict {
                     int D = rep.closed_degree + inv_degree(rep);
                     auto res = certify_on_grid(1, 2 * D, [&](const std::vector<GaussRat>& p) {
                       auto d = SuperOp::first_difference(centre_at(rep, p[0]), centre_at(rep, -p[0]));
                       return d.empty() ? d : "at u=" + p[0].str() + ": " + d;
                     });
                     return from_cert(res);
                   });
}

CheckResult check_centre_derivative(const GenImage& rep) {
  return run_check("yangian/centre_derivative/N=" + std::to_string(rep.N) + "/" + rep.label,
                   "Z(v)=1-sum_{i,k} Ttilde_ki(v) dT_ik(v)/dv (-1)^i", [&]() -> Verdict {
                     int N = rep.N;
                     auto formula = [&](int i, int k, const SuperOp& Ti, const SuperOp& dT) {
                       return (block(Ti, k, i) * block(dT, i, k)).scaled(sgn(spar(i)));
                     };
                     if (rep.closed_du) {
                       int d = rep.closed_degree, e = inv_degree(rep);
                       auto run_sign = [&](const GaussRat& sign) {
                         return certify_on_grid(1, 3 * d + 2 * e, [&](const std::vector<GaussRat>& p) {
                           auto Ti = op_inverse(rep.closed_form(p[0]));
                           auto dT = rep.closed_du(p[0]);
                           SuperOp rhs = SuperOp::identity(rep.carrier);
                           for (int i : sindices(N))
                             for (int k : sindices(N)) rhs = rhs - formula(i, k, Ti, dT).scaled(sign);
                           auto dd = SuperOp::first_difference(centre_at(rep, p[0]), rhs);
                           return dd.empty() ? dd : "at v=" + p[0].str() + ": " + dd;
                         });
                       };
                       auto res = run_sign(GaussRat(1));
                       if (!res.ok) {
                         // diagnostic only: does the opposite sign of the sum hold?
                         auto alt = run_sign(GaussRat(-1));
                         res.witness += alt.ok ? "; with the sum added instead of subtracted the identity holds on " +
                                                     std::to_string(alt.points) + " points"
                                               : "; the sign-flipped variant fails too";
                       }
                       return from_cert(res);
                     }
                     // series form: coefficient of v^{-s} on the right is -sum_{a+b=s} Tt^(b) (-(a-1)) T^(a-1)
                     int L = std::min(rep.smax + 1, 7);
                     auto cs = centre_series(rep, L);
                     TruncSeries<SuperOp> T;
                     for (int s = 0; s < L; ++s) T.c.push_back(rep.coefficient(s));
                     auto Tt = series_invert(T);
                     for (int s = 1; s < L; ++s) {
                       SuperOp rhs(rep.carrier);
                       for (int a = 2; a <= s; ++a) {
                         auto dT = T.c[a - 1].scaled(GaussRat(-(a - 1)));  // coefficient of v^{-a}
                         for (int i : sindices(N))
                           for (int k : sindices(N)) rhs = rhs - formula(i, k, Tt.c[s - a], dT);
                       }
                       auto dd = SuperOp::first_difference(cs.coeff[s], rhs);
                       if (!dd.empty()) return {false, "v^-" + std::to_string(s) + ": " + dd};
                     }
                     return {true, "series agree to order " + std::to_string(L - 1)};
                   });
}

CheckResult check_centrality(const GenImage& rep, int L) {
  return run_check("yangian/centrality/N=" + std::to_string(rep.N) + "/" + rep.label,
                   "[Z^(s), T_ij^(r)] = 0", [&]() -> Verdict {
                     auto cs = centre_series(rep, std::min(L, rep.smax + 1));
                     for (size_t s = 0; s < cs.coeff.size(); ++s)
                       for (int r = 1; r <= rep.smax; ++r)
                         for (int i : sindices(rep.N))
                           for (int j : sindices(rep.N))
                             if (!supercommutator(cs.coeff[s], rep.get(i, j, r)).is_zero())
                               return {false, "Z^(" + std::to_string(s) + ") vs T_" + std::to_string(i) + "," +
                                                  std::to_string(j) + "^(" + std::to_string(r) + ")"};
                     if (rep.closed_form) {
                       int D = rep.closed_degree + inv_degree(rep);
                       auto res = certify_on_grid(1, D, [&](const std::vector<GaussRat>& p) -> std::string {
                         auto Z = centre_at(rep, p[0]);
                         for (int r = 1; r <= rep.smax; ++r)
                           for (int i : sindices(rep.N))
                             for (int j : sindices(rep.N))
                               if (!supercommutator(Z, rep.get(i, j, r)).is_zero())
                                 return "Z(" + p[0].str() + ") vs T_" + std::to_string(i) + "," + std::to_string(j);
                         return "";
                       });
                       if (!res.ok) return from_cert(res);
                     }
                     return {true, std::to_string(cs.coeff.size()) + " coefficients, generators up to s=" +
                                       std::to_string(rep.smax)};
                   });
}

CheckResult check_group_like(int N, const GaussRat& z1, const GaussRat& z2) {
  return run_check("yangian/group_like/N=" + std::to_string(N) + "/(" + z1.str() + "," + z2.str() + ")",
                   "Delta(Z(u)) = Z(u)(x)Z(u); epsilon(Z(u)) = 1", [&]() -> Verdict {
                     auto r1 = eval_rep(N, z1, 1), r2 = eval_rep(N, z2, 1), r12 = multi_eval_rep(N, {z1, z2}, 1);
                     auto triv = trivial_rep(N, 1);
                     int D = r12.closed_degree + inv_degree(r12);
                     auto res = certify_on_grid(1, 2 * D, [&](const std::vector<GaussRat>& p) {
                       auto Z = centre_at(r12, p[0]);
                       auto ZZ = koszul_tensor(centre_at(r1, p[0]), centre_at(r2, p[0]));
                       auto d = SuperOp::first_difference(Z, ZZ);
                       if (d.empty() && centre_at(triv, p[0]) != SuperOp::identity(triv.carrier)) d = "epsilon(Z) != 1";
                       return d.empty() ? d : "at u=" + p[0].str() + ": " + d;
                     });
                     if (!res.ok) return from_cert(res);
                     // same statement on series coefficients
                     int L = 7;
                     auto s12 = centre_series(multi_eval_rep(N, {z1, z2}, L - 1), L);
                     auto s1 = centre_series(eval_rep(N, z1, L - 1), L), s2 = centre_series(eval_rep(N, z2, L - 1), L);
                     for (int s = 0; s < L; ++s) {
                       SuperOp acc(r12.carrier);
                       for (int a = 0; a <= s; ++a) acc = acc + koszul_tensor(s1.coeff[a], s2.coeff[s - a]);
                       if (acc != s12.coeff[s]) return {false, "series coefficient " + std::to_string(s)};
                     }
                     return {true, std::to_string(res.points) + " points and " + std::to_string(L) + " coefficients"};
                   });
}

SuperOp centre_image_formula(int N, int s) {
  // Z^(s+2) under pi_N in the defining representation, s even
  auto c = constants(N);
  auto idx = sindices(N);
  SuperOp acc(cspace(N, 1));
  if (s == 0) {
    for (int k : idx) acc = acc - c.F(k, k);
    return acc;
  }
  int m = s + 1;
  std::vector<int> pos(m, 0);
  while (true) {
    std::vector<int> k(m);
    int par = 0;
    for (int t = 0; t < m; ++t) k[t] = idx[pos[t]];
    for (int t = 0; t < s; ++t) par ^= spar(k[t]);
    SuperOp prod = c.F(k[1], k[0]);
    for (int t = 1; t < s; ++t) prod = prod * c.F(k[t + 1], k[t]);
    prod = prod * c.F(k[0], k[s]);
    acc = acc - prod.scaled(sgn(par));
    int t = 0;
    while (t < m && ++pos[t] == (int)idx.size()) pos[t++] = 0;
    if (t == m) break;
  }
  return acc;
}

CheckResult check_centre_images(int N) {
  return run_check("yangian/centre_images/N=" + std::to_string(N),
                   "pi_N(Z^(2)) = -sum F_kk = -2E; pi_N(Z^(s+2)) = -sum F_{k2k1}...F_{k1k_{s+1}}(-1)^{k1+..+ks}",
                   [&]() -> Verdict {
                     auto rep = eval_rep(N, GaussRat(0), 6);
                     std::string prob;
                     auto cs = centre_series(rep, 7, &prob);
                     if (!prob.empty()) return {false, prob};
                     auto one = SuperOp::identity(rep.carrier);
                     auto scalar_str = [&](const SuperOp& z) {
                       GaussRat v = z.m.get(0, 0);
                       return z == one.scaled(v) ? v.str() : std::string("non-scalar");
                     };
                     std::string bad;
                     if (cs.coeff[2] != one.scaled(GaussRat(-2)))
                       bad = "Z^(2) acts as " + scalar_str(cs.coeff[2]) + ", expected -2";
                     for (int s : {0, 2, 4}) {
                       auto f = centre_image_formula(N, s);
                       if (cs.coeff[s + 2] != f)
                         bad += std::string(bad.empty() ? "" : "; ") + "Z^(" + std::to_string(s + 2) + "): series " +
                                scalar_str(cs.coeff[s + 2]) + " vs closed formula " + scalar_str(f);
                     }
                     if (!bad.empty()) return {false, bad};
                     return {true, "Z^(2)=-2, Z^(4), Z^(6) match the closed formulas"};
                   });
}

// ---------- loop algebra and co-Poisson ----------

CheckResult check_loop_relations(int N, int smax) {
  return run_check("yangian/loop_relations/N=" + std::to_string(N),
                   "[F_ji^(s),F_lk^(r)] bracket relations and F_{-j,-i}^(s)=(-1)^s F_ji^(s) in evaluation images",
                   [&]() -> Verdict {
                     auto idx = sindices(N);
                     size_t count = 0;
                     for (int s = 0; s <= smax; ++s)
                       for (int r = 0; r <= smax; ++r)
                         for (int i : idx)
                           for (int j : idx)
                             for (int l : idx)
                               for (int k : idx) {
                                 auto res = certify_on_grid(1, s + r, [&](const std::vector<GaussRat>& p) {
                                   const GaussRat& z = p[0];
                                   auto F = [&](int a, int b, int e) { return loop_F(N, a, b, e, z); };
                                   auto lhs = supercommutator(F(j, i, s), F(l, k, r));
                                   int e = ((spar(i) ^ spar(j)) & (spar(l) ^ spar(k)));
                                   SuperOp rhs(cspace(N, 1));
                                   if (i == l) rhs = rhs + F(j, k, s + r);
                                   if (k == j) rhs = rhs - F(l, i, s + r).scaled(sgn(e));
                                   if (i == -l) rhs = rhs + F(-j, k, s + r).scaled(sgn(s));
                                   if (-k == j) rhs = rhs - F(l, -i, s + r).scaled(sgn(e + s));
                                   auto d = SuperOp::first_difference(lhs, rhs);
                                   if (d.empty() && F(-j, -i, s) != F(j, i, s).scaled(sgn(s))) d = "parity symmetry";
                                   return d.empty() ? d
                                                    : "s=" + std::to_string(s) + " r=" + std::to_string(r) + " ijlk=" +
                                                          std::to_string(i) + std::to_string(j) + std::to_string(l) +
                                                          std::to_string(k) + " z=" + z.str() + ": " + d;
                                 });
                                 if (!res.ok) return {false, res.witness};
                                 ++count;
                               }
                     return {true, std::to_string(count) + " index/degree tuples"};
                   });
}

CheckResult check_copoisson(int N, int smax) {
  return run_check("yangian/copoisson/N=" + std::to_string(N) + "/smax=" + std::to_string(smax),
                   "(psi(x)psi)((Delta(X)-Delta'(X))/h) = phi(psi(X)) for X = H_ij^(s)", [&]() -> Verdict {
                     auto idx = sindices(N);
                     auto id1 = SuperOp::identity(cspace(N, 1));
                     size_t pairs = 0;
                     for (int s = 1; s <= smax; ++s)
                       for (int i : idx)
                         for (int j : idx) {
                           auto gen = "H_" + std::to_string(i) + "," + std::to_string(j) + "^(" + std::to_string(s) + ")";
                           // psi(H_ab^(r)) at z
                           auto psi = [&](int a, int b, int r, const GaussRat& z) {
                             return loop_F(N, b, a, r - 1, z).scaled(-sgn(spar(b)));
                           };
                           // displayed phi(psi(H)) sum
                           auto phi_sum = [&](const GaussRat& z1, const GaussRat& z2) {
                             SuperOp acc(cspace(N, 2));
                             for (int r = 1; r <= s - 1; ++r)
                               for (int k : idx) {
                                 acc = acc + koszul_tensor(loop_F(N, k, i, r - 1, z1), loop_F(N, j, k, s - r - 1, z2))
                                                 .scaled(sgn((spar(i) ^ spar(k) ^ 1) & (spar(j) ^ spar(k))));
                                 acc = acc - koszul_tensor(loop_F(N, j, k, r - 1, z1), loop_F(N, k, i, s - r - 1, z2))
                                                 .scaled(sgn(spar(j) ^ spar(k)));
                               }
                             return acc;
                           };
                           // interior part of Delta(H)/h under psi(x)psi
                           auto delta_part = [&](const GaussRat& z1, const GaussRat& z2) {
                             SuperOp acc(cspace(N, 2));
                             for (int r = 1; r <= s - 1; ++r)
                               for (int k : idx)
                                 acc = acc + koszul_tensor(psi(i, k, r, z1), psi(k, j, s - r, z2))
                                                 .scaled(sgn((spar(i) ^ spar(k)) & (spar(j) ^ spar(k))));
                             return acc;
                           };
                           // displayed interior part of the opposite comultiplication
                           auto delta_op_display = [&](const GaussRat& z1, const GaussRat& z2) {
                             SuperOp acc(cspace(N, 2));
                             for (int r = 1; r <= s - 1; ++r)
                               for (int k : idx) acc = acc + koszul_tensor(psi(k, j, r, z1), psi(i, k, s - r, z2));
                             return acc;
                           };
                           for (int a = 0; a <= smax + 1; ++a)
                             for (int b = 0; b <= smax + 1; ++b) {
                               GaussRat z1(a), z2(b);
                               auto dop = theta(delta_part(z2, z1), 1);
                               auto where = gen + " at (" + z1.str() + "," + z2.str() + ")";
                               auto d = SuperOp::first_difference(dop, delta_op_display(z1, z2));
                               if (!d.empty()) return {false, "theta(Delta) vs displayed Delta-op, " + where + ": " + d};
                               d = SuperOp::first_difference(delta_part(z1, z2) - dop, phi_sum(z1, z2));
                               if (!d.empty()) return {false, where + ": " + d};
                               ++pairs;
                             }
                           // the displayed sum against the co-supercommutator itself
                           auto res = certify_on_grid(2, s + 1, [&](const std::vector<GaussRat>& p) {
                             auto X = [&](const GaussRat& z) { return loop_F(N, j, i, s - 1, z); };
                             auto phi = supercommutator(koszul_tensor(X(p[0]), id1) + koszul_tensor(id1, X(p[1])),
                                                        r_at(N, p[0], p[1]))
                                            .scaled(-sgn(spar(j)));
                             auto d = SuperOp::first_difference(phi, phi_sum(p[0], p[1]));
                             return d.empty() ? d : "[X1+X2,r] vs sum, " + gen + " at " + pt_str(p) + ": " + d;
                           });
                           if (!res.ok) return {false, res.witness};
                         }
                     return {true, std::to_string(pairs) + " generator/point pairs"};
                   });
}

}  // namespace yqn
