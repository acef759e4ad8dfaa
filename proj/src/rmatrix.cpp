#include "yqn/rmatrix.hpp"

#include <mutex>
#include <set>

#include "json.hpp"

namespace yqn {

// ---------- RatOp ----------

void RatOp::add(uint32_t r, uint32_t c, const RatFun& f) {
  auto key = std::make_pair(r, c);
  auto it = e.find(key);
  if (it == e.end()) {
    if (!f.is_zero()) e.emplace(key, f);
    return;
  }
  it->second = it->second + f;
  if (it->second.is_zero()) e.erase(it);
}

SuperOp RatOp::eval(const std::vector<GaussRat>& pt) const {
  SuperOp o(sp);
  for (auto& [k, f] : e) {
    GaussRat v = f.eval(pt);
    if (!v.is_zero()) o.m.rows[k.first].push_back({k.second, v});
  }
  return o;
}

std::string RatOp::dump_json() const {
  nlohmann::json j;
  j["vars"] = vars;
  j["arity"] = sp->arity();
  j["entries"] = nlohmann::json::array();
  for (auto& [k, f] : e) j["entries"].push_back({k.first, k.second, f.num.str(), f.den.str()});
  return j.dump();
}

static void add_op(RatOp& out, const SuperOp& x, const RatFun& f) {
  for (uint32_t r = 0; r < x.dim(); ++r)
    for (auto& en : x.m.rows[r]) out.add(r, en.col, f * RatFun::constant(out.vars, en.v));
}

Verdict ratop_equal(const RatOp& a, const RatOp& b, int bound) {
  std::set<std::pair<uint32_t, uint32_t>> keys;
  for (auto& [k, f] : a.e) keys.insert(k);
  for (auto& [k, f] : b.e) keys.insert(k);
  RatFun zero = RatFun::constant(a.vars, GaussRat(0));
  for (auto& k : keys) {
    auto ia = a.e.find(k), ib = b.e.find(k);
    const RatFun& fa = ia == a.e.end() ? zero : ia->second;
    const RatFun& fb = ib == b.e.end() ? zero : ib->second;
    if (!identity_certify(fa, fb, bound))
      return {false, "entry (" + std::to_string(k.first) + "," + std::to_string(k.second) + "): " + fa.str() +
                         " vs " + fb.str()};
  }
  return {true, std::to_string(keys.size()) + " entries certified"};
}

// ---------- numeric R ----------

const RParts& rparts(int N) {
  static std::mutex mu;
  static std::map<int, RParts> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  auto s2 = cspace(N, 2);
  RParts p{SuperOp(s2), SuperOp(s2)};
  for (int i : sindices(N))
    for (int j : sindices(N)) {
      GaussRat sg(spar(j) ? -1 : 1);
      p.A = p.A + koszul_tensor(matrix_unit(N, i, j), matrix_unit(N, j, i)).scaled(sg);
      p.B = p.B + koszul_tensor(matrix_unit(N, i, j), matrix_unit(N, -j, -i)).scaled(sg);
    }
  return cache.emplace(N, p).first->second;
}

SuperOp R_at(int N, const GaussRat& u, const GaussRat& v, RVariant var) {
  const auto& p = rparts(N);
  GaussRat dm = u - v, dp = u + v;
  if (dm.is_zero()) throw Singular("R(u,v) at u = v");
  SuperOp r = SuperOp::identity(p.A.sp) - p.A.scaled(dm.inv());
  if (var != RVariant::NoPlusTerm) {
    if (dp.is_zero()) throw Singular("R(u,v) at u = -v");
    GaussRat c = dp.inv();
    r = var == RVariant::Standard ? r - p.B.scaled(c) : r + p.B.scaled(c);
  }
  r.declared_parity = 0;
  return r;
}

SuperOp R_du_at(int N, const GaussRat& u, const GaussRat& v) {
  const auto& p = rparts(N);
  GaussRat dm = u - v, dp = u + v;
  if (dm.is_zero() || dp.is_zero()) throw Singular("R'(u,v) singular");
  return p.A.scaled((dm * dm).inv()) + p.B.scaled((dp * dp).inv());
}

SuperOp R_closed_at(int N, const GaussRat& u, const GaussRat& v) {
  auto c = constants(N);
  auto one = SuperOp::identity(cspace(N, 1));
  auto PJJ = c.P * koszul_tensor(c.J, one) * koszul_tensor(one, c.J);
  GaussRat dm = u - v, dp = u + v;
  if (dm.is_zero() || dp.is_zero()) throw Singular("R(u,v) singular");
  return SuperOp::identity(c.P.sp) - c.P.scaled(dm.inv()) + PJJ.scaled(dp.inv());
}

SuperOp r_at(int N, const GaussRat& u, const GaussRat& v) {
  auto c = constants(N);
  GaussRat dm = u - v, dp = u + v;
  if (dm.is_zero() || dp.is_zero()) throw Singular("r(u,v) singular");
  return c.P.scaled(dm.inv()) + eta(c.P, 2).scaled(dp.inv());
}

SuperOp loop_F(int N, int i, int j, int s, const GaussRat& u) {
  GaussRat a = u.pow(s), b = (-u).pow(s);
  return matrix_unit(N, i, j).scaled(a) + matrix_unit(N, -i, -j).scaled(b);
}

// ---------- symbolic ----------

static const std::vector<std::string> UV{"u", "v"};

RatOp build_R(int N) {
  const auto& p = rparts(N);
  RatOp r{p.A.sp, UV, {}};
  auto u = RatFun::var(UV, "u"), v = RatFun::var(UV, "v"), one = RatFun::constant(UV, GaussRat(1));
  add_op(r, SuperOp::identity(p.A.sp), one);
  add_op(r, p.A, -(one / (u - v)));
  add_op(r, p.B, -(one / (u + v)));
  return r;
}

RatOp build_R_closed(int N) {
  auto c = constants(N);
  auto id1 = SuperOp::identity(cspace(N, 1));
  auto PJJ = c.P * koszul_tensor(c.J, id1) * koszul_tensor(id1, c.J);
  RatOp r{c.P.sp, UV, {}};
  auto u = RatFun::var(UV, "u"), v = RatFun::var(UV, "v"), one = RatFun::constant(UV, GaussRat(1));
  add_op(r, SuperOp::identity(c.P.sp), one);
  add_op(r, c.P, -(one / (u - v)));
  add_op(r, PJJ, one / (u + v));
  return r;
}

RatOp twisted_r(const SuperOp& K, const std::function<SuperOp(const SuperOp&)>& omega_slot2,
                const std::function<SuperOp(const SuperOp&)>& omega_both, int order) {
  GaussRat zeta;
  if (order == 1)
    zeta = GaussRat(1);
  else if (order == 2)
    zeta = GaussRat(-1);
  else if (order == 4)
    zeta = GaussRat::I();
  else
    throw std::invalid_argument("twisted_r: order must be 1, 2 or 4");
  if (omega_both(K) != K.scaled(zeta)) throw std::invalid_argument("twisted_r: omega(x)omega(K) != zeta K");
  RatOp r{K.sp, UV, {}};
  auto u = RatFun::var(UV, "u"), v = RatFun::var(UV, "v"), one = RatFun::constant(UV, GaussRat(1));
  SuperOp Km = K;
  GaussRat zm(1);
  for (int m = 0; m < order; ++m) {
    add_op(r, Km, one / (u - v * RatFun::constant(UV, zm)));
    Km = omega_slot2(Km);
    zm = zm * zeta;
  }
  return r;
}

RatOp build_classical_r(int N) {
  auto c = constants(N);
  RatOp r{c.P.sp, UV, {}};
  auto u = RatFun::var(UV, "u"), v = RatFun::var(UV, "v"), one = RatFun::constant(UV, GaussRat(1));
  add_op(r, c.P, one / (u - v));
  add_op(r, eta(c.P, 2), one / (u + v));
  return r;
}

// ---------- checks ----------

static std::string diff(const SuperOp& a, const SuperOp& b) { return SuperOp::first_difference(a, b); }

CheckResult check_qybe(int N, RVariant var) {
  std::string name = "rmatrix/qybe/N=" + std::to_string(N);
  return run_check(name, "R12(u,v)R13(u,w)R23(v,w)=R23(v,w)R13(u,w)R12(u,v)", [&]() -> Verdict {
    auto res = certify_on_grid(3, 4, [&](const std::vector<GaussRat>& p) {
      auto Ruv = R_at(N, p[0], p[1], var), Ruw = R_at(N, p[0], p[2], var), Rvw = R_at(N, p[1], p[2], var);
      auto R12 = embed(Ruv, {1, 2}, 3), R13 = embed(Ruw, {1, 3}, 3), R23 = embed(Rvw, {2, 3}, 3);
      return diff(R12 * R13 * R23, R23 * R13 * R12);
    });
    return {res.ok, res.ok ? std::to_string(res.points) + " grid points" : res.witness};
  });
}

CheckResult check_unitarity(int N) {
  return run_check("rmatrix/unitarity/N=" + std::to_string(N), "R(u,v)R(-u,-v)=(1-1/(u-v)^2-1/(u+v)^2)1",
                   [&]() -> Verdict {
                     auto res = certify_on_grid(2, 5, [&](const std::vector<GaussRat>& p) {
                       GaussRat u = p[0], v = p[1];
                       GaussRat f = GaussRat(1) - ((u - v) * (u - v)).inv() - ((u + v) * (u + v)).inv();
                       auto lhs = R_at(N, u, v) * R_at(N, -u, -v);
                       return diff(lhs, SuperOp::identity(lhs.sp).scaled(f));
                     });
                     return {res.ok, res.ok ? std::to_string(res.points) + " grid points" : res.witness};
                   });
}

CheckResult check_rbar(int N) {
  return run_check("rmatrix/rbar/N=" + std::to_string(N), "Rbar=(id(x)tau)R; Rbar(u,v)Rbar(-u,-v)=1",
                   [&]() -> Verdict {
                     auto res = certify_on_grid(2, 5, [&](const std::vector<GaussRat>& p) {
                       auto lhs = tau(R_at(N, p[0], p[1]), 2) * tau(R_at(N, -p[0], -p[1]), 2);
                       return diff(lhs, SuperOp::identity(lhs.sp));
                     });
                     return {res.ok, res.ok ? std::to_string(res.points) + " grid points" : res.witness};
                   });
}

CheckResult check_eta_covariance(int N) {
  return run_check("rmatrix/eta/N=" + std::to_string(N),
                   "(eta(x)id)R(u,v)=R(-u,v); (id(x)eta)R(u,v)=R(u,-v)", [&]() -> Verdict {
                     auto res = certify_on_grid(2, 3, [&](const std::vector<GaussRat>& p) {
                       GaussRat u = p[0], v = p[1];
                       auto R = R_at(N, u, v);
                       std::string d = diff(eta(R, 1), R_at(N, -u, v));
                       if (d.empty()) d = diff(eta(R, 2), R_at(N, u, -v));
                       if (d.empty()) d = diff(eta(eta(R, 1), 2), R_at(N, -u, -v));
                       return d;
                     });
                     return {res.ok, res.ok ? std::to_string(res.points) + " grid points" : res.witness};
                   });
}

CheckResult check_R_forms(int N) {
  return run_check("rmatrix/forms/N=" + std::to_string(N), "R=1-P/(u-v)+PJ1J2/(u+v) equals the matrix-unit sum",
                   [&]() -> Verdict { return ratop_equal(build_R(N), build_R_closed(N), 3); });
}

CheckResult check_classical_r(int N) {
  return run_check("rmatrix/classical/N=" + std::to_string(N),
                   "r(u,v)=P/(u-v)+(id(x)eta)P/(u+v); R=1-r; r12(u,v)+r21(v,u)=0", [&]() -> Verdict {
                     auto c = constants(N);
                     auto tw = twisted_r(
                         c.P, [](const SuperOp& x) { return eta(x, 2); },
                         [](const SuperOp& x) { return eta(eta(x, 1), 2); }, 2);
                     Verdict v = ratop_equal(tw, build_classical_r(N), 3);
                     if (!v.ok) return {false, "twisted form: " + v.witness};
                     // R = 1 - r
                     RatOp one_minus_r{c.P.sp, UV, {}};
                     add_op(one_minus_r, SuperOp::identity(c.P.sp), RatFun::constant(UV, GaussRat(1)));
                     for (auto& [k, f] : tw.e) one_minus_r.add(k.first, k.second, -f);
                     v = ratop_equal(one_minus_r, build_R(N), 3);
                     if (!v.ok) return {false, "R=1-r: " + v.witness};
                     auto res = certify_on_grid(2, 3, [&](const std::vector<GaussRat>& p) {
                       auto s = r_at(N, p[0], p[1]) + embed(r_at(N, p[1], p[0]), {2, 1}, 2);
                       return s.is_zero() ? std::string() : std::string("antisymmetry sum nonzero");
                     });
                     return {res.ok, res.ok ? "twisted form, R=1-r and antisymmetry certified" : res.witness};
                   });
}

CheckResult check_cybe(int N, bool twisted) {
  std::string name = std::string("rmatrix/cybe") + (twisted ? "" : "_untwisted") + "/N=" + std::to_string(N);
  return run_check(name, "[r12(u,v),r13(u,w)]+[r12(u,v),r23(v,w)]+[r13(u,w),r23(v,w)]=0", [&]() -> Verdict {
    auto c = constants(N);
    auto rr = [&](const GaussRat& a, const GaussRat& b) {
      if (twisted) return r_at(N, a, b);
      if ((a - b).is_zero()) throw Singular("r singular");
      return c.P.scaled((a - b).inv());
    };
    auto res = certify_on_grid(3, 4, [&](const std::vector<GaussRat>& p) {
      auto r12 = embed(rr(p[0], p[1]), {1, 2}, 3), r13 = embed(rr(p[0], p[2]), {1, 3}, 3),
           r23 = embed(rr(p[1], p[2]), {2, 3}, 3);
      auto s = supercommutator(r12, r13) + supercommutator(r12, r23) + supercommutator(r13, r23);
      return s.is_zero() ? std::string() : std::string("CYBE sum nonzero");
    });
    return {res.ok, res.ok ? std::to_string(res.points) + " grid points" : res.witness};
  });
}

CheckResult check_cosupercommutator(int N, int smax) {
  return run_check("rmatrix/cosupercommutator/N=" + std::to_string(N),
                   "phi(X)=[X1(u)+X2(v),r(u,v)] is eta-invariant slotwise with u->-u, v->-v", [&]() -> Verdict {
                     auto id1 = SuperOp::identity(cspace(N, 1));
                     size_t count = 0;
                     for (int s = 0; s <= smax; ++s)
                       for (int i = 1; i <= N; ++i)
                         for (int j : sindices(N)) {
                           auto phi = [&](const GaussRat& u, const GaussRat& v) {
                             auto X = koszul_tensor(loop_F(N, i, j, s, u), id1) +
                                      koszul_tensor(id1, loop_F(N, i, j, s, v));
                             return supercommutator(X, r_at(N, u, v));
                           };
                           auto res = certify_on_grid(2, s + 3, [&](const std::vector<GaussRat>& p) {
                             GaussRat u = p[0], v = p[1];
                             auto f = phi(u, v);
                             std::string d = diff(eta(f, 1), phi(-u, v));
                             if (d.empty()) d = diff(eta(f, 2), phi(u, -v));
                             return d;
                           });
                           if (!res.ok)
                             return {false, "F_" + std::to_string(i) + "," + std::to_string(j) +
                                                " u^" + std::to_string(s) + " " + res.witness};
                           ++count;
                         }
                     return {true, std::to_string(count) + " spanning elements"};
                   });
}

}  // namespace yqn
