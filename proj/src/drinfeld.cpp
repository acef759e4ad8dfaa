#include "yqn/drinfeld.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "yqn/modcert.hpp"

namespace yqn {

namespace {

GaussRat sgn(int parity) { return GaussRat((parity & 1) ? -1 : 1); }

SpMat mpow(const SpMat& m, int e) {
  SpMat r = SpMat::identity(m.nr);
  for (int k = 0; k < e; ++k) r = r * m;
  return r;
}

SpMat plain_kron(const SpMat& a, const SpMat& b) {
  SpMat k(a.nr * b.nr, a.nc * b.nc);
  for (uint32_t r = 0; r < a.nr; ++r)
    for (uint32_t rb = 0; rb < b.nr; ++rb) {
      auto& row = k.rows[r * b.nr + rb];
      for (auto& ea : a.rows[r])
        for (auto& eb : b.rows[rb]) row.push_back({ea.col * b.nc + eb.col, ea.v * eb.v});
    }
  return k;
}

SpMat block_diag(const std::vector<SpMat>& ms) {
  uint32_t d = 0;
  for (auto& m : ms) d += m.nr;
  SpMat out(d, d);
  uint32_t off = 0;
  for (auto& m : ms) {
    for (uint32_t r = 0; r < m.nr; ++r)
      for (auto& e : m.rows[r]) out.rows[off + r].push_back({off + e.col, e.v});
    off += m.nr;
  }
  return out;
}

SpMat select_rows(const SpMat& m, const std::vector<uint32_t>& rows) {
  SpMat s((uint32_t)rows.size(), m.nc);
  for (size_t k = 0; k < rows.size(); ++k) s.rows[k] = m.rows[rows[k]];
  return s;
}

// columns `cols` of m as a matrix
SpMat select_cols(const SpMat& m, const std::vector<uint32_t>& cols) {
  std::vector<int> where(m.nc, -1);
  for (size_t k = 0; k < cols.size(); ++k) where[cols[k]] = (int)k;
  SpMat s(m.nr, (uint32_t)cols.size());
  for (uint32_t r = 0; r < m.nr; ++r) {
    for (auto& e : m.rows[r])
      if (where[e.col] >= 0) s.rows[r].push_back({(uint32_t)where[e.col], e.v});
    std::sort(s.rows[r].begin(), s.rows[r].end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  }
  return s;
}

SpRow unit(uint32_t c) { return SpRow{{c, GaussRat(1)}}; }

std::string mat_diff(const SpMat& a, const SpMat& b) {
  if (a.nr != b.nr || a.nc != b.nc) return "shape " + std::to_string(a.nr) + "x" + std::to_string(a.nc) + " vs " +
                                            std::to_string(b.nr) + "x" + std::to_string(b.nc);
  for (uint32_t r = 0; r < a.nr; ++r)
    if (!(a.rows[r].size() == b.rows[r].size() &&
          std::equal(a.rows[r].begin(), a.rows[r].end(), b.rows[r].begin(),
                     [](const Entry& x, const Entry& y) { return x.col == y.col && x.v == y.v; }))) {
      for (auto& e : a.rows[r])
        if (b.get(r, e.col) != e.v)
          return "entry (" + std::to_string(r) + "," + std::to_string(e.col) + ") " + e.v.str() + " vs " +
                 b.get(r, e.col).str();
      for (auto& e : b.rows[r])
        if (a.get(r, e.col) != e.v)
          return "entry (" + std::to_string(r) + "," + std::to_string(e.col) + ") " + a.get(r, e.col).str() + " vs " +
                 e.v.str();
    }
  return "";
}

bool even_matrix(const SpMat& m, const std::vector<uint8_t>& par, int want) {
  for (uint32_t r = 0; r < m.nr; ++r)
    for (auto& e : m.rows[r])
      if ((par[r] ^ par[e.col]) != want) return false;
  return true;
}

std::vector<uint8_t> cpar(int N, int n) { return cspace(N, n)->parities(); }

std::string idx_str(int i, int j, int s) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(s) + ")";
}

}  // namespace

// ---------- modules ----------

SpMat AnModule::perm_matrix(const Perm& v) const {
  SpMat r = SpMat::identity(dim());
  Perm cur = v;
  // v = s_q1 s_q2 ... ; peel left descents
  while (true) {
    Perm vi = perm_inv(cur);
    int q = -1;
    for (size_t k = 0; k + 1 < cur.size(); ++k)
      if (vi[k] > vi[k + 1]) {
        q = (int)k;
        break;
      }
    if (q < 0) break;
    r = r * w[q];
    Perm sq = perm_id(n);
    std::swap(sq[q], sq[q + 1]);
    cur = perm_mul(sq, cur);
  }
  return r;
}

SpMat AnModule::xi(const AnElement& a) const {
  if (a.n != n) throw std::invalid_argument("xi: size mismatch");
  SpMat out(dim(), dim());
  std::map<Perm, SpMat> pc;
  for (auto& [k, v] : a.t) {
    SpMat m = SpMat::identity(dim());
    for (int p = 0; p < n; ++p)
      if (k.c >> p & 1) m = m * c[p];
    auto it = pc.find(k.w);
    if (it == pc.end()) it = pc.emplace(k.w, perm_matrix(k.w)).first;
    m = m * it->second;
    for (int p = 0; p < n; ++p) m = m * mpow(x[p], k.x[p]);
    out = out + m.scaled(v);
  }
  return out;
}

std::string AnModule::defect() const {
  uint32_t d = dim();
  if ((int)w.size() != std::max(n - 1, 0) || (int)c.size() != n || (int)x.size() != n) return "generator count";
  SpMat I = SpMat::identity(d);
  for (auto* v : {&w, &c, &x})
    for (auto& m : *v)
      if (m.nr != d || m.nc != d) return "matrix size";
  for (int p = 0; p < n; ++p) {
    if (!even_matrix(c[p], par, 1)) return "c_" + std::to_string(p + 1) + " not odd";
    if (!even_matrix(x[p], par, 0)) return "x_" + std::to_string(p + 1) + " not even";
    if (!(c[p] * c[p] == -I)) return "c_p^2 != -1";
    for (int q = 0; q < n; ++q) {
      if (q != p && !(c[p] * c[q] == -(c[q] * c[p]))) return "c_p c_q != -c_q c_p";
      if (!(x[p] * x[q] == x[q] * x[p])) return "x_p x_q";
      SpMat xc = x[p] * c[q], cx = c[q] * x[p];
      if (!(xc == (p == q ? -cx : cx))) return "x_" + std::to_string(p + 1) + " c_" + std::to_string(q + 1);
    }
  }
  for (int q = 0; q + 1 < n; ++q) {
    if (!even_matrix(w[q], par, 0)) return "w not even";
    if (!(w[q] * w[q] == I)) return "w^2 != 1";
    if (q + 2 < n && !(w[q] * w[q + 1] * w[q] == w[q + 1] * w[q] * w[q + 1])) return "braid";
    for (int r = q + 2; r + 1 < n; ++r)
      if (!(w[q] * w[r] == w[r] * w[q])) return "far transpositions";
    for (int p = 0; p < n; ++p) {
      int sp = p == q ? q + 1 : p == q + 1 ? q : p;
      if (!(w[q] * c[p] * w[q] == c[sp])) return "w c_p w != c_w(p)";
      SpMat l = x[p] * w[q], r;
      if (p == q) r = w[q] * x[q + 1] - I - c[q] * c[q + 1];
      else if (p == q + 1) r = w[q] * x[q] + I - c[q] * c[q + 1];
      else r = w[q] * x[p];
      if (!(l == r)) return "x_" + std::to_string(p + 1) + " w_" + std::to_string(q + 1) + std::to_string(q + 2);
    }
  }
  return "";
}

AnModule AnModule::make(int n, std::vector<uint8_t> par, std::vector<SpMat> w, std::vector<SpMat> c,
                        std::vector<SpMat> x, std::string label) {
  AnModule U{n, std::move(par), std::move(w), std::move(c), std::move(x), std::move(label)};
  auto d = U.defect();
  if (!d.empty()) throw std::invalid_argument("A_n module " + U.label + ": " + d);
  return U;
}

AnModule principal_series(const std::vector<GaussRat>& z) {
  int n = (int)z.size();
  auto B = hn_basis(n);
  std::map<std::pair<uint32_t, Perm>, uint32_t> index;
  for (auto& k : B) index.emplace(std::make_pair(k.c, k.w), (uint32_t)index.size());
  uint32_t d = B.size();
  std::vector<uint8_t> par;
  for (auto& k : B) par.push_back(__builtin_popcount(k.c) & 1);
  auto left = [&](const AnElement& g) {
    SpMat mt(d, d);  // transpose: row = image of a basis vector
    for (uint32_t b = 0; b < d; ++b) {
      auto img = g * AnElement::basis(n, B[b].c, B[b].w);
      RowAccumulator acc(d);
      for (auto& [k, v] : img.t) {
        GaussRat f = v;
        for (int p = 0; p < n; ++p) f = f * z[p].pow(k.x[p]);
        acc.add(index.at({k.c, k.w}), f);
      }
      mt.rows[b] = acc.take();
    }
    return mt.transpose();
  };
  std::vector<SpMat> w, c, x;
  for (int q = 1; q < n; ++q) w.push_back(left(AnElement::w(n, q, q + 1)));
  for (int p = 1; p <= n; ++p) c.push_back(left(AnElement::c(n, p)));
  for (int p = 1; p <= n; ++p) x.push_back(left(AnElement::x(n, p)));
  std::string lab = "U(";
  for (int p = 0; p < n; ++p) lab += (p ? "," : "") + z[p].str();
  return AnModule::make(n, par, w, c, x, lab + ")");
}

AnModule gamma_pullback(int Nprime, int m, int n) {
  HnMatrixRep rho(Nprime, m + n);
  auto img = [&](const AnElement& a) { return to_matrix(rho(gamma(m, a))); };
  std::vector<SpMat> w, c, x;
  for (int q = 1; q < n; ++q) w.push_back(img(AnElement::w(n, q, q + 1)));
  for (int p = 1; p <= n; ++p) c.push_back(img(AnElement::c(n, p)));
  for (int p = 1; p <= n; ++p) x.push_back(img(AnElement::x(n, p)));
  return AnModule::make(n, rho.space()->parities(), w, c, x,
                        "gamma" + std::to_string(m) + "*(C^" + std::to_string(Nprime) + "|" + std::to_string(Nprime) +
                            ")^" + std::to_string(m + n));
}

std::vector<Perm> shuffle_reps(int n, int np) {
  std::vector<Perm> out;
  for (auto& v : all_perms(n + np)) {
    bool ok = true;
    for (int p = 0; p + 1 < n; ++p) ok &= v[p] < v[p + 1];
    for (int p = n; p + 1 < n + np; ++p) ok &= v[p] < v[p + 1];
    if (ok) out.push_back(v);
  }
  return out;
}

AnModule odot(const AnModule& U, const AnModule& Up) {
  int n = U.n, np = Up.n, nt = n + np;
  auto reps = shuffle_reps(n, np);
  std::map<Perm, uint32_t> rep_index;
  for (auto& r : reps) rep_index.emplace(r, rep_index.size());
  uint32_t du = U.dim(), dup = Up.dim(), d = reps.size() * du * dup;
  std::vector<uint8_t> par(d);
  for (uint32_t s = 0; s < reps.size(); ++s)
    for (uint32_t b = 0; b < du; ++b)
      for (uint32_t bp = 0; bp < dup; ++bp) par[(s * du + b) * dup + bp] = U.par[b] ^ Up.par[bp];
  // coset representative of v: the shuffle with the same image of {1..n}
  auto coset = [&](const Perm& v) {
    std::vector<uint8_t> first(v.begin(), v.begin() + n), rest(v.begin() + n, v.end());
    std::sort(first.begin(), first.end());
    std::sort(rest.begin(), rest.end());
    Perm t(first);
    t.insert(t.end(), rest.begin(), rest.end());
    return t;
  };
  std::map<SKey, SpMat> xi_cache, xip_cache;
  auto act = [&](const AnElement& g) {
    SpMat mt(d, d);
    for (uint32_t s = 0; s < reps.size(); ++s) {
      auto gw = g * AnElement::perm(nt, reps[s]);
      // each term c_B v x^s = w_tau * Z,  Z in A_n (x) A_n'
      std::vector<std::tuple<uint32_t, SKey, SKey, GaussRat>> parts;
      for (auto& [k, v] : gw.t) {
        Perm tau = coset(k.w);
        auto it = rep_index.find(tau);
        if (it == rep_index.end()) throw std::logic_error("odot: rewriting escaped the coset basis");
        AnElement Z = AnElement::perm(nt, perm_inv(tau)) * AnElement::basis(nt, k.c, k.w, k.x);
        if (Z.t.size() != 1) throw std::logic_error("odot: unexpected rewriting");
        auto& [kz, vz] = *Z.t.begin();
        SKey y1{kz.c & ((1u << n) - 1), Perm(kz.w.begin(), kz.w.begin() + n),
                std::vector<uint8_t>(kz.x.begin(), kz.x.begin() + n)};
        SKey y2{kz.c >> n, Perm(), std::vector<uint8_t>(kz.x.begin() + n, kz.x.end())};
        for (int p = n; p < nt; ++p) {
          if (kz.w[p] < n) throw std::logic_error("odot: permutation left the Young subgroup");
          y2.w.push_back(kz.w[p] - n);
        }
        for (int p = 0; p < n; ++p)
          if (kz.w[p] >= n) throw std::logic_error("odot: permutation left the Young subgroup");
        parts.emplace_back(it->second, y1, y2, v * vz);
      }
      for (uint32_t b = 0; b < du; ++b)
        for (uint32_t bp = 0; bp < dup; ++bp) {
          RowAccumulator acc(d);
          for (auto& [t, y1, y2, coef] : parts) {
            auto i1 = xi_cache.find(y1);
            if (i1 == xi_cache.end()) {
              AnElement e(n);
              e.add(y1, GaussRat(1));
              i1 = xi_cache.emplace(y1, U.xi(e).transpose()).first;
            }
            auto i2 = xip_cache.find(y2);
            if (i2 == xip_cache.end()) {
              AnElement e(np);
              e.add(y2, GaussRat(1));
              i2 = xip_cache.emplace(y2, Up.xi(e).transpose()).first;
            }
            GaussRat sg = sgn(U.par[b] & (__builtin_popcount(y2.c) & 1));
            for (auto& e1 : i1->second.rows[b])
              for (auto& e2 : i2->second.rows[bp]) acc.add((t * du + e1.col) * dup + e2.col, coef * sg * e1.v * e2.v);
          }
          mt.rows[(s * du + b) * dup + bp] = acc.take();
        }
    }
    return mt.transpose();
  };
  std::vector<SpMat> w, c, x;
  for (int q = 1; q < nt; ++q) w.push_back(act(AnElement::w(nt, q, q + 1)));
  for (int p = 1; p <= nt; ++p) c.push_back(act(AnElement::c(nt, p)));
  for (int p = 1; p <= nt; ++p) x.push_back(act(AnElement::x(nt, p)));
  return AnModule::make(nt, par, w, c, x, U.label + "(.)" + Up.label);
}

AnModule conjugated(const AnModule& U, const SpMat& g) {
  SpMat gi = inverse(g);
  auto cj = [&](const std::vector<SpMat>& v) {
    std::vector<SpMat> o;
    for (auto& m : v) o.push_back(g * m * gi);
    return o;
  };
  return AnModule::make(U.n, U.par, cj(U.w), cj(U.c), cj(U.x), U.label + "^g");
}

AnModule quotient(const AnModule& U, const std::vector<SpRow>& rows) {
  uint32_t d = U.dim();
  RowEchelon ech(d);
  for (auto& r : rows) ech.insert(r);
  ech.full_reduce();
  std::vector<uint32_t> free;
  std::vector<int> where(d, -1);
  for (uint32_t k = 0; k < d; ++k)
    if (!ech.is_pivot(k)) {
      where[k] = (int)free.size();
      free.push_back(k);
    }
  auto coords = [&](const SpRow& v) {
    SpRow r;
    for (auto& e : ech.reduce(v)) r.push_back({(uint32_t)where[e.col], e.v});
    return r;
  };
  auto induced = [&](const SpMat& m) {
    SpMat mt = m.transpose(), o((uint32_t)free.size(), (uint32_t)free.size());
    for (size_t k = 0; k < free.size(); ++k) o.rows[k] = coords(mt.rows[free[k]]);
    return o.transpose();
  };
  // invariance of the subspace
  for (auto* v : {&U.w, &U.c, &U.x})
    for (auto& m : *v) {
      SpMat mt = m.transpose();
      for (auto& r : ech.rows()) {
        SpRow img;
        RowAccumulator acc(d);
        for (auto& e : r)
          for (auto& f : mt.rows[e.col]) acc.add(f.col, e.v * f.v);
        if (!ech.reduce(acc.take()).empty()) throw std::invalid_argument("quotient: subspace not invariant");
      }
    }
  std::vector<uint8_t> par;
  for (auto k : free) par.push_back(U.par[k]);
  auto ind = [&](const std::vector<SpMat>& v) {
    std::vector<SpMat> o;
    for (auto& m : v) o.push_back(induced(m));
    return o;
  };
  return AnModule::make(U.n, par, ind(U.w), ind(U.c), ind(U.x), U.label + "/S");
}

// ---------- coinvariants ----------

SpMat kron_super(const SpMat& C, const std::vector<uint8_t>& cp, const SpMat& U, bool u_odd) {
  SpMat k(C.nr * U.nr, C.nc * U.nc);
  for (uint32_t r = 0; r < C.nr; ++r)
    for (uint32_t rb = 0; rb < U.nr; ++rb) {
      auto& row = k.rows[r * U.nr + rb];
      row.reserve(C.rows[r].size() * U.rows[rb].size());
      for (auto& ea : C.rows[r]) {
        GaussRat a = (u_odd && cp[ea.col]) ? -ea.v : ea.v;
        for (auto& eb : U.rows[rb]) row.push_back({ea.col * U.nc + eb.col, a * eb.v});
      }
    }
  return k;
}

CoinvariantSpace coinvariants(int N, const AnModule& U) {
  CoinvariantSpace cs;
  cs.N = N;
  cs.n = U.n;
  int n = U.n;
  uint32_t du = U.dim(), dc = cspace(N, n)->total;
  cs.amb_dim = dc * du;
  auto cp = cpar(N, n);
  for (uint32_t a = 0; a < dc; ++a)
    for (uint32_t b = 0; b < du; ++b) cs.amb_par.push_back(cp[a] ^ U.par[b]);
  auto K = constants(N);
  SpMat I = SpMat::identity(cs.amb_dim);
  for (int q = 1; q < n; ++q) cs.alpha.push_back(kron_super(to_matrix(embed(K.P, {q, q + 1}, n)), cp, U.w[q - 1], false));
  for (int p = 1; p <= n; ++p)
    cs.alpha.push_back(kron_super(to_matrix(embed(K.J, {p}, n)), cp, U.c[p - 1], true).scaled(GaussRat::I()));
  // group action
  for (auto& a : cs.alpha)
    if (!(a * a == I)) throw std::invalid_argument("alpha: generator does not square to 1");
  for (int q = 0; q + 2 < n; ++q) {
    auto &s = cs.alpha[q], &t = cs.alpha[q + 1];
    if (!(s * t * s == t * s * t)) throw std::invalid_argument("alpha: braid relation");
  }
  for (int p = 0; p < n; ++p) {
    const SpMat& cpm = cs.alpha[n - 1 + p];
    for (int r = 0; r < n; ++r)
      if (!(cpm * cs.alpha[n - 1 + r] == cs.alpha[n - 1 + r] * cpm))
        throw std::invalid_argument("alpha: Z_2 generators do not commute");
    for (int q = 0; q + 1 < n; ++q) {
      int sp = p == q ? q + 1 : p == q + 1 ? q : p;
      if (!(cs.alpha[q] * cpm * cs.alpha[q] == cs.alpha[n - 1 + sp]))
        throw std::invalid_argument("alpha: S_n does not permute the Z_2 generators");
    }
  }
  // averaging: (prod (1 + a_p)/2) * (1/n!) sum_w a(w)
  SpMat sumw(cs.amb_dim, cs.amb_dim);
  std::map<Perm, SpMat> aw;
  int count = 0;
  for (auto& v : all_perms(n)) {
    // v = s_q v', v' shorter
    SpMat m = I;
    Perm cur = v;
    while (true) {
      Perm vi = perm_inv(cur);
      int q = -1;
      for (size_t k = 0; k + 1 < cur.size(); ++k)
        if (vi[k] > vi[k + 1]) {
          q = (int)k;
          break;
        }
      if (q < 0) break;
      m = m * cs.alpha[q];
      Perm sq = perm_id(n);
      std::swap(sq[q], sq[q + 1]);
      cur = perm_mul(sq, cur);
    }
    sumw = sumw + m;
    ++count;
  }
  SpMat avg = sumw.scaled(GaussRat::frac(1, count));
  for (int p = 0; p < n; ++p) avg = ((I + cs.alpha[n - 1 + p]).scaled(GaussRat::frac(1, 2))) * avg;
  cs.avg = avg;
  // quotient basis: greedy over ambient columns, U index leading
  SpMat avgT = avg.transpose();
  RowEchelon ech(cs.amb_dim);
  std::vector<SpRow> brows;
  for (uint32_t b = 0; b < du; ++b)
    for (uint32_t a = 0; a < dc; ++a) {
      uint32_t k = a * du + b;
      if (avgT.rows[k].empty()) continue;
      if (ech.insert(avgT.rows[k])) {
        cs.free_cols.push_back(k);
        brows.push_back(avgT.rows[k]);
      }
    }
  cs.dim = cs.free_cols.size();
  std::vector<uint32_t> piv;
  for (uint32_t c = 0; c < cs.amb_dim; ++c)
    if (ech.is_pivot(c)) piv.push_back(c);
  // Pr = (B_P^T)^{-1} Avg_P
  SpMat BPt(cs.dim, cs.dim);
  {
    std::vector<int> where(cs.amb_dim, -1);
    for (size_t m = 0; m < piv.size(); ++m) where[piv[m]] = (int)m;
    SpMat BP(cs.dim, cs.dim);
    for (uint32_t k = 0; k < cs.dim; ++k) {
      for (auto& e : brows[k])
        if (where[e.col] >= 0) BP.rows[k].push_back({(uint32_t)where[e.col], e.v});
    }
    BPt = BP.transpose();
  }
  cs.proj = cs.dim ? inverse(BPt) * select_rows(avg, piv) : SpMat(0, cs.amb_dim);
  cs.sec = SpMat(cs.amb_dim, cs.dim);
  for (uint32_t k = 0; k < cs.dim; ++k) cs.sec.rows[cs.free_cols[k]].push_back({k, GaussRat(1)});
  cs.lift = select_cols(avg, cs.free_cols);
  for (auto k : cs.free_cols) cs.par.push_back(cs.amb_par[k]);
  return cs;
}

// ---------- the functor ----------

SpMat DrinfeldModule::coefficient_op(int i, int j, int s) const {
  int n = U.n;
  auto cp = cpar(N, n);
  SpMat acc(V.amb_dim, V.amb_dim);
  auto e = matrix_unit(N, j, i) + matrix_unit(N, -j, -i).scaled(sgn(s));
  for (int p = 1; p <= n; ++p) acc = acc + kron_super(to_matrix(embed(e, {p}, n)), cp, mpow(y[p - 1], s), false);
  return acc.scaled(-sgn(spar(j)));
}

namespace {

struct AuxOps {
  std::vector<SpMat> Pi, Pij;  // P_{1,p+1}, P_{1,p+1}J_1J_{p+1} on (C^{N|N})^{(x)(n+1)}
  std::vector<uint8_t> par;
};

AuxOps aux_ops(int N, int n) {
  auto K = constants(N);
  auto id1 = SuperOp::identity(cspace(N, 1));
  auto PJJ = K.P * koszul_tensor(K.J, id1) * koszul_tensor(id1, K.J);
  AuxOps a;
  a.par = cpar(N, n + 1);
  for (int p = 1; p <= n; ++p) {
    a.Pi.push_back(to_matrix(embed(K.P, {1, p + 1}, n + 1)));
    a.Pij.push_back(to_matrix(embed(PJJ, {1, p + 1}, n + 1)));
  }
  return a;
}

SpMat shifted_inverse(const SpMat& X, const GaussRat& u, int sign) {
  // (u + sign X)^{-1}
  return inverse(SpMat::identity(X.nr).scaled(u) + X.scaled(GaussRat(sign)));
}

}  // namespace

SpMat DrinfeldModule::product_on_lift(const GaussRat& u) const {
  int n = U.n;
  auto A = aux_ops(N, n);
  SpMat X = plain_kron(SpMat::identity(2 * N), V.lift);
  for (int p = n; p >= 1; --p) {
    const SpMat& xp = U.x[p - 1];
    SpMat F = kron_super(A.Pi[p - 1], A.par, shifted_inverse(xp, u, -1), false).scaled(GaussRat(-1)) +
              kron_super(A.Pij[p - 1], A.par, shifted_inverse(xp, u, 1), false);
    X = X + F * X;
  }
  return X;
}

SpMat DrinfeldModule::sum_on_lift(const GaussRat& u) const {
  int n = U.n;
  auto A = aux_ops(N, n);
  SpMat X0 = plain_kron(SpMat::identity(2 * N), V.lift), X = X0;
  for (int p = 1; p <= n; ++p) {
    const SpMat& yp = y[p - 1];
    SpMat F = kron_super(A.Pi[p - 1], A.par, shifted_inverse(yp, u, -1), false).scaled(GaussRat(-1)) +
              kron_super(A.Pij[p - 1], A.par, shifted_inverse(yp, u, 1), false);
    X = X + F * X0;
  }
  return X;
}

DrinfeldModule functor_apply(int N, const AnModule& U, int smax) {
  DrinfeldModule D;
  D.N = N;
  D.U = U;
  D.V = coinvariants(N, U);
  for (auto& yp : y_generators(U.n)) D.y.push_back(U.xi(yp));
  // a polynomial killing X and -X clears the denominators of (u -+ X)^{-1};
  // for the sum one polynomial serves every y_p
  std::vector<SpMat> ys;
  for (int p = 0; p < U.n; ++p) {
    D.product_degree += minpoly_degree(block_diag({U.x[p], -U.x[p]}));
    ys.push_back(D.y[p]);
    ys.push_back(-D.y[p]);
  }
  D.sum_degree = minpoly_degree(block_diag(ys));
  auto& g = D.rep;
  g.N = N;
  g.carrier = carrier_space(D.V.par);
  g.smax = smax;
  g.label = "F" + std::to_string(N) + "(" + U.label + ")";
  for (int s = 1; s <= smax; ++s)
    for (int i : sindices(N))
      for (int j : sindices(N)) {
        SpMat m = D.V.proj * (D.coefficient_op(i, j, s - 1) * D.V.sec);
        if (m.is_zero()) continue;
        g.table[{i, j, s}] = from_matrix(m, g.carrier);
      }
  // the action is the y-sum; the x-product form only enters the left-ideal check
  g.closed_degree = D.sum_degree;
  auto proj_aux = std::make_shared<SpMat>(plain_kron(SpMat::identity(2 * N), D.V.proj));
  auto self = std::make_shared<DrinfeldModule>(D);
  auto aux = g.aux_space();
  g.closed_form = [self, proj_aux, aux](const GaussRat& u) {
    return from_matrix(*proj_aux * self->sum_on_lift(u), aux);
  };
  return D;
}

// ---------- direct sums and irreducibility ----------

GenImage direct_sum(const GenImage& a, const GenImage& b) {
  auto pa = a.carrier->parities(), pb = b.carrier->parities();
  std::vector<uint8_t> par = pa;
  par.insert(par.end(), pb.begin(), pb.end());
  uint32_t da = pa.size(), d = par.size();
  GenImage g;
  g.N = a.N;
  g.carrier = carrier_space(par);
  g.smax = std::min(a.smax, b.smax);
  g.label = a.label + "(+)" + b.label;
  auto dsum = [da, d](const SpMat& x, const SpMat& y) {
    SpMat m(d, d);
    for (uint32_t r = 0; r < x.nr; ++r) m.rows[r] = x.rows[r];
    for (uint32_t r = 0; r < y.nr; ++r)
      for (auto& e : y.rows[r]) m.rows[da + r].push_back({e.col + da, e.v});
    return m;
  };
  for (int s = 1; s <= g.smax; ++s)
    for (int i : sindices(g.N))
      for (int j : sindices(g.N)) {
        auto m = dsum(to_matrix(a.get(i, j, s)), to_matrix(b.get(i, j, s)));
        if (!m.is_zero()) g.table[{i, j, s}] = from_matrix(m, g.carrier);
      }
  if (a.closed_form && b.closed_form) {
    g.closed_degree = a.closed_degree + b.closed_degree;
    auto fa = a.closed_form, fb = b.closed_form;
    int N = g.N;
    auto car = g.carrier, aux = g.aux_space();
    g.closed_form = [fa, fb, dsum, N, car, aux](const GaussRat& u) {
      auto ta = fa(u), tb = fb(u);
      SuperOp t(aux);
      for (int i : sindices(N))
        for (int j : sindices(N)) {
          auto m = dsum(to_matrix(block(ta, i, j)), to_matrix(block(tb, i, j)));
          if (!m.is_zero()) t = t + koszul_tensor(matrix_unit(N, i, j), from_matrix(m, car));
        }
      return t;
    };
  }
  return g;
}

namespace {

SpRow flatten(const SpMat& m) {
  SpRow r;
  for (uint32_t i = 0; i < m.nr; ++i)
    for (auto& e : m.rows[i]) r.push_back({i * m.nc + e.col, e.v});
  return r;
}

SpRow apply_row(const SpMat& m, const SpRow& v) {
  std::vector<GaussRat> x(m.nc);
  for (auto& e : v) x[e.col] = e.v;
  auto y = m.apply(x);
  SpRow r;
  for (uint32_t k = 0; k < y.size(); ++k)
    if (!y[k].is_zero()) r.push_back({k, y[k]});
  return r;
}

// invariant subspace generated by v; empty rows if v = 0
std::vector<SpRow> spin(const std::vector<SpMat>& gens, const SpRow& v, uint32_t d) {
  RowEchelon ech(d);
  std::vector<SpRow> basis, queue;
  if (!ech.insert(v)) return {};
  queue.push_back(v);
  while (!queue.empty()) {
    SpRow cur = queue.back();
    queue.pop_back();
    basis.push_back(cur);
    for (auto& g : gens) {
      auto w = apply_row(g, cur);
      if (ech.insert(w)) queue.push_back(w);
    }
    if (ech.rank() == d) break;
  }
  return ech.rank() == d ? std::vector<SpRow>(d) : basis;
}

bool verify_invariant(const std::vector<SpMat>& gens, const std::vector<SpRow>& basis, uint32_t d) {
  RowEchelon ech(d);
  for (auto& b : basis) ech.insert(b);
  for (auto& g : gens)
    for (auto& b : basis)
      if (!ech.reduce(apply_row(g, b)).empty()) return false;
  return true;
}

}  // namespace

IrreducibilityResult irreducibility_test(const std::vector<SpMat>& gens0, const std::vector<uint8_t>& par,
                                         int iterations, uint64_t seed) {
  IrreducibilityResult res;
  uint32_t d = par.size();
  res.full_dim = size_t(d) * d;
  // graded subspaces are exactly those stable under the parity operator
  std::vector<SpMat> gens = gens0;
  SpMat gamma(d, d);
  for (uint32_t k = 0; k < d; ++k) gamma.rows[k].push_back({k, GaussRat(par[k] ? -1 : 1)});
  gens.push_back(gamma);
  // span of the algebra
  RowEchelon ech(d * d);
  std::vector<SpMat> basis{SpMat::identity(d)};
  ech.insert(flatten(basis[0]));
  for (size_t k = 0; k < basis.size() && ech.rank() < res.full_dim; ++k)
    for (auto& g : gens) {
      SpMat p = g * basis[k];
      if (ech.insert(flatten(p))) basis.push_back(p);
    }
  res.span_dim = ech.rank();
  if (res.span_dim == res.full_dim) {
    res.status = Status::Pass;
    res.note = "algebra with the parity operator spans all " + std::to_string(res.full_dim) + " matrices";
    return res;
  }
  std::mt19937_64 rng(seed);
  auto try_vec = [&](const SpRow& v) -> bool {
    if (v.empty()) return false;
    auto sub = spin(gens, v, d);
    if (sub.empty() || sub.size() >= d) return false;
    if (!verify_invariant(gens, sub, d)) return false;
    res.certificate = sub;
    return true;
  };
  for (uint32_t k = 0; k < d; ++k)
    if (try_vec(unit(k))) {
      res.status = Status::Fail;
      res.note = "spun up from basis vector " + std::to_string(k);
      return res;
    }
  // dual side: an invariant subspace of the transposed action has an invariant annihilator
  std::vector<SpMat> gens_t;
  for (auto& g : gens) gens_t.push_back(g.transpose());
  auto try_dual = [&](const SpRow& w) -> bool {
    if (w.empty()) return false;
    auto sub = spin(gens_t, w, d);
    if (sub.empty() || sub.size() >= d) return false;
    SpMat m((uint32_t)sub.size(), d);
    for (size_t k = 0; k < sub.size(); ++k) m.rows[k] = sub[k];
    auto ann = kernel(m);
    if (ann.empty() || !verify_invariant(gens, ann, d)) return false;
    res.certificate = ann;
    return true;
  };
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int it = 0; it < iterations; ++it) {
    SpMat a(d, d);
    for (auto& b : basis) a = a + b.scaled(GaussRat(coef(rng)));
    // Norton-style: kernels of a - lambda for small integer lambda
    for (int lam = -2; lam <= 2; ++lam) {
      SpMat al = a - SpMat::identity(d).scaled(GaussRat(lam));
      for (auto& v : kernel(al))
        if (try_vec(v)) {
          res.status = Status::Fail;
          res.note = "spun up from a kernel vector at iteration " + std::to_string(it);
          return res;
        }
      for (auto& v : kernel(al.transpose()))
        if (try_dual(v)) {
          res.status = Status::Fail;
          res.note = "annihilator of a dual spin at iteration " + std::to_string(it);
          return res;
        }
    }
    SpRow v;
    for (uint32_t k = 0; k < d; ++k)
      if (int c = coef(rng)) v.push_back({k, GaussRat(c)});
    if (try_vec(v)) {
      res.status = Status::Fail;
      res.note = "spun up from a random vector";
      return res;
    }
  }
  res.note = "span " + std::to_string(res.span_dim) + " of " + std::to_string(res.full_dim) +
             ", no invariant subspace found after " + std::to_string(iterations) + " iterations";
  return res;
}

std::vector<SpMat> module_generators(const AnModule& U) {
  std::vector<SpMat> g;
  for (auto* v : {&U.w, &U.c, &U.x})
    for (auto& m : *v) g.push_back(m);
  return g;
}

AnModule irreducible_quotient(const AnModule& U, int iterations, uint64_t seed) {
  AnModule Q = U;
  while (true) {
    auto r = irreducibility_test(module_generators(Q), Q.par, iterations, seed);
    if (r.status == Status::Pass) return Q;
    if (r.status == Status::Inconclusive) throw std::runtime_error("irreducible_quotient: " + r.note);
    Q = quotient(Q, r.certificate);
  }
}

namespace {

// the first `count` of some fixed points where no closed form has a pole
std::vector<GaussRat> regular_points(const std::vector<const GenImage*>& reps, size_t count) {
  std::vector<GaussRat> out;
  for (auto [a, b] : {std::pair{7, 3}, {-11, 5}, {13, 7}, {-17, 4}, {29, 6}, {-31, 9}}) {
    GaussRat u = GaussRat::frac(a, b);
    try {
      for (auto* r : reps) r->closed_form(u);
    } catch (const Singular&) {
      continue;
    }
    out.push_back(u);
    if (out.size() == count) return out;
  }
  throw std::runtime_error("no regular sample points");
}

}  // namespace

IrreducibilityResult irreducibility_test(const GenImage& V, int smax, int iterations, uint64_t seed) {
  std::vector<SpMat> gens;
  for (int s = 1; s <= std::min(smax, V.smax); ++s)
    for (int i : sindices(V.N))
      for (int j : sindices(V.N)) {
        auto m = to_matrix(V.get(i, j, s));
        if (!m.is_zero()) gens.push_back(m);
      }
  if (V.closed_form)
    for (auto u : regular_points({&V}, 2)) {
      auto t = V.closed_form(u);
      for (int i : sindices(V.N))
        for (int j : sindices(V.N)) {
          auto m = to_matrix(block(t, i, j));
          if (!m.is_zero()) gens.push_back(m);
        }
    }
  return irreducibility_test(gens, V.carrier->parities(), iterations, seed);
}

// ---------- checks ----------

CheckResult check_an_module(const AnModule& U) {
  return run_check("drinfeld/an_module/" + U.label, "A_n relations on module matrices", [&]() -> Verdict {
    auto d = U.defect();
    return {d.empty(), d.empty() ? "dim " + std::to_string(U.dim()) : d};
  });
}

CheckResult check_coinvariants(int N, const AnModule& U) {
  return run_check("drinfeld/coinvariants/N=" + std::to_string(N) + "/" + U.label,
                   "co-invariants of the hyperoctahedral action", [&]() -> Verdict {
                     auto cs = coinvariants(N, U);
                     SpMat I = SpMat::identity(cs.dim);
                     if (!(cs.proj * cs.sec == I)) return {false, "projection o section != identity"};
                     if (!(cs.proj * cs.lift == I)) return {false, "projection o lift != identity"};
                     for (size_t k = 0; k < cs.alpha.size(); ++k) {
                       if (!(cs.proj * cs.alpha[k] == cs.proj)) return {false, "projection does not kill alpha(g)-1"};
                       if (!(cs.alpha[k] * cs.lift == cs.lift)) return {false, "lift not invariant"};
                     }
                     for (uint32_t r = 0; r < cs.dim; ++r)
                       for (auto& e : cs.proj.rows[r])
                         if (cs.par[r] != cs.amb_par[e.col]) return {false, "projection not even"};
                     return {true, "dim V = " + std::to_string(cs.dim) + " of " + std::to_string(cs.amb_dim)};
                   });
}

CheckResult check_generators_suffice(int N, const AnModule& U) {
  return run_check("drinfeld/generators_suffice/N=" + std::to_string(N) + "/" + U.label,
                   "span of (alpha(g)-1) images: generators vs group", [&]() -> Verdict {
                     auto cs = coinvariants(N, U);
                     int n = U.n;
                     uint32_t D = cs.amb_dim;
                     SpMat I = SpMat::identity(D);
                     auto span_rank = [&](const std::vector<SpMat>& ops) {
                       RowEchelon e(D);
                       for (auto& op : ops) {
                         SpMat t = (op - I).transpose();
                         for (auto& r : t.rows) e.insert(r);
                       }
                       return e.rank();
                     };
                     size_t rg = span_rank(cs.alpha);
                     // the whole group: c-subsets times permutations
                     std::vector<SpMat> group;
                     std::vector<SpMat> perms{I};
                     for (size_t k = 0; k < perms.size(); ++k)
                       for (int q = 0; q + 1 < n; ++q) {
                         SpMat m = cs.alpha[q] * perms[k];
                         if (std::find(perms.begin(), perms.end(), m) == perms.end()) perms.push_back(m);
                       }
                     for (uint32_t mask = 0; mask < (1u << n); ++mask) {
                       SpMat cm = I;
                       for (int p = 0; p < n; ++p)
                         if (mask >> p & 1) cm = cm * cs.alpha[n - 1 + p];
                       for (auto& w : perms) group.push_back(cm * w);
                     }
                     size_t rf = span_rank(group);
                     if (rg != rf) return {false, "generator span " + std::to_string(rg) + " vs group span " + std::to_string(rf)};
                     if (D - rf != cs.dim) return {false, "quotient dimension " + std::to_string(cs.dim) + " vs " + std::to_string(D - rf)};
                     return {true, std::to_string(group.size()) + " group elements, codim " + std::to_string(cs.dim)};
                   });
}

CheckResult check_functor_table(const DrinfeldModule& D) {
  return run_check("drinfeld/functor_table/" + D.rep.label, "induced T_ij^(s+1) = u^{-s-1} coefficient of the y-sum",
                   [&]() -> Verdict {
                     int N = D.N, n = D.U.n;
                     auto A = aux_ops(N, n);
                     auto aux = D.rep.aux_space();
                     SpMat pa = plain_kron(SpMat::identity(2 * N), D.V.proj),
                           sa = plain_kron(SpMat::identity(2 * N), D.V.sec);
                     for (int s = 0; s < D.rep.smax; ++s) {
                       // -sum P_{1,p+1} (x) y_p^s + sum P_{1,p+1}J_1J_{p+1} (x) (-y_p)^s
                       SpMat C(pa.nc, pa.nc);
                       for (int p = 1; p <= n; ++p) {
                         SpMat ys = mpow(D.y[p - 1], s);
                         C = C - kron_super(A.Pi[p - 1], A.par, ys, false) +
                             kron_super(A.Pij[p - 1], A.par, ys.scaled(sgn(s)), false);
                       }
                       auto op = from_matrix(pa * C * sa, aux);
                       for (int i : sindices(N))
                         for (int j : sindices(N)) {
                           auto d = SuperOp::first_difference(block(op, i, j), D.rep.get(i, j, s + 1));
                           if (!d.empty()) return {false, "T" + idx_str(i, j, s + 1) + ": " + d};
                         }
                     }
                     return {true, "s <= " + std::to_string(D.rep.smax)};
                   });
}

CheckResult check_left_ideal(const DrinfeldModule& D) {
  return run_check("drinfeld/left_ideal/" + D.rep.label, "x-product operator minus y-sum operator lies in the left ideal killed by co-invariants",
                   [&]() -> Verdict {
                     int bound = D.product_degree + D.sum_degree;
                     auto res = certify_on_grid(1, bound, [&](const std::vector<GaussRat>& p) {
                       auto d = mat_diff(D.product_on_lift(p[0]), D.sum_on_lift(p[0]));
                       return d.empty() ? d : "u=" + p[0].str() + ": " + d;
                     });
                     return {res.ok, res.ok ? std::to_string(res.points) + " points, degree bound " + std::to_string(bound)
                                            : res.witness};
                   });
}

CheckResult check_left_ideal_with_x(const DrinfeldModule& D) {
  DrinfeldModule E = D;
  E.y = D.U.x;
  std::vector<SpMat> xs;
  for (auto& x : D.U.x) {
    xs.push_back(x);
    xs.push_back(-x);
  }
  E.sum_degree = minpoly_degree(block_diag(xs));
  E.rep.label = D.rep.label + "/x_in_sum";
  return check_left_ideal(E);
}

CheckResult check_commutation(const DrinfeldModule& D, int smax) {
  return run_check("drinfeld/commutation/" + D.rep.label, "y-sum operator commutes with P_pq(x)w_pq and J_p(x)c_p",
                   [&]() -> Verdict {
                     int N = D.N, n = D.U.n;
                     auto cp = cpar(N, n);
                     auto K = constants(N);
                     std::vector<std::pair<std::string, SpMat>> gs;
                     for (int p = 1; p <= n; ++p)
                       for (int q = p + 1; q <= n; ++q)
                         gs.emplace_back("P" + std::to_string(p) + std::to_string(q),
                                         kron_super(to_matrix(embed(K.P, {p, q}, n)), cp, D.U.xi(AnElement::w(n, p, q)), false));
                     for (int p = 1; p <= n; ++p)
                       gs.emplace_back("J" + std::to_string(p),
                                       kron_super(to_matrix(embed(K.J, {p}, n)), cp, D.U.c[p - 1], true));
                     size_t count = 0;
                     for (int s = 0; s < smax; ++s)
                       for (int i : sindices(N))
                         for (int j : sindices(N)) {
                           SpMat op = D.coefficient_op(i, j, s);
                           for (auto& [name, g] : gs) {
                             ++count;
                             if (!(op * g == g * op)) return {false, "T" + idx_str(i, j, s + 1) + " vs " + name};
                           }
                         }
                     return {true, std::to_string(count) + " commutators"};
                   });
}

CheckResult check_eval_match(int N, const GaussRat& z, int smax) {
  return run_check("drinfeld/eval_match/N=" + std::to_string(N) + "/z=" + z.str(),
                   "F_N(U_z) equals the evaluation representation", [&]() -> Verdict {
                     auto D = functor_apply(N, principal_series({z}), smax);
                     auto E = eval_rep(N, z, smax);
                     for (uint32_t a = 0; a < (uint32_t)(2 * N); ++a)
                       if (D.V.free_cols.size() != (size_t)(2 * N) || D.V.free_cols[a] != 2 * a)
                         return {false, "section is not a (x) 1 -> a"};
                     if (D.rep.carrier->parities() != E.carrier->parities()) return {false, "parities differ"};
                     for (int s = 1; s <= smax; ++s)
                       for (int i : sindices(N))
                         for (int j : sindices(N)) {
                           auto d = mat_diff(D.rep.get(i, j, s).m, E.get(i, j, s).m);
                           if (!d.empty()) return {false, "T" + idx_str(i, j, s) + ": " + d};
                         }
                     for (auto u : {GaussRat(5), GaussRat::frac(-3, 7)}) {
                       auto d = mat_diff(to_matrix(D.rep.closed_form(u)), to_matrix(E.closed_form(u)));
                       if (!d.empty()) return {false, "closed form at u=" + u.str() + ": " + d};
                     }
                     return {true, "generators up to s=" + std::to_string(smax) + " and T(u) agree"};
                   });
}

CheckResult check_functor_dim(int N, const GaussRat& z) {
  return run_check("drinfeld/dim/N=" + std::to_string(N), "dim F_N(U_z) = 2N", [&]() -> Verdict {
    auto cs = coinvariants(N, principal_series({z}));
    return {cs.dim == (uint32_t)(2 * N), "dim " + std::to_string(cs.dim)};
  });
}

CheckResult check_odot_principal(const GaussRat& z1, const GaussRat& z2) {
  return run_check("drinfeld/odot_principal/" + z1.str() + "," + z2.str(), "U_z1 (.) U_z2 = U_{z1,z2}",
                   [&]() -> Verdict {
                     auto W = odot(principal_series({z1}), principal_series({z2}));
                     auto P = principal_series({z1, z2});
                     if (W.dim() != 8 || P.dim() != 8) return {false, "dimension " + std::to_string(W.dim())};
                     // 1 (x) 1 (x) 1 is an x-eigenvector; its H_2-orbit gives the isomorphism
                     std::vector<GaussRat> v0(8);
                     v0[0] = GaussRat(1);
                     GaussRat zz[2] = {z1, z2};
                     for (int p = 0; p < 2; ++p) {
                       auto xv = W.x[p].apply(v0);
                       for (int k = 0; k < 8; ++k)
                         if (xv[k] != v0[k] * zz[p]) return {false, "x_p does not act by z_p on the generator"};
                     }
                     SpMat phiT(8, 8);
                     auto B = hn_basis(2);
                     for (size_t k = 0; k < B.size(); ++k) {
                       auto col = W.xi(AnElement::basis(2, B[k].c, B[k].w)).apply(v0);
                       for (uint32_t r = 0; r < 8; ++r)
                         if (!col[r].is_zero()) phiT.rows[k].push_back({r, col[r]});
                     }
                     SpMat phi = phiT.transpose();
                     if (rank_of(phi) != 8) return {false, "map not invertible"};
                     auto gw = module_generators(W), gp = module_generators(P);
                     for (size_t k = 0; k < gw.size(); ++k)
                       if (!(phi * gp[k] == gw[k] * phi)) return {false, "generator " + std::to_string(k) + " not intertwined"};
                     return {true, "explicit isomorphism of 8-dimensional modules"};
                   });
}

namespace {

// all X with X A_k = B_k X, as a basis of d_b x d_a matrices
std::vector<SpMat> intertwiners(const std::vector<SpMat>& A, const std::vector<SpMat>& B, uint32_t da, uint32_t db) {
  std::vector<SpRow> eqs;
  for (size_t g = 0; g < A.size(); ++g) {
    SpMat At = A[g].transpose();
    for (uint32_t r = 0; r < db; ++r)
      for (uint32_t c = 0; c < da; ++c) {
        RowAccumulator acc(db * da);
        for (auto& e : At.rows[c]) acc.add(r * da + e.col, e.v);
        for (auto& e : B[g].rows[r]) acc.sub(e.col * da + c, e.v);
        auto row = acc.take();
        if (!row.empty()) eqs.push_back(std::move(row));
      }
  }
  SpMat sys((uint32_t)eqs.size(), db * da);
  sys.rows = std::move(eqs);
  std::vector<SpMat> out;
  for (auto& v : kernel(sys)) {
    SpMat x(db, da);
    for (auto& e : v) x.rows[e.col / da].push_back({e.col % da, e.v});
    out.push_back(x);
  }
  return out;
}

}  // namespace

CheckResult check_tensor_product(int N, const AnModule& U, const AnModule& Up, int smax) {
  return run_check("drinfeld/tensor_product/N=" + std::to_string(N) + "/" + U.label + "," + Up.label,
                   "F_N(U (.) U') isomorphic to F_N(U) (x) F_N(U')", [&]() -> Verdict {
                     auto D1 = functor_apply(N, U, smax), D2 = functor_apply(N, Up, smax);
                     auto W = odot(U, Up);
                     auto Dw = functor_apply(N, W, smax);
                     auto T = delta_compose(D1.rep, D2.rep);
                     uint32_t d1 = D1.V.dim, d2 = D2.V.dim, dw = Dw.V.dim, dt = d1 * d2;
                     auto direct = natural_map_defect(N, U, Up, smax, false);
                     std::string note = direct.empty() ? "map of the proof intertwines; " : "map of the proof fails at " + direct + "; ";
                     if (dt != dw) return {false, "dimensions " + std::to_string(d1) + "*" + std::to_string(d2) + " vs " + std::to_string(dw)};
                     std::vector<SpMat> A, B;
                     for (int s = 1; s <= smax; ++s)
                       for (int i : sindices(N))
                         for (int j : sindices(N)) {
                           A.push_back(to_matrix(T.get(i, j, s)));
                           B.push_back(to_matrix(Dw.rep.get(i, j, s)));
                         }
                     // T(u) at two points pins down the map when smax is small
                     for (auto u : regular_points({&T, &Dw.rep}, 2)) {
                       auto ta = T.closed_form(u), tb = Dw.rep.closed_form(u);
                       for (int i : sindices(N))
                         for (int j : sindices(N)) {
                           A.push_back(to_matrix(block(ta, i, j)));
                           B.push_back(to_matrix(block(tb, i, j)));
                         }
                     }
                     auto basis = intertwiners(A, B, dt, dw);
                     if (basis.empty()) return {false, "no nonzero intertwiner"};
                     // even part of a fixed integer combination
                     auto pt = T.carrier->parities();
                     SpMat X(dw, dt);
                     for (size_t k = 0; k < basis.size(); ++k) X = X + basis[k].scaled(GaussRat(int(k % 5) + 1 + int(k / 5)));
                     for (uint32_t r = 0; r < dw; ++r)
                       X.rows[r].erase(std::remove_if(X.rows[r].begin(), X.rows[r].end(),
                                                      [&](const Entry& e) { return Dw.V.par[r] != pt[e.col]; }),
                                       X.rows[r].end());
                     if (rank_of(X) != dw) return {false, "intertwiners (dim " + std::to_string(basis.size()) + ") contain no invertible even map"};
                     // T(u) on both sides, certified over all u
                     SpMat Xa = plain_kron(SpMat::identity(2 * N), X);
                     int bound = T.closed_degree + Dw.rep.closed_degree;
                     auto res = certify_on_grid(1, bound, [&](const std::vector<GaussRat>& p) {
                       auto d = mat_diff(Xa * to_matrix(T.closed_form(p[0])), to_matrix(Dw.rep.closed_form(p[0])) * Xa);
                       return d.empty() ? d : "T(u) at u=" + p[0].str() + ": " + d;
                     });
                     if (!res.ok) return {false, res.witness};
                     return {true, note + "even invertible intertwiner, intertwiner space dim " + std::to_string(basis.size()) +
                                       ", T(u) checked at " + std::to_string(res.points) + " points"};
                   });
}

// the map induced by a (x) b (x) a' (x) b' -> a (x) a' (x) 1 (x) b (x) b'; reports the first generator it fails on
std::string natural_map_defect(int N, const AnModule& U, const AnModule& Up, int smax, bool reversed) {
  auto D1 = functor_apply(N, U, smax), D2 = functor_apply(N, Up, smax);
  auto W = odot(U, Up);
  auto Dw = functor_apply(N, W, smax);
  uint32_t d1 = D1.V.dim, d2 = D2.V.dim, du = U.dim(), dup = Up.dim(), dW = W.dim();
  uint32_t dc2 = cspace(N, Up.n)->total;
  auto cp2 = cpar(N, Up.n);
  SpMat proj_t = Dw.V.proj.transpose();
  SpMat phiT(d1 * d2, Dw.V.dim);
  auto p1 = D1.V.par, p2 = D2.V.par;
  for (uint32_t k = 0; k < d1; ++k)
    for (uint32_t l = 0; l < d2; ++l) {
      uint32_t f1 = D1.V.free_cols[k], f2 = D2.V.free_cols[l];
      uint32_t a = f1 / du, b = f1 % du, ap = f2 / dup, bp = f2 % dup;
      GaussRat sg = sgn(cp2[ap] & U.par[b]);
      // reversed: source is V' (x) V, reached through the Koszul flip
      uint32_t row = reversed ? l * d1 + k : k * d2 + l;
      if (reversed) sg = sg * sgn(p1[k] & p2[l]);
      uint32_t amb = (a * dc2 + ap) * dW + (b * dup + bp);
      for (auto& e : proj_t.rows[amb]) phiT.rows[row].push_back({e.col, e.v * sg});
    }
  SpMat phi = phiT.transpose();
  auto T = reversed ? delta_compose(D2.rep, D1.rep) : delta_compose(D1.rep, D2.rep);
  for (int s = 1; s <= smax; ++s)
    for (int i : sindices(N))
      for (int j : sindices(N)) {
        auto d = mat_diff(phi * to_matrix(T.get(i, j, s)), to_matrix(Dw.rep.get(i, j, s)) * phi);
        if (!d.empty()) return "T" + idx_str(i, j, s) + ": " + d;
      }
  return "";
}

CheckResult check_functoriality(int N, const AnModule& U, uint64_t seed) {
  return run_check("drinfeld/functoriality/N=" + std::to_string(N) + "/" + U.label,
                   "equivalent A_n-modules give equivalent Y(q_N)-modules", [&]() -> Verdict {
                     std::mt19937_64 rng(seed);
                     uint32_t d = U.dim();
                     // random even invertible g: unitriangular within each parity block
                     SpMat g = SpMat::identity(d);
                     for (uint32_t r = 0; r < d; ++r)
                       for (uint32_t c = r + 1; c < d; ++c)
                         if (U.par[r] == U.par[c] && rng() % 3 == 0) g.rows[r].push_back({c, GaussRat(int(rng() % 5) - 2)});
                     for (auto& row : g.rows) {
                       row.erase(std::remove_if(row.begin(), row.end(), [](const Entry& e) { return e.v.is_zero(); }), row.end());
                     }
                     auto U2 = conjugated(U, g);
                     int smax = 2;
                     auto D1 = functor_apply(N, U, smax), D2 = functor_apply(N, U2, smax);
                     auto cp = cpar(N, U.n);
                     SpMat idc = SpMat::identity(cspace(N, U.n)->total);
                     SpMat psi = D2.V.proj * kron_super(idc, cp, g, false) * D1.V.sec;
                     if (psi.nr != psi.nc || rank_of(psi) != psi.nr) return {false, "induced map not invertible"};
                     for (int s = 1; s <= smax; ++s)
                       for (int i : sindices(N))
                         for (int j : sindices(N)) {
                           auto d = mat_diff(psi * to_matrix(D1.rep.get(i, j, s)), to_matrix(D2.rep.get(i, j, s)) * psi);
                           if (!d.empty()) return {false, "T" + idx_str(i, j, s) + ": " + d};
                         }
                     return {true, "intertwiner of dimension " + std::to_string(psi.nr)};
                   });
}

CheckResult check_irreducible(const GenImage& V, int smax, int iterations, uint64_t seed) {
  return run_check("drinfeld/irreducible/" + V.label, "F_N(U) irreducible for irreducible U (instance)", [&]() -> Verdict {
    auto r = irreducibility_test(V, smax, iterations, seed);
    if (r.status == Status::Pass) return {true, r.note};
    if (r.status == Status::Fail) return {false, "invariant subspace of dim " + std::to_string(r.certificate.size()) + ": " + r.note};
    throw std::runtime_error("inconclusive: " + r.note);
  });
}

CheckResult check_centre_scalars(const GenImage& V, int L) {
  return run_check("drinfeld/centre_scalars/" + V.label, "central series acts by scalars on an irreducible module",
                   [&]() -> Verdict {
                     std::string problem;
                     auto Z = centre_series(V, L, &problem);
                     if (!problem.empty()) return {false, problem};
                     auto one = SuperOp::identity(V.carrier);
                     for (int s = 0; s < L; ++s) {
                       auto& z = Z.coeff[s];
                       GaussRat c = z.m.get(0, 0);
                       if (z != one.scaled(c)) return {false, "Z^(" + std::to_string(s) + ") is not a scalar"};
                     }
                     return {true, "Z^(0.." + std::to_string(L - 1) + ") scalar"};
                   });
}

CheckResult check_reducible_control(const GenImage& V, int smax, int iterations, uint64_t seed) {
  return run_check("drinfeld/reducible_control/" + V.label, "graded invariant subspace certificate", [&]() -> Verdict {
    auto r = irreducibility_test(V, smax, iterations, seed);
    if (r.status == Status::Fail) return {true, "certificate of dim " + std::to_string(r.certificate.size()) + ": " + r.note};
    return {false, "no certificate: " + r.note};
  });
}

}  // namespace yqn
