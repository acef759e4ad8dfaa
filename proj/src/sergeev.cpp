#include "yqn/sergeev.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "yqn/rmatrix.hpp"

namespace yqn {

// ---------- permutations ----------

Perm perm_id(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_mul(const Perm& v, const Perm& w) {
  Perm r(w.size());
  for (size_t p = 0; p < w.size(); ++p) r[p] = v[w[p]];
  return r;
}

Perm perm_inv(const Perm& w) {
  Perm r(w.size());
  for (size_t p = 0; p < w.size(); ++p) r[w[p]] = p;
  return r;
}

Perm transposition(int n, int p, int q) {
  Perm r = perm_id(n);
  std::swap(r[p - 1], r[q - 1]);
  return r;
}

int perm_length(const Perm& w) {
  int l = 0;
  for (size_t a = 0; a < w.size(); ++a)
    for (size_t b = a + 1; b < w.size(); ++b) l += w[a] > w[b];
  return l;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = perm_id(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace {

bool is_id(const Perm& w) {
  for (size_t p = 0; p < w.size(); ++p)
    if (w[p] != p) return false;
  return true;
}

// q with w = s_q w', l(w') < l(w)
int left_descent(const Perm& w) {
  Perm wi = perm_inv(w);
  for (size_t q = 0; q + 1 < w.size(); ++q)
    if (wi[q] > wi[q + 1]) return (int)q;
  return -1;
}

// c_A c_B = sign c_{A xor B}
int mask_mul_sign(uint32_t a, uint32_t b) { return pair_parity(a, b) ^ (__builtin_popcount(a & b) & 1); }

// w c_B w^-1 = sign c_{w(B)}
std::pair<int, uint32_t> permute_mask(const Perm& w, uint32_t c) {
  std::vector<int> seq;
  for (size_t p = 0; p < w.size(); ++p)
    if (c >> p & 1) seq.push_back(w[p]);
  int s = 0;
  uint32_t m = 0;
  for (size_t a = 0; a < seq.size(); ++a) {
    m |= 1u << seq[a];
    for (size_t b = a + 1; b < seq.size(); ++b) s ^= seq[a] > seq[b];
  }
  return {s, m};
}

GaussRat sgn(int s) { return GaussRat(s & 1 ? -1 : 1); }

// (c_A wA) * T, T in normal form
AnElement left_h(uint32_t cA, const Perm& wA, const AnElement& T) {
  AnElement out(T.n);
  for (auto& [k, v] : T.t) {
    auto [s1, m1] = permute_mask(wA, k.c);
    int s2 = mask_mul_sign(cA, m1);
    out.add(SKey{cA ^ m1, perm_mul(wA, k.w), k.x}, (s1 ^ s2) ? -v : v);
  }
  return out;
}

AnElement x_times_perm(const std::vector<uint8_t>& r, const Perm& v);

int x_sign(const std::vector<uint8_t>& r, uint32_t c) {
  int s = 0;
  for (size_t p = 0; p < r.size(); ++p)
    if (c >> p & 1) s ^= r[p] & 1;
  return s;
}

// x^r c_B w
AnElement x_times_cw(const std::vector<uint8_t>& r, uint32_t c, const Perm& w) {
  AnElement T = x_times_perm(r, w);
  if (c == 0) return T;
  return left_h(c, perm_id(w.size()), T).scaled(sgn(x_sign(r, c)));
}

// x^r s_q, q 0-based
AnElement x_times_s(const std::vector<uint8_t>& r, int q) {
  thread_local std::map<std::pair<std::vector<uint8_t>, int>, AnElement> cache;
  auto key = std::make_pair(r, q);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  int n = r.size();
  Perm sq = perm_id(n);
  std::swap(sq[q], sq[q + 1]);
  AnElement out(n);
  int p = n - 1;
  while (p >= 0 && r[p] == 0) --p;
  if (p < 0) {
    out.add(SKey{0, sq, r}, GaussRat(1));
  } else {
    auto rest = r;
    --rest[p];
    int pp = sq[p];
    for (auto& [k, v] : x_times_s(rest, q).t) {
      SKey k2 = k;
      ++k2.x[pp];
      out.add(k2, v);
    }
    if (p == q || p == q + 1) {
      // x_q s_q = s_q x_{q+1} - 1 - c_q c_{q+1};  x_{q+1} s_q = s_q x_q + 1 - c_q c_{q+1}
      Perm id = perm_id(n);
      uint32_t cc = (1u << q) | (1u << (q + 1));
      out = out + x_times_cw(rest, 0, id).scaled(GaussRat(p == q ? -1 : 1)) - x_times_cw(rest, cc, id);
    }
  }
  cache.emplace(key, out);
  return out;
}

AnElement x_times_perm(const std::vector<uint8_t>& r, const Perm& v) {
  int n = v.size();
  bool rz = std::all_of(r.begin(), r.end(), [](uint8_t e) { return e == 0; });
  if (rz || is_id(v)) {
    AnElement out(n);
    out.add(SKey{0, v, r}, GaussRat(1));
    return out;
  }
  thread_local std::map<std::pair<std::vector<uint8_t>, Perm>, AnElement> cache;
  auto key = std::make_pair(r, v);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  int q = left_descent(v);
  Perm sq = perm_id(n);
  std::swap(sq[q], sq[q + 1]);
  Perm vp = perm_mul(sq, v);
  AnElement out(n);
  for (auto& [k, c] : x_times_s(r, q).t) {
    auto part = left_h(k.c, k.w, x_times_perm(k.x, vp));
    for (auto& [k2, c2] : part.t) out.add(k2, c * c2);
  }
  cache.emplace(key, out);
  return out;
}

}  // namespace

// ---------- elements ----------

void AnElement::add(const SKey& k, const GaussRat& a) {
  if (a.is_zero()) return;
  auto [it, fresh] = t.emplace(k, a);
  if (!fresh) {
    it->second += a;
    if (it->second.is_zero()) t.erase(it);
  }
}

AnElement AnElement::scalar(int n, const GaussRat& a) {
  AnElement e(n);
  e.add(SKey{0, perm_id(n), std::vector<uint8_t>(n, 0)}, a);
  return e;
}

AnElement AnElement::basis(int n, uint32_t c, const Perm& w, const std::vector<uint8_t>& x) {
  AnElement e(n);
  e.add(SKey{c, w, x.empty() ? std::vector<uint8_t>(n, 0) : x}, GaussRat(1));
  return e;
}

AnElement AnElement::c(int n, int p) { return basis(n, 1u << (p - 1), perm_id(n)); }
AnElement AnElement::w(int n, int p, int q) { return basis(n, 0, transposition(n, p, q)); }
AnElement AnElement::perm(int n, const Perm& w) { return basis(n, 0, w); }
AnElement AnElement::x(int n, int p) {
  std::vector<uint8_t> e(n, 0);
  e[p - 1] = 1;
  return basis(n, 0, perm_id(n), e);
}

bool AnElement::in_hn() const {
  for (auto& [k, v] : t)
    for (auto e : k.x)
      if (e) return false;
  return true;
}

int AnElement::parity() const {
  int p = -1;
  for (auto& [k, v] : t) {
    int q = __builtin_popcount(k.c) & 1;
    if (p < 0) p = q;
    else if (p != q) return 2;
  }
  return p;
}

int AnElement::x_degree() const {
  int d = 0;
  for (auto& [k, v] : t) d = std::max(d, (int)std::accumulate(k.x.begin(), k.x.end(), 0));
  return d;
}

AnElement AnElement::operator-() const { return scaled(GaussRat(-1)); }

AnElement AnElement::scaled(const GaussRat& a) const {
  AnElement e(n);
  if (a.is_zero()) return e;
  for (auto& [k, v] : t) e.t.emplace(k, v * a);
  return e;
}

AnElement operator+(const AnElement& a, const AnElement& b) {
  AnElement e = a;
  if (e.n == 0) e.n = b.n;
  for (auto& [k, v] : b.t) e.add(k, v);
  return e;
}

AnElement operator-(const AnElement& a, const AnElement& b) { return a + (-b); }

AnElement an_mul(const AnElement& a, const AnElement& b) {
  if (a.n != b.n) throw std::invalid_argument("A_n size mismatch");
  AnElement out(a.n);
  for (auto& [kb, vb] : b.t) {
    // x^{xA} c_B w_B, grouped by the left exponent
    std::map<std::vector<uint8_t>, AnElement> mid;
    for (auto& [ka, va] : a.t) {
      auto it = mid.find(ka.x);
      if (it == mid.end()) it = mid.emplace(ka.x, x_times_cw(ka.x, kb.c, kb.w)).first;
      for (auto& [k, v] : left_h(ka.c, ka.w, it->second).t) {
        SKey k2 = k;
        for (int p = 0; p < a.n; ++p) k2.x[p] += kb.x[p];
        out.add(k2, v * va * vb);
      }
    }
  }
  return out;
}

AnElement operator*(const AnElement& a, const AnElement& b) { return an_mul(a, b); }

HnElement hn_mul(const HnElement& a, const HnElement& b) {
  if (!a.in_hn() || !b.in_hn()) throw std::invalid_argument("hn_mul: argument has x factors");
  return an_mul(a, b);
}

AnElement commutator(const AnElement& a, const AnElement& b) { return a * b - b * a; }

AnElement AnElement::pow(int e) const {
  AnElement r = scalar(n, GaussRat(1));
  for (int k = 0; k < e; ++k) r = r * *this;
  return r;
}

std::string AnElement::str() const {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.str() << ")";
    for (int p = 0; p < n; ++p)
      if (k.c >> p & 1) os << "c" << p + 1;
    if (!is_id(k.w)) {
      os << "[";
      for (int p = 0; p < n; ++p) os << int(k.w[p]) + 1;
      os << "]";
    }
    for (int p = 0; p < n; ++p)
      if (k.x[p]) os << "x" << p + 1 << (k.x[p] > 1 ? "^" + std::to_string(k.x[p]) : "");
  }
  return os.str();
}

std::string AnElement::dump_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (auto& [k, v] : t) {
    std::vector<int> cs, w, x;
    for (int p = 0; p < n; ++p) {
      if (k.c >> p & 1) cs.push_back(p + 1);
      w.push_back(k.w[p] + 1);
      x.push_back(k.x[p]);
    }
    j.push_back({cs, w, x, v.str()});
  }
  return j.dump();
}

std::vector<SKey> hn_basis(int n) {
  std::vector<SKey> out;
  auto ps = all_perms(n);
  for (uint32_t c = 0; c < (1u << n); ++c)
    for (auto& w : ps) out.push_back(SKey{c, w, std::vector<uint8_t>(n, 0)});
  return out;
}

HnElement gamma(int m, const AnElement& a) {
  int n = a.n, n2 = m + n;
  std::vector<HnElement> gx;
  for (int p = 1; p <= n; ++p) {
    HnElement s(n2);
    for (int r = 1; r < m + p; ++r)
      s = s + (HnElement::scalar(n2, GaussRat(1)) + HnElement::c(n2, m + p) * HnElement::c(n2, r)) *
                  HnElement::w(n2, m + p, r);
    gx.push_back(s);
  }
  HnElement out(n2);
  for (auto& [k, v] : a.t) {
    Perm w = perm_id(n2);
    for (int p = 0; p < n; ++p) w[m + p] = m + k.w[p];
    HnElement term = HnElement::basis(n2, k.c << m, w);
    for (int p = 0; p < n && !term.is_zero(); ++p)
      for (int e = 0; e < k.x[p]; ++e) term = term * gx[p];
    out = out + term.scaled(v);
  }
  return out;
}

std::vector<AnElement> y_generators(int n) {
  std::vector<AnElement> ys;
  auto one = AnElement::scalar(n, GaussRat(1));
  for (int p = 1; p <= n; ++p) {
    AnElement y = AnElement::x(n, p);
    for (int q = 1; q < p; ++q) y = y - (one + AnElement::c(n, p) * AnElement::c(n, q)) * AnElement::w(n, p, q);
    ys.push_back(y);
  }
  return ys;
}

// ---------- matrix representation ----------

HnMatrixRep::HnMatrixRep(int N, int n) : N_(N), n_(n), sp_(cspace(N, n)) {
  auto K = constants(N);
  for (int q = 1; q < n; ++q) P_.push_back(embed(K.P, {q, q + 1}, n));
  for (int p = 1; p <= n; ++p) J_.push_back(embed(K.J, {p}, n));
}

SuperOp HnMatrixRep::perm_image(const Perm& w) const {
  if (is_id(w)) return SuperOp::identity(sp_);
  if (auto it = pcache_.find(w); it != pcache_.end()) return it->second;
  int q = left_descent(w);
  Perm sq = perm_id(n_);
  std::swap(sq[q], sq[q + 1]);
  SuperOp r = P_[q] * perm_image(perm_mul(sq, w));
  pcache_.emplace(w, r);
  return r;
}

SuperOp HnMatrixRep::c_image(uint32_t mask) const {
  SuperOp r = SuperOp::identity(sp_);
  for (int p = 0; p < n_; ++p)
    if (mask >> p & 1) r = r * J_[p];
  return r;
}

SuperOp HnMatrixRep::operator()(const HnElement& a) const {
  if (!a.in_hn()) throw std::invalid_argument("matrix rep: element has x factors");
  SuperOp r(sp_);
  for (auto& [k, v] : a.t) r = r + (c_image(k.c) * perm_image(k.w)).scaled(v);
  return r;
}

// ---------- checks ----------

namespace {

using Gens = std::function<AnElement(int)>;

// A_n relations for images X(p), C(p), S(q) = image of w_{q,q+1}
Verdict relations_51(int n, const AnElement& one, const Gens& X, const Gens& C, const Gens& S) {
  auto fail = [](const std::string& what, const AnElement& l, const AnElement& r) {
    return Verdict{false, what + ": " + l.str() + " vs " + r.str()};
  };
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) {
      auto l = X(p) * X(q), r = X(q) * X(p);
      if (!(l == r)) return fail("x" + std::to_string(p) + " x" + std::to_string(q), l, r);
      l = X(p) * C(q);
      r = p == q ? -(C(q) * X(p)) : C(q) * X(p);
      if (!(l == r)) return fail("x" + std::to_string(p) + " c" + std::to_string(q), l, r);
    }
    for (int q = 1; q < n; ++q) {
      auto l = X(p) * S(q);
      AnElement r;
      if (p == q) r = S(q) * X(q + 1) - one - C(q) * C(q + 1);
      else if (p == q + 1) r = S(q) * X(q) + one - C(q) * C(q + 1);  // consequence
      else r = S(q) * X(p);
      if (!(l == r)) return fail("x" + std::to_string(p) + " w" + std::to_string(q) + std::to_string(q + 1), l, r);
    }
  }
  return {true, ""};
}

Verdict hn_relations(int n) {
  auto one = HnElement::scalar(n, GaussRat(1));
  for (int p = 1; p <= n; ++p) {
    if (!(HnElement::c(n, p) * HnElement::c(n, p) == -one)) return {false, "c_p^2 at p=" + std::to_string(p)};
    for (int q = p + 1; q <= n; ++q)
      if (!(HnElement::c(n, p) * HnElement::c(n, q) == -(HnElement::c(n, q) * HnElement::c(n, p))))
        return {false, "anticommutation " + std::to_string(p) + "," + std::to_string(q)};
  }
  for (int q = 1; q < n; ++q) {
    auto s = HnElement::w(n, q, q + 1);
    if (!(s * s == one)) return {false, "s_q^2"};
    if (q + 1 < n) {
      auto s2 = HnElement::w(n, q + 1, q + 2);
      if (!(s * s2 * s == s2 * s * s2)) return {false, "braid"};
    }
    for (int r = q + 2; r < n; ++r) {
      auto s2 = HnElement::w(n, r, r + 1);
      if (!(s * s2 == s2 * s)) return {false, "far commutation"};
    }
  }
  for (auto& w : all_perms(n)) {
    auto W = HnElement::perm(n, w), Wi = HnElement::perm(n, perm_inv(w));
    for (int p = 1; p <= n; ++p)
      if (!(W * HnElement::c(n, p) * Wi == HnElement::c(n, w[p - 1] + 1)))
        return {false, "w c_p w^-1 != c_w(p) at p=" + std::to_string(p)};
  }
  size_t expect = (size_t(1) << n);
  for (int k = 2; k <= n; ++k) expect *= k;
  if (hn_basis(n).size() != expect) return {false, "basis size"};
  return {true, "dim H_" + std::to_string(n) + " = " + std::to_string(expect)};
}

std::vector<uint8_t> random_exps(int n, int xdeg, std::mt19937_64& rng) {
  std::vector<uint8_t> e(n, 0);
  int d = std::uniform_int_distribution<int>(0, xdeg)(rng);
  for (int k = 0; k < d; ++k) ++e[std::uniform_int_distribution<int>(0, n - 1)(rng)];
  return e;
}

AnElement random_element(int n, int xdeg, int terms, std::mt19937_64& rng) {
  auto ps = all_perms(n);
  AnElement a(n);
  for (int k = 0; k < terms; ++k) {
    uint32_t c = std::uniform_int_distribution<uint32_t>(0, (1u << n) - 1)(rng);
    auto& w = ps[std::uniform_int_distribution<size_t>(0, ps.size() - 1)(rng)];
    a.add(SKey{c, w, random_exps(n, xdeg, rng)}, GaussRat(std::uniform_int_distribution<int>(-3, 3)(rng) | 1));
  }
  return a;
}

}  // namespace

CheckResult check_hn_relations(int n) {
  return run_check("sergeev/hn_relations/n=" + std::to_string(n), "H_n: c_p^2=-1, c_pc_q=-c_qc_p, w c_p w^-1 = c_w(p)",
                   [&] { return hn_relations(n); });
}

CheckResult check_an_relations(int n) {
  return run_check("sergeev/an_relations/n=" + std::to_string(n), "A_n defining relations", [&]() -> Verdict {
    auto one = AnElement::scalar(n, GaussRat(1));
    auto v = relations_51(
        n, one, [&](int p) { return AnElement::x(n, p); }, [&](int p) { return AnElement::c(n, p); },
        [&](int q) { return AnElement::w(n, q, q + 1); });
    if (!v.ok) return v;
    return hn_relations(n);
  });
}

CheckResult check_an_associative(int n, int xdeg, int trials, uint64_t seed) {
  return run_check("sergeev/associativity/n=" + std::to_string(n), "normal form product is associative", [&]() -> Verdict {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
      auto a = random_element(n, xdeg, 1 + t % 3, rng), b = random_element(n, xdeg, 1 + t % 2, rng),
           c = random_element(n, xdeg, 1, rng);
      if (!((a * b) * c == a * (b * c)))
        return {false, "trial " + std::to_string(t) + ": a=" + a.str() + " b=" + b.str() + " c=" + c.str()};
    }
    return {true, std::to_string(trials) + " triples"};
  });
}

CheckResult check_y_relations(int n) {
  return run_check("sergeev/y_relations/n=" + std::to_string(n), "y_p relations and bracket", [&]() -> Verdict {
    auto ys = y_generators(n);
    auto one = AnElement::scalar(n, GaussRat(1));
    if (!(ys[0] == AnElement::x(n, 1))) return {false, "y_1 != x_1"};
    for (auto& w : all_perms(n)) {
      auto W = AnElement::perm(n, w), Wi = AnElement::perm(n, perm_inv(w));
      for (int p = 1; p <= n; ++p)
        if (!(W * ys[p - 1] * Wi == ys[w[p - 1]])) return {false, "w y_p w^-1 != y_w(p) at p=" + std::to_string(p)};
    }
    for (int p = 1; p <= n; ++p)
      for (int q = 1; q <= n; ++q) {
        auto l = ys[p - 1] * AnElement::c(n, q), r = AnElement::c(n, q) * ys[p - 1];
        if (!(l == (p == q ? -r : r))) return {false, "y_p c_q at " + std::to_string(p) + "," + std::to_string(q)};
        if (p == q) continue;
        auto Y = ys[p - 1], Z = ys[q - 1];
        auto lhs = AnElement::w(n, p, q) * commutator(Y, Z);
        auto rhs = Y - Z + AnElement::c(n, p) * AnElement::c(n, q) * (Y + Z);
        if (!(lhs == rhs))
          return {false, "bracket relation at " + std::to_string(p) + "," + std::to_string(q) + ": " + lhs.str() +
                             " vs " + rhs.str()};
      }
    return {true, ""};
  });
}

CheckResult check_gamma_relations(int m, int n) {
  return run_check("sergeev/gamma_relations/m=" + std::to_string(m) + ",n=" + std::to_string(n),
                   "gamma_m respects the relations", [&]() -> Verdict {
                     int n2 = m + n;
                     auto one = HnElement::scalar(n2, GaussRat(1));
                     return relations_51(
                         n, one, [&](int p) { return gamma(m, AnElement::x(n, p)); },
                         [&](int p) { return gamma(m, AnElement::c(n, p)); },
                         [&](int q) { return gamma(m, AnElement::w(n, q, q + 1)); });
                   });
}

CheckResult check_gamma_homomorphism(int m, int n, int xdeg, int trials, uint64_t seed) {
  return run_check("sergeev/gamma_homomorphism/m=" + std::to_string(m) + ",n=" + std::to_string(n),
                   "gamma_m respects the relations", [&]() -> Verdict {
                     std::mt19937_64 rng(seed);
                     for (int t = 0; t < trials; ++t) {
                       auto a = random_element(n, xdeg, 2, rng), b = random_element(n, xdeg, 2, rng);
                       if (!(gamma(m, a * b) == gamma(m, a) * gamma(m, b)))
                         return {false, "a=" + a.str() + " b=" + b.str()};
                     }
                     return {true, std::to_string(trials) + " pairs"};
                   });
}

CheckResult check_gamma0_y(int n) {
  return run_check("sergeev/gamma0_y/n=" + std::to_string(n), "gamma_0(y_p) = 0", [&]() -> Verdict {
    auto ys = y_generators(n);
    for (int p = 1; p <= n; ++p) {
      auto g = gamma(0, ys[p - 1]);
      if (!g.is_zero()) return {false, "gamma_0(y_" + std::to_string(p) + ") = " + g.str()};
    }
    return {true, ""};
  });
}

CheckResult check_hn_matrix_rep(int N, int n) {
  return run_check("sergeev/hn_matrix_rep/N=" + std::to_string(N) + ",n=" + std::to_string(n),
                   "w_pq -> P_pq, c_p -> J_p", [&]() -> Verdict {
                     HnMatrixRep rho(N, n);
                     auto id = SuperOp::identity(rho.space());
                     auto c = [&](int p) { return HnElement::c(n, p); };
                     for (int p = 1; p <= n; ++p) {
                       if (rho(c(p)) * rho(c(p)) != -id) return {false, "J_p^2 != -1"};
                       if (rho(c(p)).parity() != 1) return {false, "J_p not odd"};
                       for (int q = 1; q <= n; ++q) {
                         if (p == q) continue;
                         auto W = rho(HnElement::w(n, p, q));
                         if (W * rho(c(p)) * W != rho(c(q))) return {false, "P_pq J_p P_pq != J_q"};
                         if (rho(c(p)) * rho(c(q)) != -(rho(c(q)) * rho(c(p)))) return {false, "J_p J_q"};
                       }
                     }
                     // homomorphism on all pairs of basis elements (n <= 3) or a sample
                     auto B = hn_basis(n);
                     size_t step = B.size() > 48 ? 7 : 1;
                     for (size_t a = 0; a < B.size(); a += step)
                       for (size_t b = 0; b < B.size(); b += step) {
                         HnElement x(n), y(n);
                         x.add(B[a], GaussRat(1));
                         y.add(B[b], GaussRat(1));
                         auto l = rho(x * y), r = rho(x) * rho(y);
                         if (l != r) return {false, "rho(ab) != rho(a)rho(b) for a=" + x.str() + " b=" + y.str()};
                         if ((int)(__builtin_popcount(B[a].c) & 1) != rho(x).parity()) return {false, "parity"};
                       }
                     // supercommutant: the tensor-power image of F_ij
                     auto K = constants(N);
                     for (int i : sindices(N))
                       for (int j : sindices(N)) {
                         SuperOp F(rho.space());
                         for (int p = 1; p <= n; ++p) F = F + embed(K.F(i, j), {p}, n);
                         for (int p = 1; p <= n; ++p)
                           if (!supercommutator(F, rho(c(p))).is_zero()) return {false, "F_ij vs J_p"};
                         for (int q = 1; q < n; ++q)
                           if (!supercommutator(F, rho(HnElement::w(n, q, q + 1))).is_zero())
                             return {false, "F_ij vs P"};
                       }
                     return {true, ""};
                   });
}

CheckResult check_pbw_independence(int n, int degree) {
  return run_check("sergeev/pbw/n=" + std::to_string(n) + ",deg=" + std::to_string(degree), "PBW monomials independent",
                   [&]() -> Verdict {
                     int m = degree, n2 = m + n;
                     std::map<SKey, uint32_t> index;
                     for (auto& k : hn_basis(n2)) index.emplace(k, index.size());
                     // exponent vectors of total degree <= degree
                     std::vector<std::vector<uint8_t>> exps{std::vector<uint8_t>(n, 0)};
                     for (size_t a = 0; a < exps.size(); ++a) {
                       int d = std::accumulate(exps[a].begin(), exps[a].end(), 0);
                       if (d == degree) continue;
                       for (int p = 0; p < n; ++p) {
                         auto e = exps[a];
                         ++e[p];
                         if (std::find(exps.begin(), exps.end(), e) == exps.end()) exps.push_back(e);
                       }
                     }
                     RowEchelon ech(index.size());
                     size_t count = 0;
                     for (auto& Y : hn_basis(n))
                       for (auto& e : exps) {
                         auto g = gamma(m, AnElement::basis(n, Y.c, Y.w, e));
                         RowAccumulator acc(index.size());
                         for (auto& [k, v] : g.t) acc.add(index.at(k), v);
                         ++count;
                         if (!ech.insert(acc.take()))
                           return {false, "dependent image at " + AnElement::basis(n, Y.c, Y.w, e).str()};
                       }
                     return {true, std::to_string(count) + " monomials independent in H_" + std::to_string(n2) +
                                       " (dim " + std::to_string(index.size()) + ")"};
                   });
}

}  // namespace yqn
