#include "yqn/modcert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace yqn {
namespace {

using u64 = uint64_t;

u64 powmod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

bool is_prime32(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2, 3, 5, 7, 11, 13})
    if (n % q == 0) return n == q;
  u64 d = n - 1;
  int s = 0;
  while (!(d & 1)) d >>= 1, ++s;
  for (u64 a : {2, 7, 61}) {
    if (a % n == 0) continue;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s && comp; ++i) {
      x = x * x % n;
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

struct Prime {
  u64 p, r;  // r^2 = -1 mod p
};

// primes = 1 mod 4 just below 2^31, generated once
const Prime& prime_at(size_t k) {
  static std::vector<Prime> ps;
  static u64 next = (1ull << 31) - 1;
  while (ps.size() <= k) {
    while (!(next % 4 == 1 && is_prime32(next))) --next;
    u64 p = next--;
    u64 g = 2;
    while (powmod(g, (p - 1) / 2, p) != p - 1) ++g;
    ps.push_back({p, powmod(g, (p - 1) / 4, p)});
  }
  return ps[k];
}

struct NotInvertible {};

class Reducer {
 public:
  Reducer(u64 p, u64 r) : p_(p), r_(r) {}
  u64 operator()(const GaussRat& v) {
    u64 a = red(v.re);
    if (v.im.is_zero()) return a;
    return (a + red(v.im) * r_) % p_;
  }

 private:
  u64 red(const Rat& x) {
    if (x.is_zero()) return 0;
    if (x.is_small()) {
      int64_t n = x.num64(), d = x.den64();
      u64 nm = (u64)(n % (int64_t)p_ + (int64_t)p_) % p_;
      if (d == 1) return nm;
      auto it = inv_.find(d);
      u64 di;
      if (it != inv_.end()) {
        di = it->second;
      } else {
        u64 dm = (u64)d % p_;
        if (!dm) throw NotInvertible{};
        di = powmod(dm, p_ - 2, p_);
        inv_.emplace(d, di);
      }
      return nm * di % p_;
    }
    mpq_class q = x.to_mpq();
    u64 dm = mpz_fdiv_ui(q.get_den_mpz_t(), p_);
    if (!dm) throw NotInvertible{};
    return mpz_fdiv_ui(q.get_num_mpz_t(), p_) * powmod(dm, p_ - 2, p_) % p_;
  }
  u64 p_, r_;
  std::unordered_map<int64_t, u64> inv_;
};

struct MEntry {
  uint32_t col;
  uint32_t v;
};
struct ModMat {
  uint32_t nr = 0, nc = 0;
  std::vector<std::vector<MEntry>> rows;
};

ModMat reduce(const SpMat& m, Reducer& R) {
  ModMat out{m.nr, m.nc, std::vector<std::vector<MEntry>>(m.nr)};
  for (uint32_t i = 0; i < m.nr; ++i) {
    auto& o = out.rows[i];
    o.reserve(m.rows[i].size());
    for (auto& e : m.rows[i]) {
      u64 v = R(e.v);
      if (v) o.push_back({e.col, (uint32_t)v});
    }
  }
  return out;
}

ModMat mul(const ModMat& a, const ModMat& b, u64 p) {
  if (a.nc != b.nr) throw std::invalid_argument("matrix product shape mismatch");
  ModMat m{a.nr, b.nc, std::vector<std::vector<MEntry>>(a.nr)};
  std::vector<u64> acc(b.nc, 0);
  std::vector<char> used(b.nc, 0);
  std::vector<uint32_t> touched;
  for (uint32_t i = 0; i < a.nr; ++i) {
    for (auto& e : a.rows[i])
      for (auto& f : b.rows[e.col]) {
        u64& s = acc[f.col];
        if (!used[f.col]) used[f.col] = 1, touched.push_back(f.col);
        s += (u64)e.v * f.v;
        if (s >= (1ull << 63)) s %= p;
      }
    std::sort(touched.begin(), touched.end());
    auto& row = m.rows[i];
    for (uint32_t c : touched) {
      u64 v = acc[c] % p;
      if (v) row.push_back({c, (uint32_t)v});
      acc[c] = 0;
      used[c] = 0;
    }
    touched.clear();
  }
  return m;
}

// log2 of the lcm of all denominators, and log2 of max row abs sum
struct Height {
  double log_den = 0, log_norm = 0;
  bool complex = false;
};

Height height(const SpMat& m) {
  Height h;
  mpz_class L = 1;
  int64_t Ls = 1;  // small running lcm before spilling
  double best = 0;
  auto take_den = [&](const Rat& x) {
    if (x.is_small()) {
      int64_t d = x.den64();
      if (d == 1) return;
      int64_t g = std::gcd(Ls, d);
      __int128 t = (__int128)(Ls / g) * d;
      if (t < ((__int128)1 << 62)) {
        Ls = (int64_t)t;
        return;
      }
      mpz_class dz;
      mpz_set_si(dz.get_mpz_t(), d);
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), dz.get_mpz_t());
    } else {
      mpq_class q = x.to_mpq();
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den_mpz_t());
    }
  };
  auto mag = [](const Rat& x) {
    if (x.is_small()) return std::fabs((double)x.num64() / (double)x.den64());
    return std::fabs(x.to_mpq().get_d());
  };
  for (auto& row : m.rows) {
    double s = 0;
    for (auto& e : row) {
      take_den(e.v.re);
      s += mag(e.v.re);
      if (!e.v.im.is_zero()) {
        h.complex = true;
        take_den(e.v.im);
        s += mag(e.v.im);
      }
    }
    best = std::max(best, s);
  }
  mpz_class lz;
  mpz_set_si(lz.get_mpz_t(), Ls);
  mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), lz.get_mpz_t());
  long ex;
  double mant = mpz_get_d_2exp(&ex, L.get_mpz_t());
  h.log_den = std::log2(mant) + (double)ex;
  h.log_norm = best > 0 ? std::log2(best) : -1e9;
  return h;
}

}  // namespace

ProductCompare products_equal(const std::vector<const SpMat*>& lhs, const std::vector<const SpMat*>& rhs) {
  if (lhs.empty() || rhs.empty()) throw std::invalid_argument("empty product");
  double ld[2] = {0, 0}, lh[2] = {0, 0};
  bool complex = false;
  const std::vector<const SpMat*>* sides[2] = {&lhs, &rhs};
  for (int s = 0; s < 2; ++s)
    for (auto* m : *sides[s]) {
      auto h = height(*m);
      ld[s] += h.log_den;
      lh[s] += h.log_den + h.log_norm;
      complex |= h.complex;
    }
  // integer matrix L_l L_r (lhs - rhs) has entries (real and imaginary parts) below 2^bits;
  // the slack covers double rounding in the estimates
  double bits = std::max(ld[1] + lh[0], ld[0] + lh[1]) + 1 + 4 + (double)(lhs.size() + rhs.size());
  ProductCompare out;
  double have = 0;
  for (size_t k = 0; have <= bits; ++k) {
    const Prime& P = prime_at(k);
    // a Gaussian integer a+bi vanishes mod p under both i -> r and i -> -r only if p | a and p | b
    int images = complex ? 2 : 1;
    bool ok = true;
    for (int im = 0; im < images && ok; ++im) {
      Reducer R(P.p, im ? P.p - P.r : P.r);
      ModMat a, b;
      try {
        a = reduce(*lhs[0], R);
        for (size_t i = 1; i < lhs.size(); ++i) a = mul(a, reduce(*lhs[i], R), P.p);
        b = reduce(*rhs[0], R);
        for (size_t i = 1; i < rhs.size(); ++i) b = mul(b, reduce(*rhs[i], R), P.p);
      } catch (NotInvertible&) {
        ok = false;
        break;
      }
      if (a.nr != b.nr || a.nc != b.nc) throw std::invalid_argument("product shapes differ");
      for (uint32_t i = 0; i < a.nr; ++i) {
        auto &x = a.rows[i], &y = b.rows[i];
        size_t n = std::min(x.size(), y.size()), j = 0;
        while (j < n && x[j].col == y[j].col && x[j].v == y[j].v) ++j;
        if (j < x.size() || j < y.size()) {
          uint32_t c;
          if (j == x.size()) c = y[j].col;
          else if (j == y.size()) c = x[j].col;
          else c = std::min(x[j].col, y[j].col);
          out.equal = false;
          out.row = i;
          out.col = c;
          out.primes = (int)k + 1;
          return out;
        }
      }
    }
    if (!ok) continue;  // prime divides a denominator; skip it
    have += std::log2((double)P.p);
    out.primes++;
  }
  return out;
}

GaussRat product_entry(const std::vector<const SpMat*>& f, uint32_t r, uint32_t c) {
  SpRow v{{r, GaussRat(1)}};
  for (auto* m : f) {
    RowAccumulator acc(m->nc);
    for (auto& e : v)
      for (auto& g : m->rows[e.col]) acc.add(g.col, e.v * g.v);
    v = acc.take();
  }
  for (auto& e : v)
    if (e.col == c) return e.v;
  return GaussRat(0);
}

}  // namespace yqn
