#include "yqn/scalar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace yqn {

namespace {

using i128 = __int128;

bool fits64(i128 v) { return v >= (i128)INT64_MIN + 1 && v <= (i128)INT64_MAX; }

uint64_t ugcd(uint64_t a, uint64_t b) { return std::gcd(a, b); }
uint64_t uabs(int64_t a) { return a < 0 ? (uint64_t)(-(a + 1)) + 1 : (uint64_t)a; }

mpq_class from_i128(i128 n, i128 d) {
  auto to_mpz = [](i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
    mpz_class hi((unsigned long)(uint64_t)(u >> 64)), lo((unsigned long)(uint64_t)u);
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  };
  mpq_class q(to_mpz(n), to_mpz(d));
  q.canonicalize();
  return q;
}

}  // namespace

Rat::Rat(long long n, long long d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) {
    if (n == INT64_MIN || d == INT64_MIN) {
      set_big(mpq_class(mpz_class(std::to_string(n)), mpz_class(std::to_string(d))));
      return;
    }
    n = -n;
    d = -d;
  }
  uint64_t g = ugcd(uabs(n), (uint64_t)d);
  if (g > 1) {
    n /= (int64_t)g;
    d /= (int64_t)g;
  }
  n_ = n;
  d_ = d;
}

void Rat::set_big(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  if (c.get_num().fits_slong_p() && c.get_den().fits_slong_p() && c.get_num() != LONG_MIN) {
    delete big_;
    big_ = nullptr;
    n_ = c.get_num().get_si();
    d_ = c.get_den().get_si();
  } else {
    if (!big_) big_ = new mpq_class;
    *big_ = c;
    n_ = 0;
    d_ = 1;
  }
}

mpq_class Rat::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  mpz_set_si(q.get_num_mpz_t(), n_);
  mpz_set_si(q.get_den_mpz_t(), d_);
  return q;
}

std::string Rat::str() const {
  if (big_) return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  return std::to_string(n_) + "/" + std::to_string(d_);
}

Rat Rat::parse(const std::string& s0) {
  std::string s = s0;
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw ParseError("empty rational");
  auto slash = s.find('/');
  std::string ns = s.substr(0, slash), ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto ok = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    size_t i = 0;
    if (allow_sign && (t[0] == '+' || t[0] == '-')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!isdigit((unsigned char)t[i])) return false;
    return true;
  };
  if (!ok(ns, true) || !ok(ds, false)) throw ParseError("bad rational: " + s0);
  if (ns[0] == '+') ns = ns.substr(1);
  mpz_class n(ns), d(ds);
  if (d == 0) throw ParseError("zero denominator: " + s0);
  Rat r;
  r.set_big(mpq_class(n, d));
  return r;
}

Rat Rat::operator-() const {
  if (!big_ && n_ != INT64_MIN) {
    Rat r;
    r.n_ = -n_;
    r.d_ = d_;
    return r;
  }
  return Rat(mpq_class(-to_mpq()));
}

Rat Rat::inv() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (!big_ && n_ != INT64_MIN) {
    Rat r;
    r.n_ = n_ < 0 ? -d_ : d_;
    r.d_ = n_ < 0 ? -n_ : n_;
    return r;
  }
  mpq_class q = to_mpq();
  return Rat(mpq_class(1 / q));
}

Rat operator+(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    if (a.n_ == 0) return b;
    if (b.n_ == 0) return a;
    uint64_t g = ugcd((uint64_t)a.d_, (uint64_t)b.d_);
    int64_t b1 = a.d_ / (int64_t)g, d1 = b.d_ / (int64_t)g;
    i128 num = (i128)a.n_ * d1 + (i128)b.n_ * b1;
    i128 den = (i128)b1 * b.d_;
    if (num == 0) return Rat();
    if (g > 1) {
      i128 t = num % (i128)g;
      if (t < 0) t = -t;
      uint64_t g2 = ugcd((uint64_t)t, g);
      if (g2 > 1) {
        num /= (i128)g2;
        den /= (i128)g2;
      }
    }
    if (fits64(num) && fits64(den)) {
      Rat r;
      r.n_ = (int64_t)num;
      r.d_ = (int64_t)den;
      return r;
    }
    return Rat(from_i128(num, den));
  }
  return Rat(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat operator*(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    if (a.n_ == 0 || b.n_ == 0) return Rat();
    uint64_t g1 = ugcd(uabs(a.n_), (uint64_t)b.d_), g2 = ugcd(uabs(b.n_), (uint64_t)a.d_);
    i128 num = (i128)(a.n_ / (int64_t)g1) * (b.n_ / (int64_t)g2);
    i128 den = (i128)(a.d_ / (int64_t)g2) * (b.d_ / (int64_t)g1);
    if (fits64(num) && fits64(den)) {
      Rat r;
      r.n_ = (int64_t)num;
      r.d_ = (int64_t)den;
      return r;
    }
    return Rat(from_i128(num, den));
  }
  return Rat(mpq_class(a.to_mpq() * b.to_mpq()));
}

bool operator==(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: big only when it does not fit
}

bool operator<(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) return (i128)a.n_ * b.d_ < (i128)b.n_ * a.d_;
  return a.to_mpq() < b.to_mpq();
}

// ---------- GaussRat ----------

std::string GaussRat::str() const {
  std::string s = re.str();
  if (!im.is_zero()) {
    std::string t = im.str();
    if (t[0] != '-') t = "+" + t;
    s += t + "*i";
  }
  return s;
}

GaussRat GaussRat::parse(const std::string& s0) {
  std::string s = s0;
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (s.empty()) throw ParseError("empty scalar");
  if (s.back() != 'i') return GaussRat(Rat::parse(s));
  std::string body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  // split at the last sign that is not leading
  size_t cut = std::string::npos;
  for (size_t k = body.size(); k-- > 1;)
    if (body[k] == '+' || body[k] == '-') {
      cut = k;
      break;
    }
  std::string rs = cut == std::string::npos ? "0" : body.substr(0, cut);
  std::string is = cut == std::string::npos ? body : body.substr(cut);
  if (is.empty() || is == "+") is = "1";
  if (is == "-") is = "-1";
  return GaussRat(Rat::parse(rs), Rat::parse(is));
}

GaussRat GaussRat::inv() const {
  if (im.is_zero()) return GaussRat(re.inv());
  Rat n = re * re + im * im;
  Rat ni = n.inv();
  return GaussRat(re * ni, -(im * ni));
}

GaussRat GaussRat::pow(int e) const {
  if (e < 0) return inv().pow(-e);
  GaussRat r(1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// ---------- Poly ----------

bool GrlexLess::operator()(const Exps& a, const Exps& b) const {
  int da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da < db;
  return a < b;
}

Poly Poly::constant(std::vector<std::string> v, const GaussRat& c) {
  Poly p(std::move(v));
  p.add_term(Exps(p.vars.size(), 0), c);
  return p;
}

Poly Poly::var(std::vector<std::string> v, const std::string& name) {
  Poly p(std::move(v));
  auto it = std::find(p.vars.begin(), p.vars.end(), name);
  if (it == p.vars.end()) throw std::invalid_argument("unknown variable " + name);
  Exps e(p.vars.size(), 0);
  e[it - p.vars.begin()] = 1;
  p.add_term(e, GaussRat(1));
  return p;
}

void Poly::add_term(const Exps& e, const GaussRat& c) {
  if (c.is_zero()) return;
  auto it = terms.find(e);
  if (it == terms.end()) {
    terms.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

int Poly::degree_in(size_t k) const {
  int d = 0;
  for (auto& [e, c] : terms) d = std::max(d, e[k]);
  return d;
}

GaussRat Poly::eval(const std::vector<GaussRat>& pt) const {
  if (pt.size() != vars.size()) throw std::invalid_argument("Poly::eval arity");
  GaussRat s;
  for (auto& [e, c] : terms) {
    GaussRat t = c;
    for (size_t k = 0; k < e.size(); ++k)
      if (e[k]) t = t * pt[k].pow(e[k]);
    s += t;
  }
  return s;
}

Poly Poly::operator-() const {
  Poly r(vars);
  for (auto& [e, c] : terms) r.terms.emplace(e, -c);
  return r;
}

static void same_vars(const Poly& a, const Poly& b) {
  if (a.vars != b.vars) throw std::invalid_argument("polynomials over different variables");
}

Poly operator+(const Poly& a, const Poly& b) {
  same_vars(a, b);
  Poly r = a;
  for (auto& [e, c] : b.terms) r.add_term(e, c);
  return r;
}
Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
Poly operator*(const Poly& a, const Poly& b) {
  same_vars(a, b);
  Poly r(a.vars);
  for (auto& [ea, ca] : a.terms)
    for (auto& [eb, cb] : b.terms) {
      Exps e(ea.size());
      for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      r.add_term(e, ca * cb);
    }
  return r;
}
Poly Poly::scaled(const GaussRat& c) const {
  Poly r(vars);
  if (c.is_zero()) return r;
  for (auto& [e, x] : terms) r.terms.emplace(e, x * c);
  return r;
}

std::string Poly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.str() << ")";
    for (size_t k = 0; k < vars.size(); ++k)
      if (it->first[k]) os << "*" << vars[k] << (it->first[k] > 1 ? "^" + std::to_string(it->first[k]) : "");
  }
  return os.str();
}

// ---------- RatFun ----------

RatFun::RatFun(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
  same_vars(num, den);
  if (den.is_zero()) throw std::domain_error("RatFun: zero denominator");
  normalize();
}

RatFun RatFun::constant(std::vector<std::string> v, const GaussRat& c) {
  return RatFun(Poly::constant(v, c), Poly::constant(v, GaussRat(1)));
}
RatFun RatFun::var(std::vector<std::string> v, const std::string& name) {
  return RatFun(Poly::var(v, name), Poly::constant(v, GaussRat(1)));
}

// scale num and den by a common rational so that all coefficient parts are coprime integers
void RatFun::normalize() {
  if (num.is_zero()) {
    den = Poly::constant(den.vars, GaussRat(1));
    return;
  }
  mpz_class l = 1, g = 0;
  auto visit = [&](const Poly& p) {
    for (auto& [e, c] : p.terms)
      for (const Rat* r : {&c.re, &c.im}) {
        mpq_class q = r->to_mpq();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
      }
  };
  visit(num);
  visit(den);
  auto visit2 = [&](const Poly& p) {
    for (auto& [e, c] : p.terms)
      for (const Rat* r : {&c.re, &c.im}) {
        mpq_class q = r->to_mpq() * l;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
      }
  };
  visit2(num);
  visit2(den);
  mpq_class f(l, g);
  f.canonicalize();
  // sign: leading den coefficient real part positive when possible
  const GaussRat& lead = den.terms.rbegin()->second;
  if (lead.re.sign() < 0 || (lead.re.is_zero() && lead.im.sign() < 0)) f = -f;
  GaussRat fs{Rat(f)};
  if (fs != GaussRat(1)) {
    num = num.scaled(fs);
    den = den.scaled(fs);
  }
}

GaussRat RatFun::eval(const std::vector<GaussRat>& pt) const {
  GaussRat d = den.eval(pt);
  if (d.is_zero()) throw Singular("RatFun: denominator vanishes");
  return num.eval(pt) / d;
}

std::string RatFun::str() const { return "(" + num.str() + ")/(" + den.str() + ")"; }

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.den == b.den) return RatFun(a.num + b.num, a.den);
  return RatFun(a.num * b.den + b.num * a.den, a.den * b.den);
}
RatFun operator*(const RatFun& a, const RatFun& b) { return RatFun(a.num * b.num, a.den * b.den); }
RatFun RatFun::inv() const {
  if (num.is_zero()) throw std::domain_error("RatFun: inverse of zero");
  return RatFun(den, num);
}
RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inv(); }

// ---------- grids ----------

const std::vector<long long>& primes_upto_count(size_t count) {
  static std::vector<long long> ps;
  if (ps.size() < count) {
    ps.clear();
    long long lim = 64;
    while (true) {
      std::vector<char> sieve(lim + 1, 1);
      ps.clear();
      for (long long i = 2; i <= lim; ++i)
        if (sieve[i]) {
          ps.push_back(i);
          for (long long j = i * i; j <= lim; j += i) sieve[j] = 0;
        }
      if (ps.size() >= count) break;
      lim *= 2;
    }
  }
  return ps;
}

std::vector<std::vector<GaussRat>> prime_grid(const std::vector<int>& bounds, int attempt) {
  size_t total = 0, nv = bounds.size();
  for (int b : bounds) total += (size_t)b + 1;
  const auto& ps = primes_upto_count(((size_t)attempt + 1) * total + total);
  std::vector<std::vector<GaussRat>> g(nv);
  size_t at = (size_t)attempt * total;
  for (size_t k = 0; k < nv; ++k)
    for (int i = 0; i <= bounds[k]; ++i) g[k].push_back(GaussRat(ps[at++]));
  return g;
}

std::vector<std::vector<GaussRat>> prime_grid(int nvars, int bound, int attempt) {
  return prime_grid(std::vector<int>(nvars, bound), attempt);
}

CertResult certify_on_grid(const std::vector<int>& bounds,
                           const std::function<std::string(const std::vector<GaussRat>&)>& check_at,
                           int max_attempts) {
  int nvars = (int)bounds.size();
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    auto grid = prime_grid(bounds, attempt);
    CertResult res;
    std::vector<size_t> idx(nvars, 0);
    std::vector<GaussRat> pt(nvars);
    try {
      while (true) {
        for (int k = 0; k < nvars; ++k) pt[k] = grid[k][idx[k]];
        std::string w = check_at(pt);
        ++res.points;
        if (!w.empty()) {
          std::string p;
          for (int k = 0; k < nvars; ++k) p += (k ? "," : "") + pt[k].str();
          res.ok = false;
          res.witness = "at (" + p + "): " + w;
          return res;
        }
        int k = nvars - 1;
        while (k >= 0 && ++idx[k] == grid[k].size()) idx[k--] = 0;
        if (k < 0) break;
      }
      res.ok = true;
      return res;
    } catch (const Singular&) {
      continue;
    }
  }
  throw std::runtime_error("grid exhausted: denominators vanish on every shifted grid");
}

CertResult certify_on_grid(int nvars, int bound,
                           const std::function<std::string(const std::vector<GaussRat>&)>& check_at,
                           int max_attempts) {
  return certify_on_grid(std::vector<int>(nvars, bound), check_at, max_attempts);
}

bool identity_certify(const RatFun& f, const RatFun& g, int degree_bound) {
  if (f.vars() != g.vars()) throw std::invalid_argument("identity_certify: variable sets differ");
  Poly diff = f.num * g.den - g.num * f.den;
  int nv = (int)f.vars().size();
  if (nv == 0) return diff.is_zero();
  auto r = certify_on_grid(nv, degree_bound, [&](const std::vector<GaussRat>& pt) {
    return diff.eval(pt).is_zero() ? std::string() : std::string("difference nonzero");
  });
  return r.ok;
}

}  // namespace yqn
