#pragma once
// exact scalars: rationals with a small-int fast path, Gaussian rationals,
// multivariate polynomials / rational functions, truncated series

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace yqn {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Singular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// rational; int64 num/den when it fits, mpq otherwise
class Rat {
 public:
  Rat() = default;
  Rat(long long n) : n_(n) {}
  Rat(long long n, long long d);
  explicit Rat(const mpq_class& q) { set_big(q); }
  Rat(const Rat& o) : n_(o.n_), d_(o.d_), big_(o.big_ ? new mpq_class(*o.big_) : nullptr) {}
  Rat(Rat&& o) noexcept : n_(o.n_), d_(o.d_), big_(o.big_) { o.big_ = nullptr; }
  Rat& operator=(const Rat& o) {
    if (this != &o) {
      Rat t(o);
      swap(t);
    }
    return *this;
  }
  Rat& operator=(Rat&& o) noexcept {
    swap(o);
    return *this;
  }
  ~Rat() { delete big_; }
  void swap(Rat& o) noexcept {
    std::swap(n_, o.n_);
    std::swap(d_, o.d_);
    std::swap(big_, o.big_);
  }

  bool is_zero() const { return big_ ? sgn(*big_) == 0 : n_ == 0; }
  int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }
  bool is_small() const { return big_ == nullptr; }
  // valid only when is_small()
  int64_t num64() const { return n_; }
  int64_t den64() const { return d_; }
  mpq_class to_mpq() const;
  std::string str() const;  // "p/q"
  static Rat parse(const std::string& s);

  Rat operator-() const;
  Rat inv() const;
  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b) { return a * b.inv(); }
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }
  friend bool operator==(const Rat& a, const Rat& b);
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b);

 private:
  void set_big(const mpq_class& q);
  int64_t n_ = 0, d_ = 1;
  mpq_class* big_ = nullptr;
};

class GaussRat {
 public:
  Rat re, im;
  GaussRat() = default;
  GaussRat(long long v) : re(v) {}
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  static GaussRat I() { return GaussRat(Rat(0), Rat(1)); }
  static GaussRat frac(long long p, long long q) { return GaussRat(Rat(p, q)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }
  std::string str() const;  // "a/b" or "a/b+c/d*i"
  static GaussRat parse(const std::string& s);

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat conj() const { return GaussRat(re, -im); }
  GaussRat inv() const;
  GaussRat pow(int e) const;
  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    if (a.im.is_zero() && b.im.is_zero()) return GaussRat(a.re + b.re);
    return GaussRat(a.re + b.re, a.im + b.im);
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    if (a.im.is_zero() && b.im.is_zero()) return GaussRat(a.re - b.re);
    return GaussRat(a.re - b.re, a.im - b.im);
  }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    if (a.im.is_zero() && b.im.is_zero()) return GaussRat(a.re * b.re);
    return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * b.inv(); }
  GaussRat& operator+=(const GaussRat& b) {
    re += b.re;
    if (!b.im.is_zero()) im += b.im;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& b) {
    re -= b.re;
    if (!b.im.is_zero()) im -= b.im;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

// ---------- polynomials ----------

using Exps = std::vector<int>;
struct GrlexLess {
  bool operator()(const Exps& a, const Exps& b) const;
};

class Poly {
 public:
  std::vector<std::string> vars;
  std::map<Exps, GaussRat, GrlexLess> terms;

  Poly() = default;
  explicit Poly(std::vector<std::string> v) : vars(std::move(v)) {}
  static Poly constant(std::vector<std::string> v, const GaussRat& c);
  static Poly var(std::vector<std::string> v, const std::string& name);

  bool is_zero() const { return terms.empty(); }
  int degree_in(size_t k) const;
  GaussRat eval(const std::vector<GaussRat>& pt) const;
  GaussRat content_scale() const;  // used by RatFun normalization
  std::string str() const;

  void add_term(const Exps& e, const GaussRat& c);
  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const GaussRat& c) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.vars == b.vars && a.terms == b.terms; }
};

class RatFun {
 public:
  Poly num, den;
  RatFun() = default;
  RatFun(Poly n, Poly d);
  static RatFun constant(std::vector<std::string> v, const GaussRat& c);
  static RatFun var(std::vector<std::string> v, const std::string& name);
  const std::vector<std::string>& vars() const { return num.vars; }
  bool is_zero() const { return num.is_zero(); }
  GaussRat eval(const std::vector<GaussRat>& pt) const;  // throws Singular
  std::string str() const;

  RatFun operator-() const { return RatFun(-num, den); }
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun inv() const;

 private:
  void normalize();
};

// ---------- grids and certification ----------

const std::vector<long long>& primes_upto_count(size_t count);

// per-variable value sets: variable k gets bound+1 consecutive primes from its own block,
// block index shifted by `attempt`
std::vector<std::vector<GaussRat>> prime_grid(int nvars, int bound, int attempt);
std::vector<std::vector<GaussRat>> prime_grid(const std::vector<int>& bounds, int attempt);

struct CertResult {
  bool ok = false;
  size_t points = 0;
  std::string witness;  // first mismatch
};

// full tensor grid certification; check_at returns "" on agreement or a mismatch description.
// A Singular thrown at any point moves the whole grid to later primes.
CertResult certify_on_grid(int nvars, int bound,
                           const std::function<std::string(const std::vector<GaussRat>&)>& check_at,
                           int max_attempts = 6);
// per-variable degree bounds
CertResult certify_on_grid(const std::vector<int>& bounds,
                           const std::function<std::string(const std::vector<GaussRat>&)>& check_at,
                           int max_attempts = 6);

// decides f == g as rational functions (num_f den_g - num_g den_f on a grid)
bool identity_certify(const RatFun& f, const RatFun& g, int degree_bound);

// ---------- truncated series ----------

enum class SeriesDir { Pos, Neg };  // powers of x or of x^{-1}

template <class T>
struct TruncSeries {
  std::string var = "u";
  SeriesDir dir = SeriesDir::Neg;
  std::vector<T> c;  // c[k] multiplies x^{+-k}; size = order L
  int order() const { return (int)c.size(); }
};

inline GaussRat series_coeff_inverse(const GaussRat& x) {
  if (x.is_zero()) throw std::domain_error("series_invert: constant term not invertible");
  return x.inv();
}

template <class T>
TruncSeries<T> series_mul(const TruncSeries<T>& a, const TruncSeries<T>& b) {
  if (a.dir != b.dir || a.var != b.var) throw std::invalid_argument("series_mul: incompatible series");
  TruncSeries<T> r{a.var, a.dir, {}};
  int L = std::min(a.order(), b.order());
  for (int k = 0; k < L; ++k) {
    T acc = a.c[0] * b.c[k];
    for (int i = 1; i <= k; ++i) acc = acc + a.c[i] * b.c[k - i];
    r.c.push_back(std::move(acc));
  }
  return r;
}

// right inverse t with s*t = 1 to the truncation order
template <class T>
TruncSeries<T> series_invert(const TruncSeries<T>& s) {
  if (s.c.empty()) throw std::invalid_argument("series_invert: empty series");
  T inv0 = series_coeff_inverse(s.c[0]);
  TruncSeries<T> t{s.var, s.dir, {}};
  t.c.push_back(inv0);
  for (int k = 1; k < s.order(); ++k) {
    T acc = s.c[1] * t.c[k - 1];
    for (int i = 2; i <= k; ++i) acc = acc + s.c[i] * t.c[k - i];
    t.c.push_back(-(inv0 * acc));
  }
  return t;
}

}  // namespace yqn
