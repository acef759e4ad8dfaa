#include "yqn/super_linear.hpp"

#include <algorithm>
#include "json.hpp"
#include <sstream>
#include <tuple>

namespace yqn {

SpacePtr make_space(std::vector<std::vector<uint8_t>> par, std::vector<int> slotN) {
  if (par.size() != slotN.size()) throw std::invalid_argument("make_space: size mismatch");
  if (par.size() > 31) throw std::invalid_argument("make_space: too many slots");
  auto s = std::make_shared<Space>();
  s->par = std::move(par);
  s->slotN = std::move(slotN);
  size_t n = s->par.size();
  s->dim.resize(n);
  s->stride.resize(n);
  uint64_t tot = 1;
  for (size_t k = n; k-- > 0;) {
    s->dim[k] = (uint32_t)s->par[k].size();
    if (s->dim[k] == 0) throw std::invalid_argument("make_space: empty slot");
    s->stride[k] = (uint32_t)tot;
    tot *= s->dim[k];
    if (tot > (1u << 26)) throw std::invalid_argument("make_space: space too large");
  }
  s->total = (uint32_t)tot;
  s->pmask.resize(s->total);
  for (uint32_t idx = 0; idx < s->total; ++idx) {
    uint32_t m = 0;
    for (size_t k = 0; k < n; ++k)
      if (s->par[k][s->digit(idx, k)]) m |= 1u << k;
    s->pmask[idx] = m;
  }
  return s;
}

std::vector<uint8_t> Space::parities() const {
  std::vector<uint8_t> p(total);
  for (uint32_t i = 0; i < total; ++i) p[i] = __builtin_popcount(pmask[i]) & 1;
  return p;
}

static std::vector<uint8_t> cslot(int N) {
  std::vector<uint8_t> p(2 * N, 0);
  for (int a = N; a < 2 * N; ++a) p[a] = 1;
  return p;
}

SpacePtr cspace(int N, int n) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  return make_space(std::vector<std::vector<uint8_t>>(n, cslot(N)), std::vector<int>(n, N));
}

SpacePtr carrier_space(std::vector<uint8_t> par) { return make_space({std::move(par)}, {0}); }

SpacePtr concat(const SpacePtr& a, const SpacePtr& b) {
  auto par = a->par;
  auto sn = a->slotN;
  par.insert(par.end(), b->par.begin(), b->par.end());
  sn.insert(sn.end(), b->slotN.begin(), b->slotN.end());
  return make_space(par, sn);
}

SpacePtr subspace_slots(const SpacePtr& s, const std::vector<int>& slots0) {
  std::vector<std::vector<uint8_t>> par;
  std::vector<int> sn;
  for (int k : slots0) {
    par.push_back(s->par.at(k));
    sn.push_back(s->slotN.at(k));
  }
  return make_space(par, sn);
}

int sidx_local(int N, int i) {
  if (i == 0 || i > N || i < -N) throw std::out_of_range("index out of range: " + std::to_string(i));
  return i > 0 ? i - 1 : N - i - 1;
}
int sidx_from_local(int N, int a) { return a < N ? a + 1 : -(a - N + 1); }

std::vector<int> sindices(int N) {
  std::vector<int> v;
  for (int i = 1; i <= N; ++i) v.push_back(i);
  for (int i = 1; i <= N; ++i) v.push_back(-i);
  return v;
}

// ---------- SuperOp ----------

SuperOp SuperOp::identity(SpacePtr s) {
  SuperOp o(s);
  o.m = SpMat::identity(s->total);
  o.declared_parity = 0;
  return o;
}

int SuperOp::parity() const {
  int p = -1;
  for (uint32_t r = 0; r < m.nr; ++r)
    for (auto& e : m.rows[r]) {
      int q = entry_parity(r, e.col);
      if (p < 0)
        p = q;
      else if (p != q)
        return 2;
    }
  return p;
}

SuperOp SuperOp::even_part() const {
  SuperOp o(sp);
  for (uint32_t r = 0; r < m.nr; ++r)
    for (auto& e : m.rows[r])
      if (!entry_parity(r, e.col)) o.m.rows[r].push_back(e);
  o.declared_parity = 0;
  return o;
}

SuperOp SuperOp::odd_part() const {
  SuperOp o(sp);
  for (uint32_t r = 0; r < m.nr; ++r)
    for (auto& e : m.rows[r])
      if (entry_parity(r, e.col)) o.m.rows[r].push_back(e);
  o.declared_parity = 1;
  return o;
}

static void same_space(const SuperOp& a, const SuperOp& b) {
  if (!a.sp || !b.sp || !a.sp->same_as(*b.sp)) throw std::invalid_argument("SuperOp: arity/dimension mismatch");
}

static std::optional<int> join_parity(const SuperOp& a, const SuperOp& b) {
  if (a.declared_parity && b.declared_parity && *a.declared_parity == *b.declared_parity) return a.declared_parity;
  return std::nullopt;
}

SuperOp SuperOp::operator-() const { return scaled(GaussRat(-1)); }

SuperOp SuperOp::scaled(const GaussRat& s) const {
  SuperOp o(sp);
  o.m = m.scaled(s);
  o.declared_parity = declared_parity;
  return o;
}

SuperOp operator+(const SuperOp& a, const SuperOp& b) {
  same_space(a, b);
  SuperOp o(a.sp);
  o.m = a.m + b.m;
  o.declared_parity = join_parity(a, b);
  return o;
}

SuperOp operator-(const SuperOp& a, const SuperOp& b) {
  same_space(a, b);
  SuperOp o(a.sp);
  o.m = a.m - b.m;
  o.declared_parity = join_parity(a, b);
  return o;
}

SuperOp koszul_mul(const SuperOp& a, const SuperOp& b) {
  same_space(a, b);
  const auto& pm = a.sp->pmask;
  SuperOp o(a.sp);
  RowAccumulator acc(a.dim());
  for (uint32_t r = 0; r < a.dim(); ++r) {
    for (auto& e : a.m.rows[r]) {
      uint32_t dA = pm[r] ^ pm[e.col];
      for (auto& f : b.m.rows[e.col]) {
        uint32_t dB = pm[e.col] ^ pm[f.col];
        if (pair_parity(dA, dB))
          acc.sub(f.col, e.v * f.v);
        else
          acc.add(f.col, e.v * f.v);
      }
    }
    o.m.rows[r] = acc.take();
  }
  if (a.declared_parity && b.declared_parity) o.declared_parity = (*a.declared_parity + *b.declared_parity) & 1;
  return o;
}

SuperOp operator*(const SuperOp& a, const SuperOp& b) { return koszul_mul(a, b); }

SuperOp supercommutator(const SuperOp& a, const SuperOp& b) {
  int pa = a.parity(), pb = b.parity();
  if (pa == 2 || pb == 2) return supercommutator(a.even_part(), b) + supercommutator(a.odd_part(), b);
  if (pa < 0 || pb < 0) return SuperOp::zero(a.sp);
  SuperOp ab = a * b, ba = b * a;
  return (pa & pb) ? ab + ba : ab - ba;
}

bool operator==(const SuperOp& a, const SuperOp& b) { return a.sp->same_as(*b.sp) && a.m == b.m; }

SuperOp koszul_tensor(const SuperOp& a, const SuperOp& b) {
  SuperOp o(concat(a.sp, b.sp));
  uint32_t db = b.dim();
  for (uint32_t r = 0; r < a.dim(); ++r)
    for (uint32_t r2 = 0; r2 < db; ++r2) {
      auto& row = o.m.rows[r * db + r2];
      for (auto& e : a.m.rows[r])
        for (auto& f : b.m.rows[r2]) row.push_back({e.col * db + f.col, e.v * f.v});
    }
  if (a.declared_parity && b.declared_parity) o.declared_parity = (*a.declared_parity + *b.declared_parity) & 1;
  return o;
}

namespace {
struct Trip {
  uint32_t r, c;
  GaussRat v;
};
SpMat from_triplets(uint32_t n, std::vector<Trip>& t) {
  std::sort(t.begin(), t.end(), [](const Trip& a, const Trip& b) { return a.r != b.r ? a.r < b.r : a.c < b.c; });
  SpMat m(n, n);
  for (size_t i = 0; i < t.size();) {
    size_t j = i;
    GaussRat s;
    while (j < t.size() && t[j].r == t[i].r && t[j].c == t[i].c) s += t[j++].v;
    if (!s.is_zero()) m.rows[t[i].r].push_back({t[i].c, std::move(s)});
    i = j;
  }
  return m;
}
}  // namespace

SuperOp embed(const SuperOp& x, const std::vector<int>& positions, const SpacePtr& target) {
  size_t m = x.arity(), n = target->arity();
  if (positions.size() != m) throw std::invalid_argument("embed: positions/arity mismatch");
  std::vector<char> used(n, 0);
  for (size_t k = 0; k < m; ++k) {
    int p = positions[k];
    if (p < 1 || (size_t)p > n) throw std::out_of_range("embed: position out of range");
    if (used[p - 1]) throw std::invalid_argument("embed: duplicate position");
    used[p - 1] = 1;
    if (target->par[p - 1] != x.sp->par[k]) throw std::invalid_argument("embed: slot type mismatch");
  }
  std::vector<int> rest;
  for (size_t s = 0; s < n; ++s)
    if (!used[s]) rest.push_back((int)s);
  uint32_t nrest = 1;
  for (int s : rest) nrest *= target->dim[s];
  std::vector<Trip> trips;
  trips.reserve(x.m.nnz() * nrest);
  for (uint32_t r = 0; r < x.dim(); ++r)
    for (auto& e : x.m.rows[r]) {
      uint32_t R = 0, C = 0, placed = 0;
      int sgn = 0;
      for (size_t k = 0; k < m; ++k) {
        uint32_t dr = x.sp->digit(r, k), dc = x.sp->digit(e.col, k);
        uint32_t slot = positions[k] - 1;
        R += dr * target->stride[slot];
        C += dc * target->stride[slot];
        if (x.sp->par[k][dr] ^ x.sp->par[k][dc]) {
          sgn ^= pair_parity(placed, 1u << slot);
          placed |= 1u << slot;
        }
      }
      GaussRat v = sgn ? -e.v : e.v;
      for (uint32_t q = 0; q < nrest; ++q) {
        uint32_t off = 0, qq = q;
        for (size_t t = rest.size(); t-- > 0;) {
          uint32_t d = target->dim[rest[t]];
          off += (qq % d) * target->stride[rest[t]];
          qq /= d;
        }
        trips.push_back({R + off, C + off, v});
      }
    }
  SuperOp o(target);
  o.m = from_triplets(target->total, trips);
  o.declared_parity = x.declared_parity;
  return o;
}

SuperOp embed(const SuperOp& x, const std::vector<int>& positions, int n) {
  int N = x.sp->slotN.at(0);
  for (int v : x.sp->slotN)
    if (v != N || N == 0) throw std::invalid_argument("embed: expected C^{N|N} slots");
  return embed(x, positions, cspace(N, n));
}

SuperOp eta(const SuperOp& a, int slot) {
  size_t k = slot - 1;
  if (k >= a.arity()) throw std::out_of_range("eta: slot out of range");
  int N = a.sp->slotN[k];
  if (N == 0) throw std::invalid_argument("eta: not a C^{N|N} slot");
  uint32_t st = a.sp->stride[k];
  auto flip = [&](uint32_t idx) {
    uint32_t d = a.sp->digit(idx, k);
    uint32_t nd = (d + N) % (2 * N);
    return idx - d * st + nd * st;
  };
  std::vector<Trip> t;
  for (uint32_t r = 0; r < a.dim(); ++r)
    for (auto& e : a.m.rows[r]) t.push_back({flip(r), flip(e.col), e.v});
  SuperOp o(a.sp);
  o.m = from_triplets(a.dim(), t);
  o.declared_parity = a.declared_parity;
  return o;
}

SuperOp tau(const SuperOp& a, int slot) {
  size_t k = slot - 1;
  if (k >= a.arity()) throw std::out_of_range("tau: slot out of range");
  uint32_t st = a.sp->stride[k];
  std::vector<Trip> t;
  for (uint32_t r = 0; r < a.dim(); ++r)
    for (auto& e : a.m.rows[r]) {
      uint32_t di = a.sp->digit(r, k), dj = a.sp->digit(e.col, k);
      int pi = a.sp->par[k][di], pj = a.sp->par[k][dj];
      uint32_t R = r - di * st + dj * st, C = e.col - dj * st + di * st;
      t.push_back({R, C, (pi & (pj ^ 1)) ? -e.v : e.v});
    }
  SuperOp o(a.sp);
  o.m = from_triplets(a.dim(), t);
  o.declared_parity = a.declared_parity;
  return o;
}

SuperOp theta(const SuperOp& a, int k) {
  int n = (int)a.arity();
  if (k < 1 || k >= n) throw std::out_of_range("theta: bad split");
  std::vector<int> pos(n), order;
  for (int j = 0; j < n; ++j) pos[j] = j < k ? (n - k) + j + 1 : j - k + 1;
  for (int j = k; j < n; ++j) order.push_back(j);
  for (int j = 0; j < k; ++j) order.push_back(j);
  return embed(a, pos, subspace_slots(a.sp, order));
}

SpMat to_matrix(const SuperOp& a) {
  const auto& pm = a.sp->pmask;
  SpMat m(a.dim(), a.dim());
  for (uint32_t r = 0; r < a.dim(); ++r) {
    m.rows[r].reserve(a.m.rows[r].size());
    for (auto& e : a.m.rows[r]) {
      bool s = pair_parity(pm[r] ^ pm[e.col], pm[e.col]);
      m.rows[r].push_back({e.col, s ? -e.v : e.v});
    }
  }
  return m;
}

SuperOp from_matrix(const SpMat& m, const SpacePtr& sp) {
  if (m.nr != sp->total || m.nc != sp->total) throw std::invalid_argument("from_matrix: size mismatch");
  SuperOp o(sp);
  o.m = m;
  o.m = to_matrix(o);  // the sign map is its own inverse
  return o;
}

SuperOp block(const SuperOp& a, int i, int j) {
  int N = a.sp->slotN.at(0);
  if (N == 0) throw std::invalid_argument("block: slot 1 is not C^{N|N}");
  std::vector<int> rest;
  for (size_t k = 1; k < a.arity(); ++k) rest.push_back((int)k);
  SuperOp o(subspace_slots(a.sp, rest));
  uint32_t st = a.sp->stride[0];
  uint32_t li = sidx_local(N, i), lj = sidx_local(N, j);
  for (uint32_t r = 0; r < st; ++r)
    for (auto& e : a.m.rows[li * st + r])
      if (e.col / st == lj) o.m.rows[r].push_back({e.col % st, e.v});
  return o;
}

SuperOp op_inverse(const SuperOp& a) {
  SuperOp o = from_matrix(inverse(to_matrix(a)), a.sp);
  if (a.declared_parity == 0) o.declared_parity = 0;
  return o;
}

SuperOp matrix_unit(int N, int i, int j) {
  SuperOp o(cspace(N, 1));
  o.m.rows[sidx_local(N, i)].push_back({(uint32_t)sidx_local(N, j), GaussRat(1)});
  o.declared_parity = spar(i) ^ spar(j);
  return o;
}

SuperOp Constants::F(int i, int j) const { return matrix_unit(N, i, j) + matrix_unit(N, -i, -j); }

Constants constants(int N) {
  auto s1 = cspace(N, 1), s2 = cspace(N, 2);
  Constants c{N, SuperOp(s2), SuperOp(s1), SuperOp(s2), SuperOp::identity(s1)};
  for (int i : sindices(N))
    for (int j : sindices(N)) {
      GaussRat sg(spar(j) ? -1 : 1);
      c.P = c.P + koszul_tensor(matrix_unit(N, i, j), matrix_unit(N, j, i)).scaled(sg);
      c.Q = c.Q + koszul_tensor(matrix_unit(N, i, j), matrix_unit(N, i, j)).scaled(GaussRat((spar(i) & spar(j)) ? -1 : 1));
    }
  for (int i : sindices(N)) c.J = c.J + matrix_unit(N, i, -i).scaled(GaussRat(spar(i) ? -1 : 1));
  c.P.declared_parity = 0;
  c.Q.declared_parity = 0;
  c.J.declared_parity = 1;
  return c;
}

// ---------- output ----------

static std::vector<long> index_tuple(const Space& s, uint32_t idx) {
  std::vector<long> t;
  for (size_t k = 0; k < s.arity(); ++k) {
    uint32_t d = s.digit(idx, k);
    t.push_back(s.slotN[k] ? sidx_from_local(s.slotN[k], d) : (long)d);
  }
  return t;
}

std::string SuperOp::dump_json() const {
  std::vector<std::tuple<std::vector<long>, std::vector<long>, std::string>> es;
  for (uint32_t r = 0; r < m.nr; ++r)
    for (auto& e : m.rows[r]) es.emplace_back(index_tuple(*sp, r), index_tuple(*sp, e.col), e.v.str());
  std::sort(es.begin(), es.end());
  nlohmann::json j;
  int N = 0;
  for (int v : sp->slotN) N = std::max(N, v);
  j["N"] = N;
  j["arity"] = arity();
  int p = parity();
  j["parity"] = p == 0 || p == 1 ? nlohmann::json(p) : nlohmann::json(nullptr);
  j["entries"] = nlohmann::json::array();
  for (auto& [r, c, v] : es) j["entries"].push_back({r, c, v});
  return j.dump();
}

std::string SuperOp::first_difference(const SuperOp& a, const SuperOp& b) {
  if (!a.sp->same_as(*b.sp)) return "shape mismatch";
  for (uint32_t r = 0; r < a.dim(); ++r) {
    if (a.m.rows[r].size() == b.m.rows[r].size()) {
      bool same = true;
      for (size_t k = 0; k < a.m.rows[r].size() && same; ++k)
        same = a.m.rows[r][k].col == b.m.rows[r][k].col && a.m.rows[r][k].v == b.m.rows[r][k].v;
      if (same) continue;
    }
    for (uint32_t c = 0; c < a.dim(); ++c) {
      GaussRat x = a.m.get(r, c), y = b.m.get(r, c);
      if (x != y) {
        std::ostringstream os;
        auto tr = index_tuple(*a.sp, r), tc = index_tuple(*a.sp, c);
        os << "entry (";
        for (size_t k = 0; k < tr.size(); ++k) os << (k ? "," : "") << tr[k];
        os << ";";
        for (size_t k = 0; k < tc.size(); ++k) os << (k ? "," : "") << tc[k];
        os << "): " << x.str() << " vs " << y.str();
        return os.str();
      }
    }
  }
  return "";
}

}  // namespace yqn
