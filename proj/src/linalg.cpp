#include "yqn/linalg.hpp"

#include <algorithm>
#include <map>

namespace yqn {

SpRow RowAccumulator::take() {
  std::sort(touched_.begin(), touched_.end());
  SpRow r;
  r.reserve(touched_.size());
  for (uint32_t c : touched_) {
    if (!val_[c].is_zero()) r.push_back({c, std::move(val_[c])});
    val_[c] = GaussRat();
    used_[c] = 0;
  }
  touched_.clear();
  return r;
}

SpMat SpMat::identity(uint32_t n) {
  SpMat m(n, n);
  for (uint32_t i = 0; i < n; ++i) m.rows[i].push_back({i, GaussRat(1)});
  return m;
}

SpMat SpMat::from_dense(const std::vector<std::vector<GaussRat>>& d) {
  SpMat m((uint32_t)d.size(), d.empty() ? 0 : (uint32_t)d[0].size());
  for (uint32_t i = 0; i < m.nr; ++i)
    for (uint32_t j = 0; j < m.nc; ++j)
      if (!d[i][j].is_zero()) m.rows[i].push_back({j, d[i][j]});
  return m;
}

std::vector<std::vector<GaussRat>> SpMat::dense() const {
  std::vector<std::vector<GaussRat>> d(nr, std::vector<GaussRat>(nc));
  for (uint32_t i = 0; i < nr; ++i)
    for (auto& e : rows[i]) d[i][e.col] = e.v;
  return d;
}

GaussRat SpMat::get(uint32_t r, uint32_t c) const {
  auto& row = rows[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, uint32_t x) { return e.col < x; });
  if (it != row.end() && it->col == c) return it->v;
  return GaussRat();
}

size_t SpMat::nnz() const {
  size_t n = 0;
  for (auto& r : rows) n += r.size();
  return n;
}

bool SpMat::is_zero() const {
  for (auto& r : rows)
    if (!r.empty()) return false;
  return true;
}

SpMat SpMat::transpose() const {
  SpMat t(nc, nr);
  for (uint32_t i = 0; i < nr; ++i)
    for (auto& e : rows[i]) t.rows[e.col].push_back({i, e.v});
  return t;
}

SpMat SpMat::scaled(const GaussRat& s) const {
  SpMat m(nr, nc);
  if (s.is_zero()) return m;
  for (uint32_t i = 0; i < nr; ++i) {
    m.rows[i].reserve(rows[i].size());
    for (auto& e : rows[i]) m.rows[i].push_back({e.col, e.v * s});
  }
  return m;
}

SpRow row_axpy(const SpRow& a, const GaussRat& s, const SpRow& b) {
  SpRow r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].col < b[j].col)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].col < a[i].col) {
      r.push_back({b[j].col, s * b[j].v});
      ++j;
    } else {
      GaussRat v = a[i].v + s * b[j].v;
      if (!v.is_zero()) r.push_back({a[i].col, std::move(v)});
      ++i;
      ++j;
    }
  }
  return r;
}

static void check_shape(const SpMat& a, const SpMat& b) {
  if (a.nr != b.nr || a.nc != b.nc) throw std::invalid_argument("matrix shape mismatch");
}

SpMat operator+(const SpMat& a, const SpMat& b) {
  check_shape(a, b);
  SpMat m(a.nr, a.nc);
  for (uint32_t i = 0; i < a.nr; ++i) m.rows[i] = row_axpy(a.rows[i], GaussRat(1), b.rows[i]);
  return m;
}

SpMat operator-(const SpMat& a, const SpMat& b) {
  check_shape(a, b);
  SpMat m(a.nr, a.nc);
  for (uint32_t i = 0; i < a.nr; ++i) m.rows[i] = row_axpy(a.rows[i], GaussRat(-1), b.rows[i]);
  return m;
}

SpMat operator*(const SpMat& a, const SpMat& b) {
  if (a.nc != b.nr) throw std::invalid_argument("matrix product shape mismatch");
  SpMat m(a.nr, b.nc);
  RowAccumulator acc(b.nc);
  for (uint32_t i = 0; i < a.nr; ++i) {
    for (auto& e : a.rows[i])
      for (auto& f : b.rows[e.col]) acc.add(f.col, e.v * f.v);
    m.rows[i] = acc.take();
  }
  return m;
}

bool operator==(const SpMat& a, const SpMat& b) {
  if (a.nr != b.nr || a.nc != b.nc) return false;
  for (uint32_t i = 0; i < a.nr; ++i) {
    if (a.rows[i].size() != b.rows[i].size()) return false;
    for (size_t k = 0; k < a.rows[i].size(); ++k)
      if (a.rows[i][k].col != b.rows[i][k].col || a.rows[i][k].v != b.rows[i][k].v) return false;
  }
  return true;
}

std::vector<GaussRat> SpMat::apply(const std::vector<GaussRat>& x) const {
  std::vector<GaussRat> y(nr);
  for (uint32_t i = 0; i < nr; ++i)
    for (auto& e : rows[i]) y[i] += e.v * x[e.col];
  return y;
}

// ---------- echelon ----------

SpRow RowEchelon::reduce(SpRow v) const {
  if (v.empty() || rows_.empty()) return v;
  std::map<uint32_t, GaussRat> m;
  for (auto& e : v) m.emplace(e.col, std::move(e.v));
  auto it = m.end();
  while (it != m.begin()) {
    --it;
    uint32_t c = it->first;
    int p = by_pivot_[c];
    if (p < 0) continue;
    GaussRat a = it->second;
    it = m.erase(it);  // points to next higher; we continue below c
    for (auto& e : rows_[p]) {
      if (e.col == c) continue;
      auto jt = m.find(e.col);
      if (jt == m.end()) {
        m.emplace(e.col, -(a * e.v));
      } else {
        jt->second -= a * e.v;
        if (jt->second.is_zero()) m.erase(jt);
      }
    }
    it = m.lower_bound(c);
  }
  SpRow r;
  r.reserve(m.size());
  for (auto& [c, x] : m) r.push_back({c, std::move(x)});
  return r;
}

bool RowEchelon::insert(SpRow v) {
  SpRow r = reduce(std::move(v));
  if (r.empty()) return false;
  GaussRat lead_inv = r.back().v.inv();
  for (auto& e : r) e.v = e.v * lead_inv;
  by_pivot_[r.back().col] = (int)rows_.size();
  rows_.push_back(std::move(r));
  return true;
}

void RowEchelon::full_reduce() {
  std::vector<int> order(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) order[i] = (int)i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return rows_[a].back().col < rows_[b].back().col; });
  // rows with smaller pivots are reduced first; reducing a row only touches lower columns
  for (int idx : order) {
    SpRow row = rows_[idx];
    uint32_t piv = row.back().col;
    by_pivot_[piv] = -1;
    SpRow r = reduce(row);
    by_pivot_[piv] = idx;
    rows_[idx] = std::move(r);
  }
}

size_t rank_of(const std::vector<SpRow>& rows, uint32_t ncols) {
  RowEchelon e(ncols);
  for (auto& r : rows) e.insert(r);
  return e.rank();
}

size_t rank_of(const SpMat& m) { return rank_of(m.rows, m.nc); }

std::vector<SpRow> kernel(const SpMat& m) {
  RowEchelon e(m.nc);
  for (auto& r : m.rows) e.insert(r);
  e.full_reduce();
  std::vector<SpRow> out;
  for (uint32_t f = 0; f < m.nc; ++f) {
    if (e.is_pivot(f)) continue;
    std::map<uint32_t, GaussRat> x;
    x[f] = GaussRat(1);
    for (auto& row : e.rows()) {
      uint32_t p = row.back().col;
      for (auto& en : row)
        if (en.col == f) x[p] = -en.v;
    }
    SpRow r;
    for (auto& [c, v] : x) r.push_back({c, v});
    out.push_back(std::move(r));
  }
  return out;
}

SpMat inverse(const SpMat& m) {
  if (m.nr != m.nc) throw std::invalid_argument("inverse: not square");
  uint32_t n = m.nr;
  // sparse Gauss-Jordan on [m | I] rows
  std::vector<SpRow> a(n), b(n);
  for (uint32_t i = 0; i < n; ++i) {
    a[i] = m.rows[i];
    b[i] = {{i, GaussRat(1)}};
  }
  std::vector<char> done(n, 0);
  std::vector<uint32_t> piv_row(n);
  for (uint32_t c = 0; c < n; ++c) {
    // choose the sparsest unused row with nonzero in column c
    int best = -1;
    size_t best_sz = SIZE_MAX;
    for (uint32_t r = 0; r < n; ++r) {
      if (done[r] || a[r].empty()) continue;
      if (a[r].front().col != c) continue;
      if (a[r].size() < best_sz) {
        best = (int)r;
        best_sz = a[r].size();
      }
    }
    if (best < 0) throw Singular("inverse: singular matrix");
    done[best] = 1;
    piv_row[c] = best;
    GaussRat inv = a[best].front().v.inv();
    for (auto& e : a[best]) e.v = e.v * inv;
    for (auto& e : b[best]) e.v = e.v * inv;
    for (uint32_t r = 0; r < n; ++r) {
      if (r == (uint32_t)best || a[r].empty() || a[r].front().col != c) continue;
      GaussRat f = -a[r].front().v;
      a[r] = row_axpy(a[r], f, a[best]);
      b[r] = row_axpy(b[r], f, b[best]);
    }
  }
  // back substitution: rows are upper triangular in column order
  for (uint32_t c = n; c-- > 0;) {
    uint32_t r = piv_row[c];
    // eliminate column c from earlier pivot rows
    for (uint32_t c2 = 0; c2 < c; ++c2) {
      uint32_t r2 = piv_row[c2];
      auto& row = a[r2];
      auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, uint32_t x) { return e.col < x; });
      if (it == row.end() || it->col != c) continue;
      GaussRat f = -it->v;
      a[r2] = row_axpy(a[r2], f, a[r]);
      b[r2] = row_axpy(b[r2], f, b[r]);
    }
  }
  SpMat out(n, n);
  for (uint32_t c = 0; c < n; ++c) out.rows[c] = std::move(b[piv_row[c]]);
  return out;
}

int minpoly_degree(const SpMat& m) {
  if (m.nr != m.nc) throw std::invalid_argument("minpoly: not square");
  uint32_t n = m.nr;
  RowEchelon e(n * n);
  SpMat p = SpMat::identity(n);
  for (int k = 0;; ++k) {
    SpRow v;
    for (uint32_t i = 0; i < n; ++i)
      for (auto& x : p.rows[i]) v.push_back({i * n + x.col, x.v});
    if (!e.insert(v)) return k;
    p = p * m;
  }
}

}  // namespace yqn
