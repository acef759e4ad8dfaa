#pragma once
// sparse exact matrices over GaussRat and the elimination routines built on them

#include <cstdint>
#include <optional>
#include <vector>

#include "yqn/scalar.hpp"

namespace yqn {

struct Entry {
  uint32_t col;
  GaussRat v;
};
using SpRow = std::vector<Entry>;  // sorted by col, no zeros

struct SpMat {
  uint32_t nr = 0, nc = 0;
  std::vector<SpRow> rows;

  SpMat() = default;
  SpMat(uint32_t r, uint32_t c) : nr(r), nc(c), rows(r) {}
  static SpMat identity(uint32_t n);
  static SpMat from_dense(const std::vector<std::vector<GaussRat>>& d);
  std::vector<std::vector<GaussRat>> dense() const;

  GaussRat get(uint32_t r, uint32_t c) const;
  size_t nnz() const;
  bool is_zero() const;
  SpMat transpose() const;
  SpMat scaled(const GaussRat& s) const;
  friend SpMat operator+(const SpMat& a, const SpMat& b);
  friend SpMat operator-(const SpMat& a, const SpMat& b);
  friend SpMat operator*(const SpMat& a, const SpMat& b);
  SpMat operator-() const { return scaled(GaussRat(-1)); }
  friend bool operator==(const SpMat& a, const SpMat& b);
  std::vector<GaussRat> apply(const std::vector<GaussRat>& x) const;
};

// row builder: accumulate (col, value) pairs, then emit a sorted row without zeros
class RowAccumulator {
 public:
  explicit RowAccumulator(uint32_t ncols) : val_(ncols), used_(ncols, 0) {}
  void add(uint32_t c, const GaussRat& v) {
    if (!used_[c]) {
      used_[c] = 1;
      touched_.push_back(c);
      val_[c] = v;
    } else {
      val_[c] += v;
    }
  }
  void sub(uint32_t c, const GaussRat& v) {
    if (!used_[c]) {
      used_[c] = 1;
      touched_.push_back(c);
      val_[c] = -v;
    } else {
      val_[c] -= v;
    }
  }
  SpRow take();

 private:
  std::vector<GaussRat> val_;
  std::vector<char> used_;
  std::vector<uint32_t> touched_;
};

// row a + s*b
SpRow row_axpy(const SpRow& a, const GaussRat& s, const SpRow& b);

// echelon basis of a row space; pivot of each stored row is its highest column
// (so the non-pivot columns are the lexicographically least free columns)
class RowEchelon {
 public:
  explicit RowEchelon(uint32_t ncols) : nc_(ncols), by_pivot_(ncols, -1) {}
  // reduce v against stored rows; returns remainder
  SpRow reduce(SpRow v) const;
  // insert; returns true if v was independent
  bool insert(SpRow v);
  size_t rank() const { return rows_.size(); }
  uint32_t ncols() const { return nc_; }
  bool is_pivot(uint32_t c) const { return by_pivot_[c] >= 0; }
  // fully reduced rows (each pivot column appears only in its own row)
  void full_reduce();
  const std::vector<SpRow>& rows() const { return rows_; }

 private:
  uint32_t nc_;
  std::vector<int> by_pivot_;
  std::vector<SpRow> rows_;
};

size_t rank_of(const std::vector<SpRow>& rows, uint32_t ncols);
size_t rank_of(const SpMat& m);

// null space of m (vectors x with m x = 0), as sparse column vectors
std::vector<SpRow> kernel(const SpMat& m);

// exact inverse (fraction-free elimination order, dense); throws Singular
SpMat inverse(const SpMat& m);

// minimal polynomial degree of a square matrix
int minpoly_degree(const SpMat& m);

}  // namespace yqn
