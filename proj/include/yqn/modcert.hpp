#pragma once
// exact comparison of matrix products by reduction modulo several primes.
// The number of primes comes from a height bound on the denominator-cleared
// products, so agreement modulo all of them means equality over Q(i).

#include "yqn/linalg.hpp"

namespace yqn {

struct ProductCompare {
  bool equal = true;
  uint32_t row = 0, col = 0;  // first differing entry (mod some prime) when !equal
  int primes = 0;             // primes used
};

ProductCompare products_equal(const std::vector<const SpMat*>& lhs, const std::vector<const SpMat*>& rhs);

// exact entry (r,c) of a product, through a row vector
GaussRat product_entry(const std::vector<const SpMat*>& f, uint32_t r, uint32_t c);

}  // namespace yqn
