#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rst/rng.hpp"

namespace rst {

using BigInt = boost::multiprecision::cpp_int;

/// Square integer matrix, row-major.
struct IntMatrix {
  std::size_t size = 0;
  std::vector<BigInt> cells;

  explicit IntMatrix(std::size_t n = 0) : size(n), cells(n * n) {}
  BigInt& operator()(std::size_t r, std::size_t c) { return cells[r * size + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return cells[r * size + c]; }
};

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(IntMatrix m);

/// Uniform integer in [0, bound); bound must be positive.
BigInt uniform_below(const BigInt& bound, Rng& rng);

}  // namespace rst
