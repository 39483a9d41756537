#include "rst/bigint.hpp"

#include <stdexcept>
#include <utility>

namespace rst {

BigInt determinant(IntMatrix m) {
  const std::size_t n = m.size;
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev_pivot = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Exact division is guaranteed by Sylvester's identity.
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev_pivot;
      }
      m(i, k) = 0;
    }
    prev_pivot = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

BigInt uniform_below(const BigInt& bound, Rng& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_below needs a positive bound");
  if (bound == 1) return 0;
  const unsigned bits = boost::multiprecision::msb(BigInt(bound - 1)) + 1;
  const unsigned words = (bits + 63) / 64;
  BigInt mask = (BigInt(1) << bits) - 1;
  while (true) {
    BigInt x = 0;
    for (unsigned w = 0; w < words; ++w) {
      x <<= 64;
      x |= rng.next();
    }
    x &= mask;
    if (x < bound) return x;
  }
}

}  // namespace rst
