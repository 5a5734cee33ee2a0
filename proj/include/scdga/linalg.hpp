#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "scdga/rational.hpp"

namespace scdga {

// Dense row-major matrix over the rationals. Small and exact; everything
// here is desk-scale, so plain Gaussian elimination is enough.
using RationalMatrix = std::vector<std::vector<Rational>>;

// Rank by fraction-exact forward elimination. Takes the matrix by value
// and destroys the copy.
inline std::size_t rational_rank(RationalMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[rank][col];
      for (std::size_t k = col; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace scdga
