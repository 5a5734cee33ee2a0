#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "scdga/complex.hpp"
#include "scdga/linalg.hpp"

namespace scdga {

// Rational Betti numbers, computed from exact ranks of the border matrices.
// Entry n is the dimension of the n-th homology over the rationals:
// b_n = |K_n| - rank d_n - rank d_(n+1), with d_0 and d_(top+1) zero maps.
//
// This is computed straight from border(), independently of the incidence
// algebra machinery, so it doubles as an oracle for it.
inline std::vector<std::size_t> betti(const Complex& c) {
  const int top = c.top_dimension();
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
  for (int n = 1; n <= top; ++n) {
    const auto& dom = c.skeleton(n);
    const auto& img = c.skeleton(n - 1);
    std::map<std::uint64_t, std::size_t> row_of;
    for (std::size_t i = 0; i < img.size(); ++i) row_of[img[i].bits()] = i;
    RationalMatrix m(img.size(), std::vector<Rational>(dom.size()));
    for (std::size_t j = 0; j < dom.size(); ++j) {
      const Simplex p = dom[j];
      p.for_each_vertex([&](VertexIndex v) {
        m[row_of.at(p.without(v).bits())][j] = incidence_sign(p, v);
      });
    }
    ranks[static_cast<std::size_t>(n)] = rational_rank(std::move(m));
  }

  std::vector<std::size_t> out(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    const std::size_t sn = static_cast<std::size_t>(n);
    out[sn] = c.skeleton(n).size() - ranks[sn] - ranks[sn + 1];
  }
  return out;
}

}  // namespace scdga
