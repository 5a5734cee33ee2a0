#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "scdga/error.hpp"

namespace scdga {

// Position of a vertex in the owning complex's vertex enumeration.
using VertexIndex = int;

// A non-empty set of vertices, stored as a bitmask over enumeration
// positions. The enumeration order is what gives every sign in the calculus
// its meaning, so a Simplex only makes sense relative to one complex; the
// complex itself caps the vertex count at 64.
class Simplex {
 public:
  explicit constexpr Simplex(std::uint64_t bits) : bits_(bits) {}

  static Simplex of(std::initializer_list<VertexIndex> vs) {
    std::uint64_t b = 0;
    for (VertexIndex v : vs) b |= bit(v);
    return Simplex(b);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int vertex_count() const { return std::popcount(bits_); }
  int dim() const { return vertex_count() - 1; }

  bool contains(VertexIndex v) const { return (bits_ & bit(v)) != 0; }
  bool subset_of(Simplex o) const { return (bits_ & ~o.bits_) == 0; }

  Simplex with(VertexIndex v) const { return Simplex(bits_ | bit(v)); }
  Simplex without(VertexIndex v) const { return Simplex(bits_ & ~bit(v)); }

  // Vertices in ascending enumeration order.
  std::vector<VertexIndex> vertices() const {
    std::vector<VertexIndex> out;
    out.reserve(static_cast<std::size_t>(vertex_count()));
    for (std::uint64_t b = bits_; b; b &= b - 1)
      out.push_back(std::countr_zero(b));
    return out;
  }

  template <class F>
  void for_each_vertex(F&& f) const {
    for (std::uint64_t b = bits_; b; b &= b - 1) f(std::countr_zero(b));
  }

  friend constexpr bool operator==(Simplex, Simplex) = default;

 private:
  static constexpr std::uint64_t bit(VertexIndex v) {
    return std::uint64_t{1} << v;
  }
  std::uint64_t bits_;
};

// (-1)^i where i is the position of v inside p, counted in enumeration
// order. This is the incidence coefficient of the facet p-without-v in p.
// Callers guarantee v is a vertex of p.
inline int incidence_sign(Simplex p, VertexIndex v) {
  const std::uint64_t below = p.bits() & ((std::uint64_t{1} << v) - 1);
  return (std::popcount(below) & 1) ? -1 : 1;
}

// Lexicographic order on ascending vertex lists. Note this differs from
// numeric order on the masks: {0,3} is numerically above {1,2} but
// lexicographically below it.
inline bool lex_less(Simplex a, Simplex b) {
  std::uint64_t x = a.bits();
  std::uint64_t y = b.bits();
  while (x != 0 && y != 0) {
    const int i = std::countr_zero(x);
    const int j = std::countr_zero(y);
    if (i != j) return i < j;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;  // proper prefix
}

struct SimplexLexLess {
  bool operator()(Simplex a, Simplex b) const { return lex_less(a, b); }
};

}  // namespace scdga
