#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "scdga/error.hpp"
#include "scdga/simplex.hpp"

namespace scdga {

// A finite simplicial complex together with a fixed enumeration of its
// vertices. The enumeration is part of the structure: incidence
// coefficients, and with them every differential in the calculus, are
// computed from vertex positions in this order.
//
// The simplex family is closed downward and contains every singleton, so a
// complex is determined by its vertex order plus a facet list. Copies are
// cheap; the data is immutable and shared.
class Complex {
 public:
  int vertex_count() const { return static_cast<int>(d_->names.size()); }

  const std::vector<std::string>& vertex_order() const { return d_->names; }

  const std::string& vertex_name(VertexIndex v) const {
    return d_->names[static_cast<std::size_t>(v)];
  }

  std::optional<VertexIndex> find_vertex(const std::string& name) const {
    auto it = d_->index.find(name);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }

  // All simplices, ordered by (dimension, lexicographic vertex list).
  const std::vector<Simplex>& simplices() const { return d_->simplices; }

  std::size_t simplex_count() const { return d_->simplices.size(); }

  // Simplices of dimension n, lexicographically ordered. Empty when the
  // complex has none.
  const std::vector<Simplex>& skeleton(int n) const {
    static const std::vector<Simplex> none;
    if (n < 0 || n > top_dimension()) return none;
    return d_->by_dim[static_cast<std::size_t>(n)];
  }

  int top_dimension() const {
    return static_cast<int>(d_->by_dim.size()) - 1;
  }

  bool contains(Simplex s) const {
    return d_->members.count(s.bits()) != 0;
  }

  // Resolves vertex names to a simplex of this complex. Duplicate names
  // collapse (the list denotes a set); unknown names and non-simplices
  // are errors.
  Simplex simplex_from_names(const std::vector<std::string>& names) const;

  // Structural equality: same vertex enumeration, same simplex family.
  bool same_as(const Complex& o) const {
    if (d_ == o.d_) return true;
    return d_->names == o.d_->names && d_->members == o.d_->members;
  }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.same_as(b);
  }
  friend bool operator!=(const Complex& a, const Complex& b) {
    return !a.same_as(b);
  }

  friend Complex build_complex(const std::vector<std::string>& vertex_order,
                               const std::vector<std::vector<std::string>>& facets);

 private:
  struct Data {
    std::vector<std::string> names;
    std::map<std::string, VertexIndex> index;
    std::vector<Simplex> simplices;
    std::vector<std::vector<Simplex>> by_dim;
    std::unordered_set<std::uint64_t> members;
  };

  explicit Complex(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

// Builds the downward closure of the given facets over the given vertex
// enumeration. Every vertex of the enumeration is a simplex whether or not
// a facet mentions it.
inline Complex build_complex(const std::vector<std::string>& vertex_order,
                             const std::vector<std::vector<std::string>>& facets) {
  auto data = std::make_shared<Complex::Data>();
  if (vertex_order.empty()) throw error("complex needs at least one vertex");
  if (vertex_order.size() > 64) throw error("at most 64 vertices supported");
  for (const auto& name : vertex_order) {
    if (name.empty()) throw error("empty vertex name");
    auto [it, fresh] = data->index.emplace(
        name, static_cast<VertexIndex>(data->names.size()));
    if (!fresh) throw error("duplicate vertex '" + name + "'");
    data->names.push_back(name);
  }

  // Singletons first, then every non-empty subset of every facet.
  for (std::size_t v = 0; v < data->names.size(); ++v)
    data->members.insert(std::uint64_t{1} << v);
  for (const auto& facet : facets) {
    if (facet.empty()) throw error("empty facet");
    std::uint64_t mask = 0;
    for (const auto& name : facet) {
      auto it = data->index.find(name);
      if (it == data->index.end())
        throw error("unknown vertex '" + name + "' in facet");
      mask |= std::uint64_t{1} << it->second;
    }
    for (std::uint64_t sub = mask; sub != 0; sub = (sub - 1) & mask)
      data->members.insert(sub);
  }

  data->simplices.reserve(data->members.size());
  for (std::uint64_t bits : data->members) data->simplices.emplace_back(bits);
  std::sort(data->simplices.begin(), data->simplices.end(),
            [](Simplex a, Simplex b) {
              if (a.vertex_count() != b.vertex_count())
                return a.vertex_count() < b.vertex_count();
              return lex_less(a, b);
            });

  int top = 0;
  for (Simplex s : data->simplices) top = std::max(top, s.dim());
  data->by_dim.resize(static_cast<std::size_t>(top) + 1);
  for (Simplex s : data->simplices)
    data->by_dim[static_cast<std::size_t>(s.dim())].push_back(s);

  return Complex(std::move(data));
}

inline Simplex Complex::simplex_from_names(
    const std::vector<std::string>& names) const {
  if (names.empty()) throw error("empty vertex list");
  std::uint64_t mask = 0;
  for (const auto& name : names) {
    auto v = find_vertex(name);
    if (!v) throw error("unknown vertex '" + name + "'");
    mask |= std::uint64_t{1} << *v;
  }
  Simplex s(mask);
  if (!contains(s)) throw error("vertex list does not name a simplex");
  return s;
}

inline std::vector<Simplex> skeleton(const Complex& c, int n) {
  return c.skeleton(n);
}

// Incidence coefficient of v in p: (-1)^i with i the position of v among
// p's vertices in the complex's enumeration order.
inline int incidence_coeff(const Complex& c, VertexIndex v, Simplex p) {
  if (!c.contains(p)) throw error("simplex not in complex");
  if (v < 0 || v >= c.vertex_count() || !p.contains(v))
    throw error("vertex not in simplex");
  return incidence_sign(p, v);
}

inline int incidence_coeff(const Complex& c, const std::string& v, Simplex p) {
  auto idx = c.find_vertex(v);
  if (!idx) throw error("unknown vertex '" + v + "'");
  return incidence_coeff(c, *idx, p);
}

}  // namespace scdga
