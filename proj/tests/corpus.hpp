#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "scdga/scdga.hpp"
#include "scdga/verify.hpp"

// Shared fixtures: the named complexes every suite sweeps, the seeded
// random complexes, and the vertex-map corpus. The named complexes mirror
// the files under data/ one-to-one; test_parse_cli checks that the two
// stay in sync.

namespace corpus {

using scdga::Complex;
using scdga::VertexMap;

inline Complex edge() {
  return scdga::build_complex({"1", "2"}, {{"1", "2"}});
}

inline Complex triangle() {
  return scdga::build_complex({"1", "2", "3"}, {{"1", "2", "3"}});
}

inline Complex hollow_triangle() {
  return scdga::build_complex({"1", "2", "3"},
                              {{"1", "2"}, {"2", "3"}, {"1", "3"}});
}

inline Complex tetrahedron_boundary() {
  return scdga::build_complex(
      {"1", "2", "3", "4"},
      {{"1", "2", "3"}, {"1", "2", "4"}, {"1", "3", "4"}, {"2", "3", "4"}});
}

inline Complex simplex4() {
  return scdga::build_complex({"1", "2", "3", "4", "5"},
                              {{"1", "2", "3", "4", "5"}});
}

inline Complex path() {
  return scdga::build_complex({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});
}

inline Complex path_primed() {
  return scdga::build_complex({"1'", "2'", "3'"}, {{"1'", "2'"}, {"2'", "3'"}});
}

inline Complex path_doubly_primed() {
  return scdga::build_complex({"1''", "2''", "3''"},
                              {{"1''", "2''"}, {"2''", "3''"}});
}

inline Complex two_points() {
  return scdga::build_complex({"1", "2"}, {});
}

struct NamedComplex {
  std::string name;
  Complex complex;
};

inline std::vector<NamedComplex> named() {
  return {{"edge", edge()},
          {"triangle", triangle()},
          {"hollow-triangle", hollow_triangle()},
          {"tetrahedron-boundary", tetrahedron_boundary()},
          {"simplex4", simplex4()},
          {"path", path()},
          {"path2", path_primed()},
          {"two-points", two_points()}};
}

// The named corpus plus twenty seeded random complexes.
inline std::vector<NamedComplex> full(int random_count = 20) {
  auto out = named();
  for (int seed = 1; seed <= random_count; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    out.push_back(
        {"random-" + std::to_string(seed), scdga::random_complex(rng)});
  }
  return out;
}

// The map that collapses the second edge of the path onto its middle
// vertex: simplicial, the canonical positive example.
inline VertexMap collapse_pi1() {
  return VertexMap(path_primed(), path(),
                   {{"1'", "1"}, {"2'", "2"}, {"3'", "2"}});
}

// The map that sends the first edge across the missing diagonal of the
// path: not simplicial, the canonical negative example.
inline VertexMap diagonal_pi2() {
  return VertexMap(path_primed(), path(),
                   {{"1'", "1"}, {"2'", "3"}, {"3'", "3"}});
}

struct NamedMap {
  std::string name;
  VertexMap map;
  bool expect_simplicial;
};

inline std::vector<NamedMap> map_corpus() {
  std::vector<NamedMap> out;
  out.push_back({"identity-edge", VertexMap::identity(edge()), true});
  out.push_back({"identity-triangle", VertexMap::identity(triangle()), true});
  out.push_back(
      {"identity-hollow", VertexMap::identity(hollow_triangle()), true});
  out.push_back({"identity-tetrahedron-boundary",
                 VertexMap::identity(tetrahedron_boundary()), true});
  out.push_back({"identity-path", VertexMap::identity(path()), true});
  out.push_back({"collapse-path", collapse_pi1(), true});
  out.push_back({"include-path-in-triangle",
                 VertexMap(path(), triangle(),
                           {{"1", "1"}, {"2", "2"}, {"3", "3"}}),
                 true});
  out.push_back({"collapse-triangle-to-edge",
                 VertexMap(triangle(), edge(),
                           {{"1", "1"}, {"2", "2"}, {"3", "2"}}),
                 true});
  out.push_back({"fold-tetrahedron-boundary",
                 VertexMap(tetrahedron_boundary(), triangle(),
                           {{"1", "1"}, {"2", "2"}, {"3", "3"}, {"4", "1"}}),
                 true});
  out.push_back({"constant-triangle-to-edge",
                 VertexMap(triangle(), edge(),
                           {{"1", "1"}, {"2", "1"}, {"3", "1"}}),
                 true});
  out.push_back({"swap-edge",
                 VertexMap(edge(), edge(), {{"1", "2"}, {"2", "1"}}), true});
  out.push_back({"rotate-hollow",
                 VertexMap(hollow_triangle(), hollow_triangle(),
                           {{"1", "2"}, {"2", "3"}, {"3", "1"}}),
                 true});
  const VertexMap second_collapse(path_doubly_primed(), path_primed(),
                                  {{"1''", "1'"}, {"2''", "2'"}, {"3''", "2'"}});
  out.push_back({"collapse-path-twice", second_collapse, true});
  out.push_back({"composed-collapse",
                 scdga::compose(second_collapse, collapse_pi1()), true});
  out.push_back({"diagonal-path", diagonal_pi2(), false});
  return out;
}

}  // namespace corpus
