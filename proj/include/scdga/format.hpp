#pragma once

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "scdga/chain.hpp"
#include "scdga/complex.hpp"
#include "scdga/incidence.hpp"
#include "scdga/rational.hpp"
#include "scdga/story.hpp"
#include "scdga/vertex_map.hpp"

namespace scdga {

// Canonical text forms. Parsing the printed form of an element and printing
// it again is the identity; the golden tests pin that down.

inline std::string vertex_list_str(const Complex& c, Simplex s) {
  std::string out;
  s.for_each_vertex([&](VertexIndex v) {
    if (!out.empty()) out += ' ';
    out += c.vertex_name(v);
  });
  return out;
}

inline std::string pair_str(const Complex& c, Simplex p, Simplex q) {
  return "[" + vertex_list_str(c, p) + " | " + vertex_list_str(c, q) + "]";
}

inline std::string story_str(const Complex& c, const Story& w) {
  std::string out = "<";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += " ; ";
    out += vertex_list_str(c, w[i]);
  }
  return out + ">";
}

namespace detail {
// Shared element printer: terms arrive in canonical map order.
template <class Terms, class BasisStr>
std::string element_str(const Terms& terms, BasisStr&& basis) {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [key, coeff] : terms) {
    const bool negative = coeff < 0;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    const Rational mag = negative ? Rational(-coeff) : coeff;
    if (mag != 1) out += to_string(mag) + " * ";
    out += basis(key);
  }
  return out;
}
}  // namespace detail

inline std::string to_string(const IncidenceElement& x) {
  return detail::element_str(x.terms(), [&](const PairKey& k) {
    return pair_str(x.complex(), k.p, k.q);
  });
}

inline std::string to_string(const StoryElement& x) {
  return detail::element_str(x.terms(), [&](const Story& w) {
    return story_str(x.complex(), w);
  });
}

inline std::vector<std::string> vertex_names(const Complex& c, Simplex s) {
  std::vector<std::string> out;
  s.for_each_vertex([&](VertexIndex v) { out.push_back(c.vertex_name(v)); });
  return out;
}

inline nlohmann::json to_json(const IncidenceElement& x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, a] : x.terms()) {
    out.push_back({{"p", vertex_names(x.complex(), k.p)},
                   {"q", vertex_names(x.complex(), k.q)},
                   {"coeff", to_string(a)}});
  }
  return out;
}

inline nlohmann::json to_json(const StoryElement& x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [w, a] : x.terms()) {
    nlohmann::json statements = nlohmann::json::array();
    for (Simplex s : w) statements.push_back(vertex_names(x.complex(), s));
    out.push_back({{"story", statements}, {"coeff", to_string(a)}});
  }
  return out;
}

inline nlohmann::json complex_summary_json(const Complex& c) {
  nlohmann::json by_dim = nlohmann::json::array();
  for (int n = 0; n <= c.top_dimension(); ++n)
    by_dim.push_back(c.skeleton(n).size());
  return {{"vertices", c.vertex_count()},
          {"simplices", c.simplex_count()},
          {"dimension", c.top_dimension()},
          {"count_by_dimension", by_dim}};
}

// Betti vector in the canonical bracket form, e.g. "[1, 1]".
inline std::string betti_str(const std::vector<std::size_t>& b) {
  std::string out = "[";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(b[i]);
  }
  return out + "]";
}

inline nlohmann::json to_json(const IdealVerification& r) {
  return {{"max_degree", r.max_degree},
          {"generators_checked", r.generators_checked},
          {"products_checked", r.products_checked},
          {"failures", r.failures},
          {"passed", r.passed()}};
}

inline nlohmann::json to_json(const DifferentiabilityReport& r) {
  nlohmann::json out = {{"max_degree", r.max_degree},
                        {"simplicial", r.simplicial},
                        {"ideal_preserved", r.ideal_preserved},
                        {"failures", r.failures},
                        {"verified", r.all_verified()}};
  out["multiplicative"] =
      r.multiplicative ? nlohmann::json(*r.multiplicative) : nullptr;
  out["commutes_with_differential"] =
      r.commutes ? nlohmann::json(*r.commutes) : nullptr;
  return out;
}

}  // namespace scdga
