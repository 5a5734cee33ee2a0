#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scdga/complex.hpp"
#include "scdga/incidence.hpp"
#include "scdga/story.hpp"

namespace scdga {

// A map of vertex enumerations between two complexes. Simpliciality (every
// simplex image spans a simplex of the target) is a property checked
// separately, not a construction requirement: non-simplicial maps are
// exactly the interesting negative cases for the pullback machinery.
class VertexMap {
 public:
  VertexMap(Complex source, Complex target,
            const std::map<std::string, std::string>& assignment)
      : source_(std::move(source)), target_(std::move(target)) {
    assign_.resize(static_cast<std::size_t>(source_.vertex_count()), -1);
    for (const auto& [from, to] : assignment) {
      const auto v = source_.find_vertex(from);
      if (!v) throw error("unknown source vertex '" + from + "'");
      const auto w = target_.find_vertex(to);
      if (!w) throw error("unknown target vertex '" + to + "'");
      if (assign_[static_cast<std::size_t>(*v)] != -1)
        throw error("vertex '" + from + "' assigned twice");
      assign_[static_cast<std::size_t>(*v)] = *w;
    }
    for (VertexIndex v = 0; v < source_.vertex_count(); ++v) {
      if (assign_[static_cast<std::size_t>(v)] == -1)
        throw error("vertex '" + source_.vertex_name(v) + "' not assigned");
    }
    simplicial_ = compute_simplicial();
  }

  static VertexMap identity(const Complex& c) {
    std::map<std::string, std::string> assignment;
    for (const auto& name : c.vertex_order()) assignment[name] = name;
    return VertexMap(c, c, assignment);
  }

  const Complex& source() const { return source_; }
  const Complex& target() const { return target_; }

  VertexIndex apply(VertexIndex v) const {
    return assign_[static_cast<std::size_t>(v)];
  }

  // Image of a source simplex as a vertex set of the target. May fail to be
  // a simplex of the target when the map is not simplicial.
  Simplex image(Simplex s) const {
    std::uint64_t bits = 0;
    s.for_each_vertex([&](VertexIndex v) {
      bits |= std::uint64_t{1} << apply(v);
    });
    return Simplex(bits);
  }

  bool simplicial() const { return simplicial_; }

  friend bool operator==(const VertexMap& a, const VertexMap& b) {
    return a.source_.same_as(b.source_) && a.target_.same_as(b.target_) &&
           a.assign_ == b.assign_;
  }
  friend bool operator!=(const VertexMap& a, const VertexMap& b) {
    return !(a == b);
  }

 private:
  bool compute_simplicial() const {
    for (Simplex s : source_.simplices()) {
      if (!target_.contains(image(s))) return false;
    }
    return true;
  }

  Complex source_;
  Complex target_;
  std::vector<VertexIndex> assign_;
  bool simplicial_ = false;
};

inline bool is_simplicial(const VertexMap& m) { return m.simplicial(); }

// compose(inner, outer) applies inner first: the result sends a vertex v of
// inner's source to outer(inner(v)). Requires inner's target to equal
// outer's source.
inline VertexMap compose(const VertexMap& inner, const VertexMap& outer) {
  if (inner.target() != outer.source())
    throw error("maps do not compose: target/source mismatch");
  std::map<std::string, std::string> assignment;
  for (VertexIndex v = 0; v < inner.source().vertex_count(); ++v) {
    assignment[inner.source().vertex_name(v)] =
        outer.target().vertex_name(outer.apply(inner.apply(v)));
  }
  return VertexMap(inner.source(), outer.target(), assignment);
}

// Story pullback: each statement is replaced by every source simplex whose
// image is exactly that statement, skipping choices that would repeat a
// consecutive statement, summed over all combinations. Defined for every
// vertex map; for non-simplicial maps it is what exposes the failure of
// functoriality.
inline StoryElement pullback_stories(const VertexMap& m,
                                     const StoryElement& x) {
  if (x.complex() != m.target())
    throw error("element not over the map's target complex");
  std::map<std::uint64_t, std::vector<Simplex>> preimage;
  for (Simplex s : m.source().simplices()) {
    const Simplex img = m.image(s);
    if (m.target().contains(img)) preimage[img.bits()].push_back(s);
  }
  StoryElement out(m.source());
  Story::Seq buf;
  for (const auto& [w, a] : x.terms()) {
    buf.assign(w.size(), Simplex(0));
    auto rec = [&](auto&& self, std::size_t pos) -> void {
      if (pos == w.size()) {
        out.add_term(Story(std::span<const Simplex>(buf.data(), buf.size())),
                     a);
        return;
      }
      const auto it = preimage.find(w[pos].bits());
      if (it == preimage.end()) return;
      for (Simplex r : it->second) {
        if (pos > 0 && r == buf[pos - 1]) continue;
        buf[pos] = r;
        self(self, pos + 1);
      }
    };
    rec(rec, 0);
  }
  return out;
}

// Pullback on the incidence algebra: lift to the envelope, pull back the
// stories, project. Simplicial maps only; the result is independent of the
// chosen section.
inline IncidenceElement pullback_algebra(const VertexMap& m,
                                         const IncidenceElement& x) {
  if (!m.simplicial())
    throw error("pullback on the incidence algebra needs a simplicial map");
  if (x.complex() != m.target())
    throw error("element not over the map's target complex");
  return sigma(pullback_stories(m, lift(x)));
}

struct DifferentiabilityReport {
  int max_degree = 0;
  bool simplicial = false;
  // Set for simplicial maps only; the algebra pullback does not exist
  // otherwise.
  std::optional<bool> multiplicative;
  std::optional<bool> commutes;
  bool ideal_preserved = false;
  std::vector<std::string> failures;

  bool all_verified() const {
    return simplicial && multiplicative.value_or(false) &&
           commutes.value_or(false) && ideal_preserved;
  }
};

// Exhaustive functoriality audit up to the given degree.
//
// For simplicial maps: the algebra pullback is multiplicative and unital on
// basis pairs and commutes with the incidence differentials. For every
// vertex map, simplicial or not: the story pullback must respect the
// simplicial differential ideal. That is checked three ways, all through
// pullback_stories:
//   - ideal generators pull back into the ideal,
//   - the partition of the unit pulls back to the partition of the unit,
//   - the pullback commutes with the envelope differential modulo the
//     ideal, on every story up to degree max_degree - 1.
// The first holds for any vertex map; the other two are where
// non-simplicial maps genuinely break, which is what makes them a usable
// negative control.
inline DifferentiabilityReport check_differentiable(const VertexMap& m,
                                                    int max_degree) {
  if (max_degree < 0) throw error("max degree must be nonnegative");
  DifferentiabilityReport rep;
  rep.max_degree = max_degree;
  rep.simplicial = is_simplicial(m);
  const Complex& tgt = m.target();
  const Complex& src = m.source();

  auto record = [&](const std::string& msg) {
    if (rep.failures.size() < 8) rep.failures.push_back(msg);
  };

  bool ideal_ok = true;
  for (int deg = 1; deg <= max_degree; ++deg) {
    for_each_ideal_generator(tgt, deg, [&](const StoryElement& g) {
      if (!ideal_ok) return;
      if (!in_ideal(pullback_stories(m, g))) {
        ideal_ok = false;
        record("degree " + std::to_string(deg) +
               ": a generator pullback leaves the ideal");
      }
    });
  }
  {
    StoryElement units(tgt);
    for (Simplex p : tgt.simplices()) units.add_term(Story({p}), Rational(1));
    if (sigma(pullback_stories(m, units)) != identity_element(src)) {
      ideal_ok = false;
      record("partition of the unit does not pull back to the unit");
    }
  }
  for (int deg = 0; deg <= max_degree - 1 && ideal_ok; ++deg) {
    for_each_story(tgt, deg, [&](std::span<const Simplex> w) {
      if (!ideal_ok) return;
      StoryElement b(tgt);
      b.add_term(Story(w), Rational(1));
      const StoryElement lhs = pullback_stories(m, kahler_d(b));
      const StoryElement rhs = kahler_d(pullback_stories(m, b));
      if (!in_ideal(lhs - rhs)) {
        ideal_ok = false;
        record("degree " + std::to_string(deg) +
               ": story pullback does not respect the envelope "
               "differential modulo the ideal");
      }
    });
  }
  rep.ideal_preserved = ideal_ok;

  if (rep.simplicial) {
    std::map<PairKey, IncidenceElement, PairKeyLess> cache;
    auto phi = [&](PairKey k) -> const IncidenceElement& {
      auto it = cache.find(k);
      if (it == cache.end()) {
        it = cache
                 .emplace(k, pullback_algebra(
                                 m, IncidenceElement::basis(tgt, k.p, k.q)))
                 .first;
      }
      return it->second;
    };
    std::vector<PairKey> pairs;
    for (int deg = 0; deg <= max_degree; ++deg) {
      for (PairKey k : basis_pairs(tgt, deg)) pairs.push_back(k);
    }

    bool mult_ok =
        pullback_algebra(m, identity_element(tgt)) == identity_element(src);
    if (!mult_ok) record("unit does not pull back to the unit");
    for (std::size_t i = 0; i < pairs.size() && mult_ok; ++i) {
      for (std::size_t j = 0; j < pairs.size() && mult_ok; ++j) {
        IncidenceElement expect(src);
        if (pairs[i].q == pairs[j].p)
          expect = phi(PairKey{pairs[i].p, pairs[j].q});
        if (phi(pairs[i]) * phi(pairs[j]) != expect) {
          mult_ok = false;
          record("pullback is not multiplicative on basis pairs");
        }
      }
    }
    rep.multiplicative = mult_ok;

    bool comm_ok = true;
    for (const PairKey& k : pairs) {
      const IncidenceElement b = IncidenceElement::basis(tgt, k.p, k.q);
      if (pullback_algebra(m, differential(b)) != differential(phi(k))) {
        comm_ok = false;
        record("pullback does not commute with the differential");
        break;
      }
    }
    rep.commutes = comm_ok;
  }

  return rep;
}

}  // namespace scdga
