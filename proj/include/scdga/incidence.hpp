#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "scdga/complex.hpp"
#include "scdga/rational.hpp"

namespace scdga {

// Basis element |P><Q| of the incidence algebra: an ordered pair of
// simplices with P a subset of Q. Its degree is dim Q - dim P.
struct PairKey {
  Simplex p;
  Simplex q;

  int degree() const { return q.dim() - p.dim(); }
  friend bool operator==(PairKey, PairKey) = default;
};

// Canonical term order: degree, then lexicographic P, then lexicographic Q.
struct PairKeyLess {
  bool operator()(PairKey a, PairKey b) const {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da < db;
    if (a.p != b.p) return lex_less(a.p, b.p);
    return lex_less(a.q, b.q);
  }
};

// An element of the incidence algebra of a complex: a rational combination
// of pairs |P><Q| with P a subset of Q. The product is junction
// composition, |P><Q| * |Q><S| = |P><S| and zero on mismatched junctions.
class IncidenceElement {
 public:
  using TermMap = std::map<PairKey, Rational, PairKeyLess>;

  explicit IncidenceElement(Complex c) : c_(std::move(c)) {}

  static IncidenceElement basis(const Complex& c, Simplex p, Simplex q) {
    IncidenceElement x(c);
    x.add_term(p, q, Rational(1));
    return x;
  }

  const Complex& complex() const { return c_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  Rational coeff(Simplex p, Simplex q) const {
    auto it = terms_.find(PairKey{p, q});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(Simplex p, Simplex q, const Rational& coeff) {
    if (!c_.contains(p) || !c_.contains(q))
      throw error("simplex not in complex");
    if (!p.subset_of(q)) throw error("pair requires P subset of Q");
    if (coeff == 0) return;
    auto [it, fresh] = terms_.emplace(PairKey{p, q}, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // Degree when every term has the same one; 0 for the zero element.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return 0;
    const int d = terms_.begin()->first.degree();
    if (terms_.rbegin()->first.degree() != d) return std::nullopt;
    return d;
  }

  IncidenceElement& operator+=(const IncidenceElement& o) {
    require_same_complex(o);
    for (const auto& [k, a] : o.terms_) add_term(k.p, k.q, a);
    return *this;
  }

  IncidenceElement& operator-=(const IncidenceElement& o) {
    require_same_complex(o);
    for (const auto& [k, a] : o.terms_) add_term(k.p, k.q, -a);
    return *this;
  }

  IncidenceElement& operator*=(const Rational& r) {
    if (r == 0) {
      terms_.clear();
    } else {
      for (auto& [k, a] : terms_) a *= r;
    }
    return *this;
  }

  friend IncidenceElement operator+(IncidenceElement a,
                                    const IncidenceElement& b) {
    return a += b;
  }
  friend IncidenceElement operator-(IncidenceElement a,
                                    const IncidenceElement& b) {
    return a -= b;
  }
  friend IncidenceElement operator*(const Rational& r, IncidenceElement a) {
    return a *= r;
  }

  friend IncidenceElement operator*(const IncidenceElement& a,
                                    const IncidenceElement& b) {
    a.require_same_complex(b);
    IncidenceElement out(a.c_);
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        if (ka.q == kb.p) out.add_term(ka.p, kb.q, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const IncidenceElement& a, const IncidenceElement& b) {
    return a.c_.same_as(b.c_) && a.terms_ == b.terms_;
  }
  friend bool operator!=(const IncidenceElement& a, const IncidenceElement& b) {
    return !(a == b);
  }

 private:
  void require_same_complex(const IncidenceElement& o) const {
    if (!c_.same_as(o.c_)) throw error("elements over different complexes");
  }

  Complex c_;
  TermMap terms_;
};

// All basis pairs of the given degree, in canonical order.
inline std::vector<PairKey> basis_pairs(const Complex& c, int degree) {
  if (degree < 0) throw error("degree must be nonnegative");
  std::vector<PairKey> out;
  for (Simplex p : c.simplices()) {
    const int qdim = p.dim() + degree;
    if (qdim > c.top_dimension()) continue;
    for (Simplex q : c.skeleton(qdim)) {
      if (p.subset_of(q)) out.push_back(PairKey{p, q});
    }
  }
  std::sort(out.begin(), out.end(), PairKeyLess{});
  return out;
}

// Unit of the incidence algebra: the sum of |P><P| over all simplices.
inline IncidenceElement identity_element(const Complex& c) {
  IncidenceElement out(c);
  for (Simplex p : c.simplices()) out.add_term(p, p, Rational(1));
  return out;
}

// The differential of the incidence algebra:
//   d |P><Q| = |border P><Q| - (-1)^deg |P><coborder Q|
// where deg = dim Q - dim P and the coborder runs over simplices Q+u of
// the complex. It has degree +1 and obeys the graded Leibniz rule.
inline IncidenceElement differential(const IncidenceElement& x) {
  const Complex& c = x.complex();
  IncidenceElement out(c);
  for (const auto& [k, a] : x.terms()) {
    if (k.p.dim() > 0) {
      k.p.for_each_vertex([&](VertexIndex v) {
        out.add_term(k.p.without(v), k.q, a * incidence_sign(k.p, v));
      });
    }
    const Rational b = (k.degree() % 2 == 0) ? -a : a;
    for (VertexIndex u = 0; u < c.vertex_count(); ++u) {
      if (k.q.contains(u)) continue;
      const Simplex qu = k.q.with(u);
      if (!c.contains(qu)) continue;
      out.add_term(k.p, qu, b * incidence_sign(qu, u));
    }
  }
  return out;
}

// Splits an element into its homogeneous parts, keyed by degree. The zero
// element has no parts.
inline std::map<int, IncidenceElement> degree_decompose(
    const IncidenceElement& x) {
  std::map<int, IncidenceElement> out;
  for (const auto& [k, a] : x.terms()) {
    auto [it, fresh] = out.try_emplace(k.degree(), x.complex());
    it->second.add_term(k.p, k.q, a);
  }
  return out;
}

}  // namespace scdga
