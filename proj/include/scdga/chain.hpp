#pragma once

#include <map>
#include <utility>

#include "scdga/complex.hpp"
#include "scdga/rational.hpp"

namespace scdga {

// A formal rational combination of simplices of one dimension. Mixing
// dimensions is rejected at insertion, so border/coborder never see mixed
// input. The zero chain of any dimension compares equal to any other zero
// chain over the same complex.
class Chain {
 public:
  using TermMap = std::map<Simplex, Rational, SimplexLexLess>;

  Chain(Complex c, int dim) : c_(std::move(c)), dim_(dim) {
    if (dim_ < -1 || dim_ > c_.top_dimension())
      throw error("chain dimension out of range");
  }

  static Chain unit(const Complex& c, Simplex s) {
    if (!c.contains(s)) throw error("simplex not in complex");
    Chain x(c, s.dim());
    x.terms_.emplace(s, Rational(1));
    return x;
  }

  const Complex& complex() const { return c_; }
  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  Rational coeff(Simplex s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(Simplex s, const Rational& coeff) {
    if (!c_.contains(s)) throw error("simplex not in complex");
    if (s.dim() != dim_) throw error("mixed-dimension chain");
    if (coeff == 0) return;
    auto [it, fresh] = terms_.emplace(s, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Chain& operator+=(const Chain& o) {
    require_compatible(o);
    if (terms_.empty()) dim_ = o.dim_;
    for (const auto& [s, a] : o.terms_) add_term(s, a);
    return *this;
  }

  Chain& operator-=(const Chain& o) {
    require_compatible(o);
    if (terms_.empty()) dim_ = o.dim_;
    for (const auto& [s, a] : o.terms_) add_term(s, -a);
    return *this;
  }

  Chain& operator*=(const Rational& r) {
    if (r == 0) {
      terms_.clear();
    } else {
      for (auto& [s, a] : terms_) a *= r;
    }
    return *this;
  }

  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(const Rational& r, Chain a) { return a *= r; }

  friend bool operator==(const Chain& a, const Chain& b) {
    if (!a.c_.same_as(b.c_)) return false;
    if (a.terms_.empty() && b.terms_.empty()) return true;
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Chain& a, const Chain& b) { return !(a == b); }

 private:
  void require_compatible(const Chain& o) const {
    if (!c_.same_as(o.c_)) throw error("chains over different complexes");
    if (!o.terms_.empty() && !terms_.empty() && dim_ != o.dim_)
      throw error("mixed-dimension chain");
  }

  Complex c_;
  int dim_;
  TermMap terms_;
};

// border |P> = sum over vertices v of P of (-1)^pos(v,P) |P minus v|;
// vertices map to zero.
inline Chain border(const Chain& x) {
  Chain out(x.complex(), x.dim() <= 0 ? -1 : x.dim() - 1);
  for (const auto& [p, a] : x.terms()) {
    if (p.dim() == 0) continue;
    p.for_each_vertex([&](VertexIndex v) {
      out.add_term(p.without(v), a * incidence_sign(p, v));
    });
  }
  return out;
}

// coborder <Q| = sum over vertices u with Q+u in the complex of
// (-1)^pos(u,Q+u) <Q+u|. Adjoint of border under the basis pairing.
inline Chain coborder(const Chain& x) {
  const Complex& c = x.complex();
  const int out_dim = x.dim() + 1 > c.top_dimension() ? -1 : x.dim() + 1;
  Chain out(c, x.is_zero() ? -1 : out_dim);
  for (const auto& [q, a] : x.terms()) {
    for (VertexIndex u = 0; u < c.vertex_count(); ++u) {
      if (q.contains(u)) continue;
      const Simplex qu = q.with(u);
      if (!c.contains(qu)) continue;
      out.add_term(qu, a * incidence_sign(qu, u));
    }
  }
  return out;
}

}  // namespace scdga
