#pragma once

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scdga/complex.hpp"
#include "scdga/incidence.hpp"
#include "scdga/rational.hpp"

namespace scdga {

// A story over a complex: a finite sequence of simplices in which
// consecutive statements differ. Its degree is the number of steps. A story
// is fair when every step adds exactly one vertex to the previous
// statement; fair stories are the ones the projection to the incidence
// algebra keeps.
class Story {
 public:
  using Seq = boost::container::small_vector<Simplex, 6>;

  explicit Story(std::span<const Simplex> s) : seq_(s.begin(), s.end()) {
    validate();
  }
  Story(std::initializer_list<Simplex> s) : seq_(s.begin(), s.end()) {
    validate();
  }
  explicit Story(const std::vector<Simplex>& s) : seq_(s.begin(), s.end()) {
    validate();
  }

  int degree() const { return static_cast<int>(seq_.size()) - 1; }
  std::size_t size() const { return seq_.size(); }
  Simplex operator[](std::size_t i) const { return seq_[i]; }
  Simplex front() const { return seq_.front(); }
  Simplex back() const { return seq_.back(); }
  std::span<const Simplex> view() const { return {seq_.data(), seq_.size()}; }
  auto begin() const { return seq_.begin(); }
  auto end() const { return seq_.end(); }

  friend bool operator==(const Story& a, const Story& b) {
    return a.seq_ == b.seq_;
  }
  friend bool operator!=(const Story& a, const Story& b) { return !(a == b); }

  // Junction concatenation: requires a.back() == b.front(); the shared
  // statement appears once.
  friend Story concatenate(const Story& a, const Story& b) {
    if (a.back() != b.front()) throw error("stories do not share a junction");
    Seq seq(a.seq_);
    seq.insert(seq.end(), b.seq_.begin() + 1, b.seq_.end());
    Story out;
    out.seq_ = std::move(seq);
    return out;
  }

 private:
  Story() = default;

  void validate() const {
    if (seq_.empty()) throw error("story needs at least one statement");
    for (std::size_t i = 0; i + 1 < seq_.size(); ++i) {
      if (seq_[i] == seq_[i + 1])
        throw error("consecutive statements of a story must differ");
    }
  }

  Seq seq_;
};

// Canonical story order: degree first, then statementwise lexicographic.
struct StoryLexLess {
  bool operator()(const Story& a, const Story& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return lex_less(a[i], b[i]);
    }
    return false;
  }
};

// If every step of w adds exactly one vertex, returns the story sign: the
// product over all steps of the incidence coefficient of the added vertex
// in the enlarged statement. Otherwise nullopt.
inline std::optional<int> fair_sign(std::span<const Simplex> w) {
  int sign = 1;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const std::uint64_t prev = w[i - 1].bits();
    const std::uint64_t cur = w[i].bits();
    const std::uint64_t added = cur & ~prev;
    if ((prev & ~cur) != 0 || std::popcount(added) != 1) return std::nullopt;
    const int v = std::countr_zero(added);
    const std::uint64_t below = cur & ((std::uint64_t{1} << v) - 1);
    if (std::popcount(below) & 1) sign = -sign;
  }
  return sign;
}

namespace detail {
inline void require_story_over(const Complex& c, const Story& w) {
  for (Simplex s : w) {
    if (!c.contains(s)) throw error("story statement not in complex");
  }
}
}  // namespace detail

inline bool is_fair(const Complex& c, const Story& w) {
  detail::require_story_over(c, w);
  return fair_sign(w.view()).has_value();
}

inline int story_sign(const Complex& c, const Story& w) {
  detail::require_story_over(c, w);
  const auto s = fair_sign(w.view());
  if (!s) throw error("story is not fair");
  return *s;
}

// An element of the universal differential envelope: a rational combination
// of stories. The product is junction concatenation, extended bilinearly;
// mismatched junctions multiply to zero.
class StoryElement {
 public:
  using TermMap = std::map<Story, Rational, StoryLexLess>;

  explicit StoryElement(Complex c) : c_(std::move(c)) {}

  static StoryElement basis(const Complex& c, const Story& w) {
    StoryElement x(c);
    x.add_term(w, Rational(1));
    return x;
  }

  const Complex& complex() const { return c_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  Rational coeff(const Story& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Story& w, const Rational& coeff) {
    detail::require_story_over(c_, w);
    if (coeff == 0) return;
    auto [it, fresh] = terms_.emplace(w, coeff);
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

  StoryElement& operator+=(const StoryElement& o) {
    require_same_complex(o);
    for (const auto& [w, a] : o.terms_) add_term(w, a);
    return *this;
  }

  StoryElement& operator-=(const StoryElement& o) {
    require_same_complex(o);
    for (const auto& [w, a] : o.terms_) add_term(w, -a);
    return *this;
  }

  StoryElement& operator*=(const Rational& r) {
    if (r == 0) {
      terms_.clear();
    } else {
      for (auto& [w, a] : terms_) a *= r;
    }
    return *this;
  }

  friend StoryElement operator+(StoryElement a, const StoryElement& b) {
    return a += b;
  }
  friend StoryElement operator-(StoryElement a, const StoryElement& b) {
    return a -= b;
  }
  friend StoryElement operator*(const Rational& r, StoryElement a) {
    return a *= r;
  }

  friend StoryElement operator*(const StoryElement& a, const StoryElement& b) {
    a.require_same_complex(b);
    StoryElement out(a.c_);
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) {
        if (wa.back() == wb.front())
          out.add_term(concatenate(wa, wb), ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const StoryElement& a, const StoryElement& b) {
    return a.c_.same_as(b.c_) && a.terms_ == b.terms_;
  }
  friend bool operator!=(const StoryElement& a, const StoryElement& b) {
    return !(a == b);
  }

 private:
  void require_same_complex(const StoryElement& o) const {
    if (!c_.same_as(o.c_)) throw error("elements over different complexes");
  }

  Complex c_;
  TermMap terms_;
};

// Enumerates the terms of the envelope differential of a single story:
// every insertion of a simplex of the complex at a position k, skipping
// insertions that would repeat a neighbor, with sign (-1)^k. The span
// handed to f points into a reused buffer.
template <class F>
void for_each_kahler_term(const Complex& c, std::span<const Simplex> w,
                          F&& f) {
  const std::size_t len = w.size();
  boost::container::small_vector<Simplex, 8> buf(len + 1, Simplex(0));
  for (std::size_t k = 0; k <= len; ++k) {
    std::copy(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k),
              buf.begin());
    std::copy(w.begin() + static_cast<std::ptrdiff_t>(k), w.end(),
              buf.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    const int sign = (k % 2 == 0) ? 1 : -1;
    for (Simplex q : c.simplices()) {
      if (k > 0 && q == w[k - 1]) continue;
      if (k < len && q == w[k]) continue;
      buf[k] = q;
      f(sign, std::span<const Simplex>(buf.data(), buf.size()));
    }
  }
}

// The envelope differential: on a degree-n story it is the alternating sum
// of all single-statement insertions. Linear in the element; input must be
// homogeneous.
inline StoryElement kahler_d(const StoryElement& x) {
  if (!x.homogeneous_degree())
    throw error("differential requires a homogeneous element");
  const Complex& c = x.complex();
  StoryElement out(c);
  for (const auto& [w, a] : x.terms()) {
    for_each_kahler_term(c, w.view(), [&](int sign, std::span<const Simplex> t) {
      out.add_term(Story(t), a * sign);
    });
  }
  return out;
}

// Projection onto the incidence algebra: a fair story w maps to its sign
// times |front(w)><back(w)|, every unfair story to zero.
inline IncidenceElement sigma(const StoryElement& x) {
  IncidenceElement out(x.complex());
  for (const auto& [w, a] : x.terms()) {
    if (const auto eps = fair_sign(w.view()))
      out.add_term(w.front(), w.back(), a * *eps);
  }
  return out;
}

// The simplicial differential ideal is exactly the kernel of the
// projection.
inline bool in_ideal(const StoryElement& x) { return sigma(x).is_zero(); }

namespace detail {
// sigma(kahler_d(basis story w)) accumulated into a raw term map, scaled by
// coeff. Fusing the two avoids materializing the envelope differential,
// which is what makes sweeping every story of a large complex affordable.
inline void accumulate_sigma_kahler(const Complex& c,
                                    std::span<const Simplex> w,
                                    const Rational& coeff,
                                    IncidenceElement::TermMap& acc) {
  for_each_kahler_term(c, w, [&](int sign, std::span<const Simplex> t) {
    if (const auto eps = fair_sign(t)) {
      auto [it, fresh] =
          acc.emplace(PairKey{t.front(), t.back()}, Rational(0));
      if (sign * *eps > 0)
        it->second += coeff;
      else
        it->second -= coeff;
    }
  });
}
}  // namespace detail

// sigma(kahler_d(x)) computed without building the intermediate element.
inline IncidenceElement sigma_of_kahler(const StoryElement& x) {
  if (!x.homogeneous_degree())
    throw error("differential requires a homogeneous element");
  const Complex& c = x.complex();
  IncidenceElement::TermMap acc;
  for (const auto& [w, a] : x.terms())
    detail::accumulate_sigma_kahler(c, w.view(), a, acc);
  IncidenceElement out(c);
  for (const auto& [k, v] : acc) out.add_term(k.p, k.q, v);
  return out;
}

// Section of the projection. Each pair |P><Q| lifts to the fair story that
// adds the vertices of Q minus P in the order given by order(p, q, added),
// weighted by the story sign so that sigma(lift(x)) == x. The canonical
// section uses ascending order.
template <class OrderFn>
StoryElement lift_with_order(const IncidenceElement& x, OrderFn&& order) {
  StoryElement out(x.complex());
  for (const auto& [k, a] : x.terms()) {
    std::vector<VertexIndex> added =
        Simplex(k.q.bits() & ~k.p.bits()).vertices();
    added = order(k.p, k.q, std::move(added));
    Story::Seq seq;
    seq.push_back(k.p);
    Simplex cur = k.p;
    for (VertexIndex v : added) {
      cur = cur.with(v);
      seq.push_back(cur);
    }
    const Story w(std::span<const Simplex>(seq.data(), seq.size()));
    out.add_term(w, a * *fair_sign(w.view()));
  }
  return out;
}

inline StoryElement lift(const IncidenceElement& x) {
  return lift_with_order(
      x, [](Simplex, Simplex, std::vector<VertexIndex> v) { return v; });
}

// All stories of the given degree, in statementwise enumeration order. The
// span handed to f points into a reused buffer.
template <class F>
void for_each_story(const Complex& c, int degree, F&& f) {
  if (degree < 0) throw error("degree must be nonnegative");
  const auto& all = c.simplices();
  boost::container::small_vector<Simplex, 8> buf(
      static_cast<std::size_t>(degree) + 1, Simplex(0));
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos > degree) {
      f(std::span<const Simplex>(buf.data(), buf.size()));
      return;
    }
    for (Simplex s : all) {
      if (pos > 0 && s == buf[static_cast<std::size_t>(pos) - 1]) continue;
      buf[static_cast<std::size_t>(pos)] = s;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
}

// All fair stories of the given degree.
template <class F>
void for_each_fair_story(const Complex& c, int degree, F&& f) {
  if (degree < 0) throw error("degree must be nonnegative");
  boost::container::small_vector<Simplex, 8> buf(
      static_cast<std::size_t>(degree) + 1, Simplex(0));
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos > degree) {
      f(std::span<const Simplex>(buf.data(), buf.size()));
      return;
    }
    const Simplex prev = buf[static_cast<std::size_t>(pos) - 1];
    for (VertexIndex u = 0; u < c.vertex_count(); ++u) {
      if (prev.contains(u)) continue;
      const Simplex next = prev.with(u);
      if (!c.contains(next)) continue;
      buf[static_cast<std::size_t>(pos)] = next;
      self(self, pos + 1);
    }
  };
  for (Simplex start : c.simplices()) {
    buf[0] = start;
    rec(rec, 1);
  }
}

// Generating family of the degree-n part of the simplicial differential
// ideal: all unfair stories, plus for each endpoint pair the consecutive
// differences of sign-normalized fair stories in canonical order.
template <class F>
void for_each_ideal_generator(const Complex& c, int degree, F&& f) {
  if (degree < 1) throw error("ideal generators start at degree 1");
  for_each_story(c, degree, [&](std::span<const Simplex> w) {
    if (fair_sign(w).has_value()) return;
    StoryElement g(c);
    g.add_term(Story(w), Rational(1));
    f(g);
  });
  for (Simplex p : c.simplices()) {
    const int qdim = p.dim() + degree;
    if (qdim > c.top_dimension()) continue;
    for (Simplex q : c.skeleton(qdim)) {
      if (!p.subset_of(q)) continue;
      std::vector<VertexIndex> added =
          Simplex(q.bits() & ~p.bits()).vertices();
      Story::Seq seq(static_cast<std::size_t>(degree) + 1, Simplex(0));
      auto story_of = [&](const std::vector<VertexIndex>& order) {
        seq[0] = p;
        Simplex cur = p;
        for (std::size_t i = 0; i < order.size(); ++i) {
          cur = cur.with(order[i]);
          seq[i + 1] = cur;
        }
        return Story(std::span<const Simplex>(seq.data(), seq.size()));
      };
      Story prev = story_of(added);
      while (std::next_permutation(added.begin(), added.end())) {
        Story next = story_of(added);
        StoryElement g(c);
        g.add_term(prev, Rational(*fair_sign(prev.view())));
        g.add_term(next, Rational(-*fair_sign(next.view())));
        f(g);
        prev = std::move(next);
      }
    }
  }
}

inline std::vector<StoryElement> ideal_generators(const Complex& c,
                                                  int degree) {
  std::vector<StoryElement> out;
  for_each_ideal_generator(c, degree,
                           [&](const StoryElement& g) { out.push_back(g); });
  return out;
}

struct IdealVerification {
  int max_degree = 0;
  unsigned long long generators_checked = 0;
  unsigned long long products_checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

// Checks that the ideal is a differential ideal: the envelope differential
// of every generator up to max_degree stays in the kernel of the
// projection, as do products of generators with seeded random envelope
// elements from either side.
inline IdealVerification verify_differential_ideal(const Complex& c,
                                                   int max_degree,
                                                   std::uint64_t seed = 0) {
  if (max_degree < 1) throw error("max degree must be at least 1");
  IdealVerification report;
  report.max_degree = max_degree;

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto random_story = [&](int degree) {
    const auto& all = c.simplices();
    if (all.size() < 2) degree = 0;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    Story::Seq seq;
    seq.push_back(all[pick(rng)]);
    for (int i = 0; i < degree; ++i) {
      Simplex s = all[pick(rng)];
      while (s == seq.back()) s = all[pick(rng)];
      seq.push_back(s);
    }
    return Story(std::span<const Simplex>(seq.data(), seq.size()));
  };
  const Rational coeff_pool[] = {Rational(1), Rational(-1),
                                 Rational(1) / 2, Rational(3),
                                 Rational(-2) / 3};
  std::vector<StoryElement> pool;
  for (int i = 0; i < 6; ++i) {
    StoryElement s(c);
    std::uniform_int_distribution<int> deg(0, 2);
    std::uniform_int_distribution<int> nterms(1, 2);
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t)
      s.add_term(random_story(deg(rng)), coeff_pool[(i + t) % 5]);
    pool.push_back(std::move(s));
  }

  const std::size_t failure_cap = 8;
  auto record = [&](const std::string& msg) {
    if (report.failures.size() < failure_cap) report.failures.push_back(msg);
  };

  for (int degree = 1; degree <= max_degree; ++degree) {
    unsigned long long index = 0;
    for_each_ideal_generator(c, degree, [&](const StoryElement& g) {
      ++report.generators_checked;
      IncidenceElement::TermMap acc;
      for (const auto& [w, a] : g.terms())
        detail::accumulate_sigma_kahler(c, w.view(), a, acc);
      for (const auto& [k, v] : acc) {
        if (v != 0) {
          record("degree " + std::to_string(degree) + " generator " +
                 std::to_string(index) +
                 ": envelope differential leaves the ideal");
          break;
        }
      }
      const StoryElement& s = pool[index % pool.size()];
      if (!in_ideal(s * g) || !in_ideal(g * s)) {
        record("degree " + std::to_string(degree) + " generator " +
               std::to_string(index) + ": product leaves the ideal");
      }
      report.products_checked += 2;
      ++index;
    });
  }
  return report;
}

}  // namespace scdga
