#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scdga/chain.hpp"
#include "scdga/complex.hpp"
#include "scdga/format.hpp"
#include "scdga/incidence.hpp"
#include "scdga/linalg.hpp"
#include "scdga/story.hpp"

namespace scdga {

// Seeded random structure generators. Everything downstream of a given seed
// is deterministic, so failures reproduce.

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  int n = num(rng);
  if (n == 0) n = 5;
  return Rational(n) / den(rng);
}

inline Complex random_complex(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(3, 6);
  const int v = nv(rng);
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(v));
  for (int i = 1; i <= v; ++i) names.push_back(std::to_string(i));
  std::uniform_int_distribution<int> nf(1, 4);
  std::uniform_int_distribution<int> fs(2, 3);
  std::uniform_int_distribution<int> pick(0, v - 1);
  std::vector<std::vector<std::string>> facets;
  const int f = nf(rng);
  for (int i = 0; i < f; ++i) {
    std::set<int> chosen;
    const int size = fs(rng);
    while (static_cast<int>(chosen.size()) < size) chosen.insert(pick(rng));
    std::vector<std::string> facet;
    for (int x : chosen) facet.push_back(names[static_cast<std::size_t>(x)]);
    facets.push_back(std::move(facet));
  }
  return build_complex(names, facets);
}

inline Simplex random_simplex(const Complex& c, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, c.simplex_count() - 1);
  return c.simplices()[pick(rng)];
}

inline PairKey random_pair(const Complex& c, std::mt19937_64& rng) {
  const Simplex q = random_simplex(c, rng);
  const auto vs = q.vertices();
  std::uint64_t bits = 0;
  std::uniform_int_distribution<int> coin(0, 1);
  for (VertexIndex v : vs) {
    if (coin(rng)) bits |= std::uint64_t{1} << v;
  }
  if (bits == 0) {
    std::uniform_int_distribution<std::size_t> at(0, vs.size() - 1);
    bits = std::uint64_t{1} << vs[at(rng)];
  }
  return PairKey{Simplex(bits), q};
}

inline IncidenceElement random_incidence_element(const Complex& c,
                                                 std::mt19937_64& rng,
                                                 int max_terms = 4) {
  std::uniform_int_distribution<int> nt(1, max_terms);
  IncidenceElement out(c);
  for (int i = 0, n = nt(rng); i < n; ++i) {
    const PairKey k = random_pair(c, rng);
    out.add_term(k.p, k.q, random_rational(rng));
  }
  return out;
}

inline IncidenceElement random_homogeneous_incidence(const Complex& c,
                                                     int degree,
                                                     std::mt19937_64& rng,
                                                     int max_terms = 3) {
  const auto pairs = basis_pairs(c, degree);
  IncidenceElement out(c);
  if (pairs.empty()) return out;
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  std::uniform_int_distribution<int> nt(1, max_terms);
  for (int i = 0, n = nt(rng); i < n; ++i) {
    const PairKey k = pairs[pick(rng)];
    out.add_term(k.p, k.q, random_rational(rng));
  }
  return out;
}

// Random story of the exact degree, starting at the given statement.
inline Story random_story_from(const Complex& c, Simplex start, int degree,
                               std::mt19937_64& rng) {
  Story::Seq seq;
  seq.push_back(start);
  std::uniform_int_distribution<std::size_t> pick(0, c.simplex_count() - 1);
  for (int i = 0; i < degree; ++i) {
    Simplex s = c.simplices()[pick(rng)];
    while (s == seq.back()) s = c.simplices()[pick(rng)];
    seq.push_back(s);
  }
  return Story(std::span<const Simplex>(seq.data(), seq.size()));
}

inline Story random_story(const Complex& c, int degree, std::mt19937_64& rng) {
  if (c.simplex_count() < 2) degree = 0;
  return random_story_from(c, random_simplex(c, rng), degree, rng);
}

inline StoryElement random_story_element(const Complex& c,
                                         std::mt19937_64& rng,
                                         int max_degree = 2,
                                         int max_terms = 3) {
  std::uniform_int_distribution<int> nt(1, max_terms);
  std::uniform_int_distribution<int> deg(0, max_degree);
  StoryElement out(c);
  for (int i = 0, n = nt(rng); i < n; ++i)
    out.add_term(random_story(c, deg(rng), rng), random_rational(rng));
  return out;
}

inline StoryElement random_homogeneous_story_element(const Complex& c,
                                                     int degree,
                                                     std::mt19937_64& rng,
                                                     int max_terms = 2) {
  if (c.simplex_count() < 2) degree = 0;
  std::uniform_int_distribution<int> nt(1, max_terms);
  StoryElement out(c);
  for (int i = 0, n = nt(rng); i < n; ++i)
    out.add_term(random_story(c, degree, rng), random_rational(rng));
  return out;
}

// Rank evidence that the projection identifies the envelope's degree
// component with the incidence algebra's: the fair-story matrix of sigma
// has full row rank (surjectivity), and the consecutive-difference
// generators span a complement of exactly the right dimension inside the
// fair span (kernel size). Together with ideal-in-sigma-kernel this pins
// the kernel to the ideal.
struct SigmaRankReport {
  std::size_t pairs = 0;
  std::size_t fair_stories = 0;
  std::size_t image_rank = 0;
  std::size_t kernel_generator_rank = 0;

  bool surjective() const { return image_rank == pairs; }
  bool kernel_matches() const {
    return kernel_generator_rank + pairs == fair_stories;
  }
};

inline SigmaRankReport sigma_rank_report(const Complex& c, int degree) {
  SigmaRankReport rep;
  const auto pairs = basis_pairs(c, degree);
  rep.pairs = pairs.size();
  std::map<PairKey, std::size_t, PairKeyLess> row_of;
  for (std::size_t i = 0; i < pairs.size(); ++i) row_of[pairs[i]] = i;

  std::vector<Story> fairs;
  std::map<Story, std::size_t, StoryLexLess> fair_index;
  for_each_fair_story(c, degree, [&](std::span<const Simplex> w) {
    Story s(w);
    fair_index.emplace(s, fairs.size());
    fairs.push_back(std::move(s));
  });
  rep.fair_stories = fairs.size();

  RationalMatrix image(pairs.size(), std::vector<Rational>(fairs.size()));
  for (std::size_t j = 0; j < fairs.size(); ++j) {
    const Story& w = fairs[j];
    image[row_of.at(PairKey{w.front(), w.back()})][j] = *fair_sign(w.view());
  }
  rep.image_rank = rational_rank(std::move(image));

  if (degree >= 1) {
    std::vector<std::vector<Rational>> columns;
    for_each_ideal_generator(c, degree, [&](const StoryElement& g) {
      std::vector<Rational> col(fairs.size());
      for (const auto& [w, a] : g.terms()) {
        const auto it = fair_index.find(w);
        if (it == fair_index.end()) return;  // unfair generator, not in span
        col[it->second] = a;
      }
      columns.push_back(std::move(col));
    });
    RationalMatrix gen(fairs.size(), std::vector<Rational>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j) {
      for (std::size_t i = 0; i < fairs.size(); ++i) gen[i][j] = columns[j][i];
    }
    rep.kernel_generator_rank = rational_rank(std::move(gen));
  }
  return rep;
}

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct PropertyOptions {
  int max_degree = 3;
  std::uint64_t seed = 0;
  int random_checks = 200;
};

inline bool all_passed(const std::vector<PropertyResult>& rs) {
  return std::all_of(rs.begin(), rs.end(),
                     [](const PropertyResult& r) { return r.passed; });
}

// Runs every law of the calculus against one complex: exhaustively where
// the basis is small enough to sweep, with seeded random elements where it
// is not.
inline std::vector<PropertyResult> run_property_suite(
    const Complex& c, const PropertyOptions& opts = {}) {
  std::vector<PropertyResult> results;
  std::mt19937_64 rng(opts.seed ^ 0x5851f42d4c957f2dULL);
  const int maxd = opts.max_degree;

  auto prop = [&](const std::string& name, auto&& body) {
    PropertyResult r{name, true, ""};
    auto fail = [&r](const std::string& detail) {
      if (r.passed) {
        r.passed = false;
        r.detail = detail;
      }
    };
    body(fail);
    results.push_back(std::move(r));
  };

  std::vector<PairKey> all_pairs;
  for (int d = 0; d <= c.top_dimension(); ++d) {
    for (const PairKey& k : basis_pairs(c, d)) all_pairs.push_back(k);
  }
  auto basis_of = [&](const PairKey& k) {
    return IncidenceElement::basis(c, k.p, k.q);
  };

  prop("complex-closure", [&](auto fail) {
    std::size_t counted = 0;
    for (int n = 0; n <= c.top_dimension(); ++n) {
      for (Simplex s : c.skeleton(n)) {
        ++counted;
        if (s.dim() != n) return fail("skeleton holds a wrong dimension");
      }
    }
    if (counted != c.simplex_count())
      return fail("skeletons do not partition the complex");
    for (VertexIndex v = 0; v < c.vertex_count(); ++v) {
      if (!c.contains(Simplex(std::uint64_t{1} << v)))
        return fail("missing singleton " + c.vertex_name(v));
    }
    for (Simplex s : c.simplices()) {
      if (s.dim() == 0) continue;
      bool ok = true;
      s.for_each_vertex([&](VertexIndex v) {
        if (!c.contains(s.without(v))) ok = false;
      });
      if (!ok) return fail("not closed under faces at " + vertex_list_str(c, s));
    }
  });

  prop("incidence-sign-alternation", [&](auto fail) {
    for (Simplex p : c.simplices()) {
      if (p.dim() < 1) continue;
      const auto vs = p.vertices();
      for (VertexIndex v : vs) {
        for (VertexIndex u : vs) {
          if (u == v) continue;
          const int lhs = incidence_sign(p, v) * incidence_sign(p.without(v), u);
          const int rhs = incidence_sign(p, u) * incidence_sign(p.without(u), v);
          if (lhs != -rhs)
            return fail("removal signs fail to alternate at " +
                        vertex_list_str(c, p));
        }
      }
    }
  });

  prop("border-squared-zero", [&](auto fail) {
    for (Simplex p : c.simplices()) {
      if (!border(border(Chain::unit(c, p))).is_zero())
        return fail("fails at " + vertex_list_str(c, p));
    }
  });

  prop("border-coborder-adjoint", [&](auto fail) {
    for (int n = 1; n <= c.top_dimension(); ++n) {
      const auto& dom = c.skeleton(n);
      const auto& img = c.skeleton(n - 1);
      std::vector<Chain> borders;
      borders.reserve(dom.size());
      for (Simplex p : dom) borders.push_back(border(Chain::unit(c, p)));
      for (Simplex q : img) {
        const Chain cq = coborder(Chain::unit(c, q));
        for (std::size_t i = 0; i < dom.size(); ++i) {
          if (borders[i].coeff(q) != cq.coeff(dom[i]))
            return fail("pairing mismatch at " + vertex_list_str(c, dom[i]) +
                        " / " + vertex_list_str(c, q));
        }
      }
    }
  });

  prop("differential-squared-zero", [&](auto fail) {
    for (const PairKey& k : all_pairs) {
      if (!differential(differential(basis_of(k))).is_zero())
        return fail("fails at " + pair_str(c, k.p, k.q));
    }
    for (int i = 0; i < opts.random_checks / 10 + 1; ++i) {
      const IncidenceElement x = random_incidence_element(c, rng);
      if (!differential(differential(x)).is_zero())
        return fail("fails on a random element: " + to_string(x));
    }
  });

  prop("graded-leibniz", [&](auto fail) {
    for (const PairKey& a : all_pairs) {
      const IncidenceElement x = basis_of(a);
      const IncidenceElement dx = differential(x);
      const int r = a.degree();
      for (const PairKey& b : all_pairs) {
        const IncidenceElement y = basis_of(b);
        IncidenceElement rhs = dx * y;
        const IncidenceElement xdy = x * differential(y);
        rhs += (r % 2 != 0) ? Rational(-1) * xdy : xdy;
        if (differential(x * y) != rhs)
          return fail("fails at " + pair_str(c, a.p, a.q) + " * " +
                      pair_str(c, b.p, b.q));
      }
    }
    std::uniform_int_distribution<int> deg(0, std::max(c.top_dimension(), 0));
    for (int i = 0; i < opts.random_checks; ++i) {
      const int r = deg(rng);
      const IncidenceElement x = random_homogeneous_incidence(c, r, rng);
      const IncidenceElement y =
          random_homogeneous_incidence(c, deg(rng), rng);
      IncidenceElement rhs = differential(x) * y;
      const IncidenceElement xdy = x * differential(y);
      rhs += (r % 2 != 0) ? Rational(-1) * xdy : xdy;
      if (differential(x * y) != rhs)
        return fail("fails on random homogeneous elements");
    }
  });

  prop("product-degree-additive", [&](auto fail) {
    for (const PairKey& a : all_pairs) {
      for (const PairKey& b : all_pairs) {
        const IncidenceElement xy = basis_of(a) * basis_of(b);
        if (xy.is_zero()) continue;
        const auto d = xy.homogeneous_degree();
        if (!d || *d != a.degree() + b.degree())
          return fail("degree of a product is off");
      }
    }
  });

  prop("product-associative", [&](auto fail) {
    if (!all_pairs.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, all_pairs.size() - 1);
      for (int i = 0; i < opts.random_checks; ++i) {
        const IncidenceElement x = basis_of(all_pairs[pick(rng)]);
        const IncidenceElement y = basis_of(all_pairs[pick(rng)]);
        const IncidenceElement z = basis_of(all_pairs[pick(rng)]);
        if ((x * y) * z != x * (y * z))
          return fail("fails on basis pairs");
      }
    }
    for (int i = 0; i < 20; ++i) {
      const IncidenceElement x = random_incidence_element(c, rng);
      const IncidenceElement y = random_incidence_element(c, rng);
      const IncidenceElement z = random_incidence_element(c, rng);
      if ((x * y) * z != x * (y * z)) return fail("fails on random elements");
    }
  });

  prop("unit-two-sided", [&](auto fail) {
    const IncidenceElement unit = identity_element(c);
    if (!differential(unit).is_zero())
      return fail("differential of the unit is nonzero");
    for (const PairKey& k : all_pairs) {
      const IncidenceElement x = basis_of(k);
      if (unit * x != x || x * unit != x)
        return fail("fails at " + pair_str(c, k.p, k.q));
    }
    for (int i = 0; i < 20; ++i) {
      const IncidenceElement x = random_incidence_element(c, rng);
      if (unit * x != x || x * unit != x) return fail("fails on a random element");
    }
  });

  prop("sigma-rank", [&](auto fail) {
    for (int d = 0; d <= maxd; ++d) {
      const SigmaRankReport rep = sigma_rank_report(c, d);
      if (!rep.surjective())
        return fail("projection not surjective in degree " + std::to_string(d));
      if (!rep.kernel_matches())
        return fail("ideal does not fill the kernel in degree " +
                    std::to_string(d));
    }
  });

  prop("ideal-in-sigma-kernel", [&](auto fail) {
    for (int d = 1; d <= maxd; ++d) {
      bool ok = true;
      for_each_ideal_generator(c, d, [&](const StoryElement& g) {
        if (ok && !sigma(g).is_zero()) ok = false;
      });
      if (!ok)
        return fail("a degree-" + std::to_string(d) +
                    " generator has nonzero projection");
    }
  });

  prop("sigma-multiplicative", [&](auto fail) {
    for (int i = 0; i < opts.random_checks; ++i) {
      const StoryElement x = random_story_element(c, rng);
      StoryElement y = random_story_element(c, rng);
      if (i % 2 == 0 && !x.terms().empty()) {
        // bias toward nonzero products: continue from an endpoint of x
        const Simplex join = x.terms().begin()->first.back();
        y = StoryElement(c);
        std::uniform_int_distribution<int> deg(0, 2);
        y.add_term(random_story_from(c, join, deg(rng), rng),
                   random_rational(rng));
      }
      if (sigma(x * y) != sigma(x) * sigma(y))
        return fail("projection fails to respect a product");
    }
  });

  prop("differential-ideal-closure", [&](auto fail) {
    const IdealVerification rep =
        verify_differential_ideal(c, std::max(maxd, 1), opts.seed);
    if (!rep.passed()) return fail(rep.failures.front());
  });

  prop("projection-commutes-with-differential", [&](auto fail) {
    for (int d = 0; d <= std::min(maxd, 2); ++d) {
      bool ok = true;
      std::string witness;
      for_each_story(c, d, [&](std::span<const Simplex> w) {
        if (!ok) return;
        StoryElement b(c);
        b.add_term(Story(w), Rational(1));
        if (sigma_of_kahler(b) != differential(sigma(b))) {
          ok = false;
          witness = story_str(c, Story(w));
        }
      });
      if (!ok) return fail("fails at " + witness);
    }
    for (int i = 0; i < 50; ++i) {
      std::uniform_int_distribution<int> deg(0, 2);
      const StoryElement x = random_homogeneous_story_element(c, deg(rng), rng);
      if (sigma(kahler_d(x)) != differential(sigma(x)))
        return fail("fails on a random homogeneous element");
    }
  });

  prop("lifted-differential-matches", [&](auto fail) {
    for (int d = 0; d <= maxd; ++d) {
      for (const PairKey& k : basis_pairs(c, d)) {
        const IncidenceElement b = basis_of(k);
        const StoryElement lifted = lift(b);
        const IncidenceElement expect = differential(b);
        if (sigma_of_kahler(lifted) != expect ||
            sigma(kahler_d(lifted)) != expect)
          return fail("fails at " + pair_str(c, k.p, k.q));
      }
    }
    for (int i = 0; i < 20; ++i) {
      std::uniform_int_distribution<int> deg(0, std::max(c.top_dimension(), 0));
      const IncidenceElement x = random_homogeneous_incidence(c, deg(rng), rng);
      if (sigma(kahler_d(lift(x))) != differential(x))
        return fail("fails on a random homogeneous element");
    }
  });

  prop("section-independence", [&](auto fail) {
    auto shuffled = [&](Simplex, Simplex, std::vector<VertexIndex> v) {
      std::shuffle(v.begin(), v.end(), rng);
      return v;
    };
    for (int round = 0; round < 5; ++round) {
      for (int d = 0; d <= maxd; ++d) {
        for (const PairKey& k : basis_pairs(c, d)) {
          const IncidenceElement b = basis_of(k);
          if (sigma_of_kahler(lift_with_order(b, shuffled)) != differential(b))
            return fail("a shuffled section changes the induced differential at " +
                        pair_str(c, k.p, k.q));
        }
      }
    }
    for (int d = 0; d <= std::min(maxd, 2); ++d) {
      std::map<PairKey, IncidenceElement, PairKeyLess> reference;
      bool ok = true;
      std::string witness;
      for_each_fair_story(c, d, [&](std::span<const Simplex> w) {
        if (!ok) return;
        StoryElement e(c);
        e.add_term(Story(w), Rational(*fair_sign(w)));
        const IncidenceElement v = sigma_of_kahler(e);
        const PairKey k{w.front(), w.back()};
        auto [it, fresh] = reference.emplace(k, v);
        if (!fresh && it->second != v) {
          ok = false;
          witness = story_str(c, Story(w));
        }
      });
      if (!ok)
        return fail("two fair stories with the same endpoints disagree at " +
                    witness);
    }
  });

  prop("lift-is-section", [&](auto fail) {
    for (const PairKey& k : all_pairs) {
      const IncidenceElement b = basis_of(k);
      if (sigma(lift(b)) != b) return fail("fails at " + pair_str(c, k.p, k.q));
    }
    for (int i = 0; i < 50; ++i) {
      const IncidenceElement x = random_incidence_element(c, rng);
      if (sigma(lift(x)) != x) return fail("fails on a random element");
      const StoryElement s = random_story_element(c, rng);
      if (!in_ideal(lift(sigma(s)) - s))
        return fail("lift of a projection strays from its element");
    }
  });

  prop("envelope-differential-squared-zero", [&](auto fail) {
    for (int d = 0; d <= 1; ++d) {
      bool ok = true;
      std::string witness;
      for_each_story(c, d, [&](std::span<const Simplex> w) {
        if (!ok) return;
        StoryElement b(c);
        b.add_term(Story(w), Rational(1));
        if (!kahler_d(kahler_d(b)).is_zero()) {
          ok = false;
          witness = story_str(c, Story(w));
        }
      });
      if (!ok) return fail("fails at " + witness);
    }
  });

  prop("envelope-leibniz", [&](auto fail) {
    std::uniform_int_distribution<int> deg(0, 2);
    for (int i = 0; i < 50; ++i) {
      const int r = deg(rng);
      const StoryElement x = random_homogeneous_story_element(c, r, rng);
      StoryElement y = random_homogeneous_story_element(c, deg(rng), rng);
      if (i % 2 == 0 && !x.terms().empty()) {
        const Simplex join = x.terms().begin()->first.back();
        y = StoryElement(c);
        y.add_term(random_story_from(c, join, deg(rng), rng),
                   random_rational(rng));
      }
      StoryElement rhs = kahler_d(x) * y;
      const StoryElement xdy = x * kahler_d(y);
      rhs += (r % 2 != 0) ? Rational(-1) * xdy : xdy;
      if (kahler_d(x * y) != rhs) return fail("fails on random elements");
    }
  });

  prop("envelope-product-structure", [&](auto fail) {
    for (int i = 0; i < opts.random_checks; ++i) {
      std::uniform_int_distribution<int> deg(0, 2);
      const Story a = random_story(c, deg(rng), rng);
      const Story b = random_story(c, deg(rng), rng);
      const StoryElement prod =
          StoryElement::basis(c, a) * StoryElement::basis(c, b);
      if (a.back() != b.front()) {
        if (!prod.is_zero())
          return fail("mismatched junction gave a nonzero product");
      } else {
        if (prod.term_count() != 1 ||
            prod.terms().begin()->first.degree() != a.degree() + b.degree())
          return fail("junction product has the wrong shape");
      }
      const StoryElement x = random_story_element(c, rng, 1);
      const StoryElement y = random_story_element(c, rng, 1);
      const StoryElement z = random_story_element(c, rng, 1);
      if ((x * y) * z != x * (y * z)) return fail("product is not associative");
    }
  });

  prop("degree-decomposition", [&](auto fail) {
    for (int i = 0; i < 30; ++i) {
      const IncidenceElement x = random_incidence_element(c, rng, 6);
      IncidenceElement sum(c);
      for (const auto& [d, part] : degree_decompose(x)) {
        const auto hd = part.homogeneous_degree();
        if (part.is_zero() || !hd || *hd != d)
          return fail("a component is not homogeneous of its key");
        sum += part;
      }
      if (sum != x) return fail("components do not reassemble the element");
    }
  });

  return results;
}

}  // namespace scdga
