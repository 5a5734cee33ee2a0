#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scdga/complex.hpp"
#include "scdga/incidence.hpp"
#include "scdga/rational.hpp"
#include "scdga/story.hpp"
#include "scdga/vertex_map.hpp"

namespace scdga {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Strips a '#' comment, splits into whitespace tokens, hands each
// non-empty line with its 1-based number to f.
template <class F>
void for_each_line(std::string_view text, F&& f) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (!tokens.empty()) f(line_no, tokens);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace detail

// Complex files: one 'vertices:' line fixing the enumeration order, then
// any number of 'facet:' lines. '#' starts a comment.
inline Complex parse_complex(std::string_view text) {
  std::vector<std::string> vertex_order;
  std::vector<std::vector<std::string>> facets;
  bool have_vertices = false;
  std::map<std::string, int> seen;

  detail::for_each_line(text, [&](int ln, std::vector<std::string>& tokens) {
    if (tokens[0] == "vertices:") {
      if (have_vertices)
        throw parse_error("duplicate 'vertices:' line", ln);
      if (tokens.size() < 2)
        throw parse_error("'vertices:' line needs at least one vertex", ln);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!seen.emplace(tokens[i], ln).second)
          throw parse_error("duplicate vertex '" + tokens[i] + "'", ln);
        vertex_order.push_back(tokens[i]);
      }
      if (vertex_order.size() > 64)
        throw parse_error("at most 64 vertices supported", ln);
      have_vertices = true;
    } else if (tokens[0] == "facet:") {
      if (!have_vertices)
        throw parse_error("'facet:' before 'vertices:' line", ln);
      if (tokens.size() < 2) throw parse_error("empty facet", ln);
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!seen.count(tokens[i]))
          throw parse_error("unknown vertex '" + tokens[i] + "'", ln);
      }
      facets.emplace_back(tokens.begin() + 1, tokens.end());
    } else {
      throw parse_error("expected 'vertices:' or 'facet:' line", ln);
    }
  });
  if (!have_vertices) throw parse_error("missing 'vertices:' line");
  return build_complex(vertex_order, facets);
}

inline Complex parse_complex_file(const std::string& path) {
  return parse_complex(detail::read_file(path));
}

// Map files: a 'map:' header line, then one 'a -> b' line per source
// vertex.
inline VertexMap parse_vertex_map(std::string_view text, const Complex& source,
                                  const Complex& target) {
  bool have_header = false;
  std::map<std::string, std::string> assignment;
  detail::for_each_line(text, [&](int ln, std::vector<std::string>& tokens) {
    if (!have_header) {
      if (tokens.size() != 1 || tokens[0] != "map:")
        throw parse_error("expected 'map:' header line", ln);
      have_header = true;
      return;
    }
    if (tokens.size() != 3 || tokens[1] != "->")
      throw parse_error("expected 'vertex -> vertex' line", ln);
    if (!assignment.emplace(tokens[0], tokens[2]).second)
      throw parse_error("vertex '" + tokens[0] + "' assigned twice", ln);
  });
  if (!have_header) throw parse_error("missing 'map:' header line");
  return VertexMap(source, target, assignment);
}

inline VertexMap parse_vertex_map_file(const std::string& path,
                                       const Complex& source,
                                       const Complex& target) {
  return parse_vertex_map(detail::read_file(path), source, target);
}

inline Rational parse_rational(std::string_view s) {
  const std::size_t slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  if (num.empty()) throw parse_error("empty numerator");
  for (char ch : num) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw parse_error("bad rational '" + std::string(s) + "'");
  }
  Rational value{Integer(std::string(num))};
  if (slash != std::string_view::npos) {
    const std::string_view den = s.substr(slash + 1);
    if (den.empty()) throw parse_error("empty denominator");
    for (char ch : den) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw parse_error("bad rational '" + std::string(s) + "'");
    }
    const Integer d{std::string(den)};
    if (d == 0) throw parse_error("zero denominator");
    value /= Rational(d);
  }
  return value;
}

// The zero element is its own kind: it belongs to both the incidence
// algebra and the envelope, so "0" parses without committing to either.
struct ZeroElement {
  friend bool operator==(ZeroElement, ZeroElement) { return true; }
};

using ParsedElement = std::variant<ZeroElement, IncidenceElement, StoryElement>;

// Grammar:
//   element  := '0' | sign? term (sign term)*
//   term     := [rational '*'] basis
//   rational := digits ['/' digits]
//   basis    := '[' verts '|' verts ']' | '<' verts (';' verts)* '>'
//   verts    := name+
// All terms of one element must use the same basis kind.
inline ParsedElement parse_element(std::string_view text, const Complex& c) {
  struct Lexer {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
      while (pos < s.size() &&
             std::isspace(static_cast<unsigned char>(s[pos])))
        ++pos;
    }
    bool done() {
      skip_ws();
      return pos == s.size();
    }
    char peek() {
      skip_ws();
      return pos < s.size() ? s[pos] : '\0';
    }
    void expect(char ch, const char* what) {
      if (peek() != ch)
        throw parse_error(std::string("expected '") + ch + "' " + what);
      ++pos;
    }
    static bool is_structural(char ch) {
      return ch == '[' || ch == ']' || ch == '<' || ch == '>' || ch == '|' ||
             ch == ';' || ch == '*' || ch == '+' || ch == '-';
    }
    std::string name() {
      skip_ws();
      std::size_t start = pos;
      while (pos < s.size() &&
             !std::isspace(static_cast<unsigned char>(s[pos])) &&
             !is_structural(s[pos]))
        ++pos;
      if (pos == start) throw parse_error("expected vertex name");
      return std::string(s.substr(start, pos - start));
    }
    std::vector<std::string> names_until(std::string_view stops) {
      std::vector<std::string> out;
      while (true) {
        const char ch = peek();
        if (stops.find(ch) != std::string_view::npos) break;
        if (ch == '\0') throw parse_error("unterminated basis element");
        out.push_back(name());
      }
      if (out.empty()) throw parse_error("expected vertex list");
      return out;
    }
    std::string rational_token() {
      skip_ws();
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isdigit(static_cast<unsigned char>(s[pos])) ||
              s[pos] == '/'))
        ++pos;
      return std::string(s.substr(start, pos - start));
    }
  };

  Lexer lx{text};
  if (lx.done()) throw parse_error("empty expression");

  std::optional<IncidenceElement> inc;
  std::optional<StoryElement> sto;
  bool first = true;

  while (true) {
    int sign = 1;
    const char lead = lx.peek();
    if (lead == '+' || lead == '-') {
      ++lx.pos;
      sign = lead == '-' ? -1 : 1;
    } else if (!first) {
      throw parse_error("expected '+' or '-' between terms");
    }

    Rational coeff(sign);
    char head = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(head))) {
      const Rational r = parse_rational(lx.rational_token());
      if (lx.done() && first && r == 0) return ZeroElement{};
      lx.expect('*', "after coefficient");
      coeff *= r;
      head = lx.peek();
    }

    if (head == '[') {
      if (sto) throw parse_error("cannot mix pair and story terms");
      ++lx.pos;
      const auto p_names = lx.names_until("|");
      lx.expect('|', "in pair");
      const auto q_names = lx.names_until("]");
      lx.expect(']', "closing pair");
      if (!inc) inc.emplace(c);
      const Simplex p = c.simplex_from_names(p_names);
      const Simplex q = c.simplex_from_names(q_names);
      if (!p.subset_of(q))
        throw parse_error("pair requires the left simplex to be contained "
                          "in the right one");
      inc->add_term(p, q, coeff);
    } else if (head == '<') {
      if (inc) throw parse_error("cannot mix pair and story terms");
      ++lx.pos;
      std::vector<Simplex> statements;
      statements.push_back(c.simplex_from_names(lx.names_until(";>")));
      while (lx.peek() == ';') {
        ++lx.pos;
        statements.push_back(c.simplex_from_names(lx.names_until(";>")));
      }
      lx.expect('>', "closing story");
      for (std::size_t i = 0; i + 1 < statements.size(); ++i) {
        if (statements[i] == statements[i + 1])
          throw parse_error("consecutive statements of a story must differ");
      }
      if (!sto) sto.emplace(c);
      sto->add_term(Story(statements), coeff);
    } else {
      throw parse_error("expected '[' or '<'");
    }

    first = false;
    if (lx.done()) break;
  }

  if (inc) return std::move(*inc);
  if (sto) return std::move(*sto);
  return ZeroElement{};
}

}  // namespace scdga
