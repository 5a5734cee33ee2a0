#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "scdga/cli.hpp"
#include "scdga/scdga.hpp"

using namespace scdga;

namespace {

std::string data_path(const std::string& name) {
  return std::string(SCDGA_SOURCE_DIR) + "/data/" + name;
}

int error_line(const std::function<void()>& f) {
  try {
    f();
  } catch (const parse_error& e) {
    return e.line;
  }
  return -1;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("complex files parse with comments and blank lines", "[parse]") {
  const Complex c = parse_complex(
      "# a triangle\n"
      "vertices: 1 2 3   # enumeration order\n"
      "\n"
      "facet: 1 2 3\n");
  REQUIRE(c == corpus::triangle());
  REQUIRE(parse_complex("vertices: 1 2\n") == corpus::two_points());
}

TEST_CASE("complex parse errors carry line numbers", "[parse]") {
  REQUIRE(error_line([] { parse_complex(""); }) == 0);
  REQUIRE(error_line([] {
            parse_complex("vertices: 1 2\nvertices: 3\n");
          }) == 2);
  REQUIRE(error_line([] { parse_complex("facet: 1\nvertices: 1\n"); }) == 1);
  REQUIRE(error_line([] { parse_complex("vertices: 1 1\n"); }) == 1);
  REQUIRE(error_line([] { parse_complex("vertices:\n"); }) == 1);
  REQUIRE(error_line([] {
            parse_complex("vertices: 1 2\nfacet:\n");
          }) == 2);
  REQUIRE(error_line([] {
            parse_complex("vertices: 1 2\nfacet: 1 3\n");
          }) == 2);
  REQUIRE(error_line([] {
            parse_complex("vertices: 1 2\nfacet: 1 2\nbogus\n");
          }) == 3);
  REQUIRE_THROWS_WITH(parse_complex("vertices: 1 2\nvertices: 3\n"),
                      "line 2: duplicate 'vertices:' line");
}

TEST_CASE("data files stay in sync with the built-in corpus", "[parse]") {
  for (const auto& [name, c] : corpus::named()) {
    INFO(name);
    REQUIRE(parse_complex_file(data_path(name + ".cplx")) == c);
  }
  REQUIRE_THROWS_WITH(parse_complex_file(data_path("missing.cplx")),
                      Catch::Matchers::ContainsSubstring("cannot open file"));
}

TEST_CASE("map files parse and validate", "[parse]") {
  const VertexMap m = parse_vertex_map_file(data_path("maps/good.map"),
                                            corpus::path_primed(),
                                            corpus::path());
  REQUIRE(m == corpus::collapse_pi1());
  const VertexMap bad = parse_vertex_map_file(data_path("maps/bad.map"),
                                              corpus::path_primed(),
                                              corpus::path());
  REQUIRE(bad == corpus::diagonal_pi2());
  REQUIRE_FALSE(is_simplicial(bad));
}

TEST_CASE("map parse errors", "[parse]") {
  const Complex s = corpus::path_primed();
  const Complex t = corpus::path();
  REQUIRE(error_line([&] { parse_vertex_map("", s, t); }) == 0);
  REQUIRE(error_line([&] { parse_vertex_map("1' -> 1\n", s, t); }) == 1);
  REQUIRE(error_line([&] { parse_vertex_map("map:\n1' 1\n", s, t); }) == 2);
  REQUIRE(error_line([&] {
            parse_vertex_map("map:\n1' -> 1\n1' -> 2\n", s, t);
          }) == 3);
  // assignment errors come from the map itself, without line numbers
  REQUIRE_THROWS_WITH(parse_vertex_map("map:\n1' -> 1\n", s, t),
                      Catch::Matchers::ContainsSubstring("not assigned"));
}

TEST_CASE("rational literals", "[parse]") {
  REQUIRE(parse_rational("3") == 3);
  REQUIRE(parse_rational("3/2") == Rational(3) / 2);
  REQUIRE(parse_rational("10/4") == Rational(5) / 2);
  REQUIRE(parse_rational("0") == 0);
  REQUIRE(parse_rational("0/7") == 0);
  REQUIRE_THROWS_AS(parse_rational(""), parse_error);
  REQUIRE_THROWS_AS(parse_rational("/2"), parse_error);
  REQUIRE_THROWS_AS(parse_rational("3/"), parse_error);
  REQUIRE_THROWS_AS(parse_rational("x"), parse_error);
  REQUIRE_THROWS_AS(parse_rational("-3"), parse_error);
  REQUIRE_THROWS_WITH(parse_rational("3/0"), "zero denominator");
}

TEST_CASE("element expressions over the triangle", "[parse]") {
  const Complex c = corpus::triangle();
  const auto one_pair = parse_element("[1 | 1 2]", c);
  REQUIRE(std::holds_alternative<IncidenceElement>(one_pair));
  const auto& x = std::get<IncidenceElement>(one_pair);
  REQUIRE(x.coeff(c.simplex_from_names({"1"}),
                  c.simplex_from_names({"1", "2"})) == 1);

  const auto combo =
      std::get<IncidenceElement>(parse_element("3/2*[1|1 2]-[2|1 2 3]", c));
  REQUIRE(combo.coeff(c.simplex_from_names({"1"}),
                      c.simplex_from_names({"1", "2"})) == Rational(3) / 2);
  REQUIRE(combo.coeff(c.simplex_from_names({"2"}),
                      c.simplex_from_names({"1", "2", "3"})) == -1);

  const auto story =
      std::get<StoryElement>(parse_element("-<1 ; 1 2 ; 1 2 3>", c));
  REQUIRE(story.coeff(Story{c.simplex_from_names({"1"}),
                            c.simplex_from_names({"1", "2"}),
                            c.simplex_from_names({"1", "2", "3"})}) == -1);

  REQUIRE(std::holds_alternative<ZeroElement>(parse_element("0", c)));
  REQUIRE(std::holds_alternative<ZeroElement>(parse_element(" -0 ", c)));
  // repeated terms accumulate, cancellation prunes
  const auto gone = parse_element("[1 | 1 2] - [1 | 1 2]", c);
  REQUIRE(std::get<IncidenceElement>(gone).is_zero());
}

TEST_CASE("element parse errors", "[parse]") {
  const Complex c = corpus::triangle();
  REQUIRE_THROWS_WITH(parse_element("", c), "empty expression");
  REQUIRE_THROWS_WITH(parse_element("[1 | 1 2] + <1>", c),
                      "cannot mix pair and story terms");
  REQUIRE_THROWS_WITH(parse_element("<1> + [1 | 1 2]", c),
                      "cannot mix pair and story terms");
  REQUIRE_THROWS_WITH(parse_element("[1 | 1 2", c),
                      "unterminated basis element");
  REQUIRE_THROWS_WITH(parse_element("[2 | 1 3]", c),
                      Catch::Matchers::ContainsSubstring(
                          "left simplex to be contained"));
  REQUIRE_THROWS_WITH(parse_element("<1 ; 1>", c),
                      "consecutive statements of a story must differ");
  REQUIRE_THROWS_WITH(parse_element("3 [1 | 1]", c),
                      Catch::Matchers::ContainsSubstring("expected '*'"));
  REQUIRE_THROWS_WITH(parse_element("3/0 * [1 | 1]", c), "zero denominator");
  REQUIRE_THROWS_WITH(parse_element("[ | 1 2]", c), "expected vertex list");
  REQUIRE_THROWS_WITH(parse_element("[1 | 1 4]", c),
                      Catch::Matchers::ContainsSubstring("unknown vertex"));
  REQUIRE_THROWS_WITH(parse_element("[1 | 1 2] [2 | 2]", c),
                      "expected '+' or '-' between terms");
  REQUIRE_THROWS_AS(parse_element("1 2", c), parse_error);
}

TEST_CASE("golden expressions round-trip through the printer", "[parse]") {
  std::map<std::string, Complex> by_name;
  for (const auto& [name, c] : corpus::named()) by_name.emplace(name, c);

  std::ifstream in(std::string(SCDGA_SOURCE_DIR) +
                   "/tests/golden/expressions.txt");
  REQUIRE(in.is_open());
  std::string line;
  int checked = 0;
  auto render = [](const ParsedElement& e) {
    if (std::holds_alternative<ZeroElement>(e)) return std::string("0");
    if (const auto* x = std::get_if<IncidenceElement>(&e))
      return to_string(*x);
    return to_string(std::get<StoryElement>(e));
  };
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::size_t sep = line.find("::");
    if (sep == std::string::npos) continue;
    const auto tokens = detail::split_ws(line.substr(0, sep));
    REQUIRE(tokens.size() == 1);
    const std::string expr = line.substr(sep + 2);
    INFO(tokens[0] << " :: " << expr);
    const Complex& c = by_name.at(tokens[0]);

    const ParsedElement parsed = parse_element(expr, c);
    const std::string canonical = render(parsed);
    const ParsedElement reparsed = parse_element(canonical, c);
    REQUIRE(reparsed == parsed);
    REQUIRE(render(reparsed) == canonical);
    ++checked;
  }
  REQUIRE(checked >= 39);
}

TEST_CASE("canonical printing examples", "[format]") {
  const Complex c = corpus::triangle();
  const auto x = std::get<IncidenceElement>(
      parse_element("3/2 * [1 2 | 1 2 3] - [1 | 1 2]", c));
  REQUIRE(to_string(x) == "-[1 | 1 2] + 3/2 * [1 2 | 1 2 3]");
  REQUIRE(to_string(IncidenceElement(c)) == "0");
  const auto w = std::get<StoryElement>(
      parse_element("10/4 * <1 ; 1 2> - <2 ; 1 2>", c));
  REQUIRE(to_string(w) == "5/2 * <1 ; 1 2> - <2 ; 1 2>");
  REQUIRE(betti_str({1, 1}) == "[1, 1]");
  REQUIRE(betti_str({2}) == "[2]");
}

TEST_CASE("cli validate", "[cli]") {
  const auto r = cli({"validate", data_path("triangle.cplx")});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "valid\nvertices: 3\nsimplices: 7\ndimension: 2\n"
                   "by dimension: 3 3 1\n");
  const auto j = cli({"validate", data_path("triangle.cplx"), "--json"});
  REQUIRE(j.code == 0);
  const auto parsed = nlohmann::json::parse(j.out);
  REQUIRE(parsed["vertices"] == 3);
  REQUIRE(parsed["simplices"] == 7);
  REQUIRE(parsed["dimension"] == 2);
  REQUIRE(parsed["count_by_dimension"] == nlohmann::json({3, 3, 1}));

  REQUIRE(cli({"validate", data_path("missing.cplx")}).code == 2);
  const auto bad = cli({"validate", data_path("maps/good.map")});
  REQUIRE(bad.code == 2);
  REQUIRE(bad.err.find("error: ") == 0);
}

TEST_CASE("cli basis", "[cli]") {
  const auto r = cli({"basis", data_path("triangle.cplx"), "--degree", "1"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("[1 | 1 2]\n") != std::string::npos);
  REQUIRE(r.out.find("total: 9\n") != std::string::npos);
  REQUIRE(cli({"basis", data_path("triangle.cplx"), "--degree=-1"}).code == 2);
  REQUIRE(cli({"basis", data_path("triangle.cplx")}).code == 2);
}

TEST_CASE("cli diff", "[cli]") {
  const auto r = cli({"diff", data_path("triangle.cplx"), "--expr",
                      "[1 | 1 2]"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "[1 | 1 2 3]\n");
  const auto z = cli({"diff", data_path("triangle.cplx"), "--expr", "0"});
  REQUIRE(z.code == 0);
  REQUIRE(z.out == "0\n");
  const auto s = cli({"diff", data_path("edge.cplx"), "--expr", "<1>"});
  REQUIRE(s.code == 0);
  REQUIRE(s.out == "-<1 ; 1 2> - <1 ; 2> + <1 2 ; 1> + <2 ; 1>\n");
  // the envelope differential needs a homogeneous story element
  const auto mixed = cli({"diff", data_path("edge.cplx"), "--expr",
                          "<1> + <1 ; 1 2>"});
  REQUIRE(mixed.code == 2);
  REQUIRE(mixed.err.find("homogeneous") != std::string::npos);
}

TEST_CASE("cli sigma", "[cli]") {
  const auto r = cli({"sigma", data_path("triangle.cplx"), "--expr",
                      "<1 ; 1 2>"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "-[1 | 1 2]\n");
  const auto z = cli({"sigma", data_path("triangle.cplx"), "--expr",
                      "<1 ; 1 2 3>"});
  REQUIRE(z.code == 0);
  REQUIRE(z.out == "0\n");
  const auto bad = cli({"sigma", data_path("triangle.cplx"), "--expr",
                        "[1 | 1 2]"});
  REQUIRE(bad.code == 2);
  REQUIRE(bad.err.find("sigma expects a story expression") !=
          std::string::npos);
}

TEST_CASE("cli ideal-check", "[cli]") {
  const auto inside =
      cli({"ideal-check", data_path("triangle.cplx"), "--expr",
           "<1 ; 1 2 ; 1 2 3> + <1 ; 1 3 ; 1 2 3>"});
  REQUIRE(inside.code == 0);
  REQUIRE(inside.out == "in ideal: yes\n");
  const auto outside = cli({"ideal-check", data_path("triangle.cplx"),
                            "--expr", "<1 ; 1 2>"});
  REQUIRE(outside.code == 1);
  REQUIRE(outside.out == "in ideal: no\n");
  REQUIRE(cli({"ideal-check", data_path("triangle.cplx"), "--expr",
               "[1 | 1 2]"})
              .code == 2);
}

TEST_CASE("cli ideal-verify", "[cli]") {
  const auto r = cli({"ideal-verify", data_path("edge.cplx"),
                      "--max-degree", "2"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("result: PASS\n") != std::string::npos);
  REQUIRE(r.out.find("generators checked:") != std::string::npos);
}

TEST_CASE("cli betti", "[cli]") {
  const auto r = cli({"betti", data_path("hollow-triangle.cplx")});
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "b0 = 1\nb1 = 1\n");
  const auto j = cli({"betti", data_path("hollow-triangle.cplx"), "--json"});
  REQUIRE(j.code == 0);
  REQUIRE(j.out == "[1, 1]\n");
}

TEST_CASE("cli map-check", "[cli]") {
  const auto good = cli({"map-check", data_path("path2.cplx"),
                         data_path("path.cplx"), data_path("maps/good.map")});
  REQUIRE(good.code == 0);
  REQUIRE(good.out.find("simplicial: yes\n") != std::string::npos);
  REQUIRE(good.out.find("result: PASS\n") != std::string::npos);

  const auto bad = cli({"map-check", data_path("path2.cplx"),
                        data_path("path.cplx"), data_path("maps/bad.map")});
  REQUIRE(bad.code == 1);
  REQUIRE(bad.out.find("simplicial: no\n") != std::string::npos);
  REQUIRE(bad.out.find("not simplicial") != std::string::npos);
  REQUIRE(bad.out.find("ideal not preserved") != std::string::npos);

  REQUIRE(cli({"map-check", data_path("path2.cplx"), data_path("path.cplx"),
               data_path("maps/missing.map")})
              .code == 2);
}

TEST_CASE("cli props", "[cli]") {
  const auto r = cli({"props", data_path("edge.cplx"), "--max-degree", "2",
                      "--seed", "3"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("result: PASS\n") != std::string::npos);
  REQUIRE(r.out.find("  ok   ") != std::string::npos);
  REQUIRE(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("cli usage errors", "[cli]") {
  REQUIRE(cli({}).code == 2);
  REQUIRE(cli({"bogus"}).code == 2);
  REQUIRE(cli({"validate"}).code == 2);
  const auto help = cli({"--help"});
  REQUIRE(help.code == 0);
  REQUIRE(help.out.find("scdga") != std::string::npos);
  REQUIRE(help.out.find("basis") != std::string::npos);
}
