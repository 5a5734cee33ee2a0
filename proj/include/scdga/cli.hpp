#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "scdga/betti.hpp"
#include "scdga/format.hpp"
#include "scdga/parse.hpp"
#include "scdga/verify.hpp"

namespace scdga {

// Command-line driver, separated from main() so tests can call it
// in-process. Exit codes: 0 success (and verified), 1 a verification ran
// and failed, 2 usage or input errors.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"exact differential calculus on incidence algebras of finite "
               "simplicial complexes"};
  app.name("scdga");
  app.require_subcommand(1);

  std::string file;
  std::string map_source_file;
  std::string map_target_file;
  std::string map_file;
  std::vector<std::string> prop_files;
  std::string expr;
  int degree = 0;
  int max_degree = 3;
  std::uint64_t seed = 0;
  bool json = false;

  auto* validate =
      app.add_subcommand("validate", "parse a complex file and summarize it");
  validate->add_option("complex", file, "complex file")->required();
  validate->add_flag("--json", json, "JSON output");

  auto* basis = app.add_subcommand(
      "basis", "list the basis pairs of one degree of the incidence algebra");
  basis->add_option("complex", file, "complex file")->required();
  basis->add_option("--degree", degree, "degree of the component")->required();
  basis->add_flag("--json", json, "JSON output");

  auto* diff = app.add_subcommand(
      "diff", "apply the differential to an incidence or story expression");
  diff->add_option("complex", file, "complex file")->required();
  diff->add_option("--expr", expr, "element expression")->required();
  diff->add_flag("--json", json, "JSON output");

  auto* sigma_cmd = app.add_subcommand(
      "sigma", "project a story expression onto the incidence algebra");
  sigma_cmd->add_option("complex", file, "complex file")->required();
  sigma_cmd->add_option("--expr", expr, "story expression")->required();
  sigma_cmd->add_flag("--json", json, "JSON output");

  auto* ideal_check = app.add_subcommand(
      "ideal-check", "test whether a story expression lies in the ideal");
  ideal_check->add_option("complex", file, "complex file")->required();
  ideal_check->add_option("--expr", expr, "story expression")->required();
  ideal_check->add_flag("--json", json, "JSON output");

  auto* ideal_verify = app.add_subcommand(
      "ideal-verify",
      "verify the ideal is a differential ideal up to a degree");
  ideal_verify->add_option("complex", file, "complex file")->required();
  ideal_verify->add_option("--max-degree", max_degree, "degree bound")
      ->capture_default_str();
  ideal_verify->add_option("--seed", seed, "random seed")
      ->capture_default_str();
  ideal_verify->add_flag("--json", json, "JSON output");

  auto* betti_cmd =
      app.add_subcommand("betti", "rational Betti numbers of a complex");
  betti_cmd->add_option("complex", file, "complex file")->required();
  betti_cmd->add_flag("--json", json, "JSON output");

  auto* map_check = app.add_subcommand(
      "map-check", "audit a vertex map between two complexes");
  map_check->add_option("source", map_source_file, "source complex file")
      ->required();
  map_check->add_option("target", map_target_file, "target complex file")
      ->required();
  map_check->add_option("map", map_file, "map file")->required();
  map_check->add_option("--max-degree", max_degree, "degree bound")
      ->default_val(2);
  map_check->add_flag("--json", json, "JSON output");

  auto* props = app.add_subcommand(
      "props", "run the property suite against one or more complexes");
  props->add_option("complex", prop_files, "complex files")->required();
  props->add_option("--max-degree", max_degree, "degree bound")
      ->capture_default_str();
  props->add_option("--seed", seed, "random seed")->capture_default_str();
  props->add_flag("--json", json, "JSON output");

  try {
    std::vector<const char*> argv;
    argv.push_back("scdga");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) {
      const Complex c = parse_complex_file(file);
      if (json) {
        out << complex_summary_json(c).dump() << "\n";
      } else {
        out << "valid\n";
        out << "vertices: " << c.vertex_count() << "\n";
        out << "simplices: " << c.simplex_count() << "\n";
        out << "dimension: " << c.top_dimension() << "\n";
        out << "by dimension:";
        for (int n = 0; n <= c.top_dimension(); ++n)
          out << " " << c.skeleton(n).size();
        out << "\n";
      }
      return 0;
    }

    if (basis->parsed()) {
      const Complex c = parse_complex_file(file);
      const auto pairs = basis_pairs(c, degree);
      if (json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const PairKey& k : pairs) {
          arr.push_back({{"p", vertex_names(c, k.p)},
                         {"q", vertex_names(c, k.q)}});
        }
        out << nlohmann::json{{"degree", degree},
                              {"count", pairs.size()},
                              {"pairs", arr}}
                   .dump()
            << "\n";
      } else {
        for (const PairKey& k : pairs) out << pair_str(c, k.p, k.q) << "\n";
        out << "total: " << pairs.size() << "\n";
      }
      return 0;
    }

    if (diff->parsed()) {
      const Complex c = parse_complex_file(file);
      const ParsedElement e = parse_element(expr, c);
      if (std::holds_alternative<ZeroElement>(e)) {
        out << (json ? "[]" : "0") << "\n";
      } else if (const auto* x = std::get_if<IncidenceElement>(&e)) {
        const IncidenceElement r = differential(*x);
        out << (json ? to_json(r).dump() : to_string(r)) << "\n";
      } else {
        const StoryElement r = kahler_d(std::get<StoryElement>(e));
        out << (json ? to_json(r).dump() : to_string(r)) << "\n";
      }
      return 0;
    }

    if (sigma_cmd->parsed()) {
      const Complex c = parse_complex_file(file);
      const ParsedElement e = parse_element(expr, c);
      if (std::holds_alternative<IncidenceElement>(e))
        throw error("sigma expects a story expression");
      IncidenceElement r(c);
      if (const auto* s = std::get_if<StoryElement>(&e)) r = sigma(*s);
      out << (json ? to_json(r).dump() : to_string(r)) << "\n";
      return 0;
    }

    if (ideal_check->parsed()) {
      const Complex c = parse_complex_file(file);
      const ParsedElement e = parse_element(expr, c);
      if (std::holds_alternative<IncidenceElement>(e))
        throw error("ideal-check expects a story expression");
      bool inside = true;
      if (const auto* s = std::get_if<StoryElement>(&e)) inside = in_ideal(*s);
      if (json)
        out << nlohmann::json{{"in_ideal", inside}}.dump() << "\n";
      else
        out << "in ideal: " << (inside ? "yes" : "no") << "\n";
      return inside ? 0 : 1;
    }

    if (ideal_verify->parsed()) {
      const Complex c = parse_complex_file(file);
      const IdealVerification rep =
          verify_differential_ideal(c, max_degree, seed);
      if (json) {
        out << to_json(rep).dump() << "\n";
      } else {
        out << "max degree: " << rep.max_degree << "\n";
        out << "generators checked: " << rep.generators_checked << "\n";
        out << "products checked: " << rep.products_checked << "\n";
        for (const auto& fmsg : rep.failures) out << "  - " << fmsg << "\n";
        out << "result: " << (rep.passed() ? "PASS" : "FAIL") << "\n";
      }
      return rep.passed() ? 0 : 1;
    }

    if (betti_cmd->parsed()) {
      const Complex c = parse_complex_file(file);
      const auto b = betti(c);
      if (json) {
        out << betti_str(b) << "\n";
      } else {
        for (std::size_t n = 0; n < b.size(); ++n)
          out << "b" << n << " = " << b[n] << "\n";
      }
      return 0;
    }

    if (map_check->parsed()) {
      const Complex src = parse_complex_file(map_source_file);
      const Complex tgt = parse_complex_file(map_target_file);
      const VertexMap m = parse_vertex_map_file(map_file, src, tgt);
      const DifferentiabilityReport rep = check_differentiable(m, max_degree);
      if (json) {
        out << to_json(rep).dump() << "\n";
      } else {
        auto tri = [](const std::optional<bool>& v) {
          return !v ? "n/a" : (*v ? "yes" : "no");
        };
        const std::string scope =
            " (degree <= " + std::to_string(rep.max_degree) + ")";
        out << "simplicial: " << (rep.simplicial ? "yes" : "no") << "\n";
        out << "multiplicative" << scope << ": " << tri(rep.multiplicative)
            << "\n";
        out << "commutes with differential" << scope << ": "
            << tri(rep.commutes) << "\n";
        out << "ideal preserved" << scope << ": "
            << (rep.ideal_preserved ? "yes" : "no") << "\n";
        for (const auto& fmsg : rep.failures) out << "  - " << fmsg << "\n";
        if (rep.all_verified()) {
          out << "result: PASS\n";
        } else {
          std::string why;
          auto add = [&](const std::string& s) {
            why += (why.empty() ? "" : ", ") + s;
          };
          if (!rep.simplicial) add("not simplicial");
          if (rep.multiplicative && !*rep.multiplicative)
            add("not multiplicative");
          if (rep.commutes && !*rep.commutes)
            add("does not commute with differential");
          if (!rep.ideal_preserved) add("ideal not preserved");
          out << "result: FAIL (" << why << ")\n";
        }
      }
      return rep.all_verified() ? 0 : 1;
    }

    if (props->parsed()) {
      PropertyOptions opts;
      opts.max_degree = max_degree;
      opts.seed = seed;
      bool ok = true;
      nlohmann::json report = nlohmann::json::array();
      for (const auto& path : prop_files) {
        const Complex c = parse_complex_file(path);
        const auto results = run_property_suite(c, opts);
        ok = ok && all_passed(results);
        if (json) {
          nlohmann::json entries = nlohmann::json::array();
          for (const auto& r : results) {
            entries.push_back({{"name", r.name},
                               {"passed", r.passed},
                               {"detail", r.detail}});
          }
          report.push_back({{"complex", path}, {"properties", entries}});
        } else {
          out << path << ":\n";
          for (const auto& r : results) {
            if (r.passed)
              out << "  ok   " << r.name << "\n";
            else
              out << "  FAIL " << r.name << ": " << r.detail << "\n";
          }
        }
      }
      if (json)
        out << report.dump() << "\n";
      else
        out << "result: " << (ok ? "PASS" : "FAIL") << "\n";
      return ok ? 0 : 1;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  err << "error: no subcommand\n";
  return 2;
}

}  // namespace scdga
