#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tensorpoly/errors.hpp"
#include "tensorpoly/graph_io.hpp"
#include "tensorpoly/multigraph.hpp"
#include "tensorpoly/ribbon.hpp"
#include "tensorpoly/stranded.hpp"
#include "tensorpoly/tpoly.hpp"

namespace {

using namespace tensorpoly;

int run_info(const std::string& path, bool as_json) {
  StrandedGraph g = load_graph(path);
  Report report = build_report(g);
  if (as_json)
    std::cout << report_to_json(report).dump(2) << "\n";
  else
    std::cout << report_to_text(report);
  return 0;
}

MultiPoly compute_poly(const StrandedGraph& g, const std::string& which,
                       const std::string& strategy, bool gamma_literal, bool& mismatch,
                       std::string& mismatch_text) {
  auto both = [&](auto subset_fn, auto delcontr_fn) -> MultiPoly {
    if (strategy == "subset") return subset_fn();
    if (strategy == "delcontr") return delcontr_fn();
    MultiPoly a = subset_fn();
    MultiPoly b = delcontr_fn();
    if (a == b) {
      std::cerr << "strategy cross-check: MATCH\n";
      return a;
    }
    mismatch = true;
    mismatch_text = "subset:   " + a.canonical_text() + "\ndelcontr: " + b.canonical_text() +
                    "\ndiff:     " + (a - b).canonical_text();
    return a;
  };

  if (which == "tutte") return tutte(g.underlying_multigraph());
  if (which == "mtutte") return multivariate_tutte(g.underlying_multigraph());
  if (which == "br") return br_polynomial(g.jacket());
  if (which == "mbr") return multivariate_br(g.jacket());
  if (which == "t")
    return both([&] { return t_polynomial(g); }, [&] { return t_polynomial_delcontr(g); });
  if (which == "mt")
    return both([&] { return multivariate_t(g); }, [&] { return multivariate_t_delcontr(g); });
  if (which == "ht")
    return both([&] { return hypervariate_t(g, gamma_literal); },
                [&] { return hypervariate_t_delcontr(g, gamma_literal); });
  throw InputError("unknown polynomial " + which);
}

int run_poly(const std::string& path, const std::string& which, const std::string& strategy,
             const std::vector<std::string>& substitutions, bool gamma_literal, bool as_json) {
  StrandedGraph g = load_graph(path);
  bool mismatch = false;
  std::string mismatch_text;
  MultiPoly p = compute_poly(g, which, strategy, gamma_literal, mismatch, mismatch_text);
  if (mismatch) {
    std::cerr << "strategy cross-check: MISMATCH\n" << mismatch_text << "\n";
    return 1;
  }

  std::map<VarId, MultiPoly> assignments;
  for (const std::string& s : substitutions) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw InputError("--subst expects var=value, got " + s);
    std::string var = s.substr(0, eq), value = s.substr(eq + 1);
    bool numeric = !value.empty();
    for (std::size_t i = value[0] == '-' ? 1 : 0; i < value.size(); ++i)
      numeric = numeric && std::isdigit(static_cast<unsigned char>(value[i]));
    if (value.empty() || (value.size() == 1 && value[0] == '-')) numeric = false;
    assignments[var] = numeric ? MultiPoly(Coeff(value)) : MultiPoly::variable(value);
  }
  if (!assignments.empty()) p = p.substitute(assignments);

  if (as_json)
    std::cout << poly_to_json(p).dump(2) << "\n";
  else
    std::cout << p.canonical_text() << "\n";
  return 0;
}

int run_check(const std::string& path) {
  StrandedGraph g = load_graph(path);
  bool ok = true;

  DelContrReport report = verify_delcontr(g);
  for (const DelContrCheck& check : report.checks) {
    std::cout << "delete/contract on " << check.edge << ": "
              << (check.passed ? "pass" : "FAIL") << "\n";
    if (!check.passed) {
      std::cout << "  whole:  " << check.whole.canonical_text() << "\n"
                << "  pieces: " << check.recombination.canonical_text() << "\n"
                << "  diff:   " << (check.whole - check.recombination).canonical_text() << "\n";
    }
  }
  if (report.checks.empty()) std::cout << "no active regular edge to check\n";
  ok = ok && report.all_passed;

  MultiPoly t = t_polynomial(g);
  MultiPoly br = br_polynomial(g.jacket());
  bool br_ok = t.substitute({{"t", MultiPoly(1)}}) == br;
  std::cout << "t=1 specializes to the ribbon polynomial of the jacket: "
            << (br_ok ? "pass" : "FAIL") << "\n";
  ok = ok && br_ok;

  // The subset sums differ by the classical basis shift: sending y to y-1
  // (with z=t=1) lands on the Tutte polynomial of the underlying graph.
  MultiPoly shifted = t.substitute({{"t", MultiPoly(1)},
                                    {"z", MultiPoly(1)},
                                    {"y", MultiPoly::variable("y") - MultiPoly(1)}});
  bool tutte_ok = shifted == tutte(g.underlying_multigraph());
  std::cout << "z=t=1, y->y-1 specializes to the Tutte polynomial: "
            << (tutte_ok ? "pass" : "FAIL") << "\n";
  ok = ok && tutte_ok;

  std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  return ok ? 0 : 1;
}

int run_gen(int vertices, std::uint64_t seed, int flags) {
  StrandedGraph g = generate_stranded(vertices, seed, flags);
  std::cout << serialize_graph(g).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological polynomials of stranded, ribbon and ordinary graphs"};
  app.require_subcommand(1);

  std::string path, which = "t", strategy = "subset";
  std::vector<std::string> substitutions;
  bool as_json = false, gamma_literal = false;
  int vertices = 2, flag_count = 0;
  std::uint64_t seed = 1;

  CLI::App* info = app.add_subcommand("info", "Topology report for a graph file");
  info->add_option("file", path)->required();
  info->add_flag("--json", as_json, "JSON output");

  CLI::App* poly = app.add_subcommand("poly", "Evaluate a graph polynomial");
  poly->add_option("file", path)->required();
  poly->add_option("--which", which, "tutte|mtutte|br|mbr|t|mt|ht")
      ->check(CLI::IsMember({"tutte", "mtutte", "br", "mbr", "t", "mt", "ht"}));
  poly->add_option("--strategy", strategy, "subset|delcontr|both")
      ->check(CLI::IsMember({"subset", "delcontr", "both"}));
  poly->add_option("--subst", substitutions, "var=value, applied after evaluation");
  poly->add_flag("--gamma-literal", gamma_literal,
                 "hypervariate: total genus sum on every bubble variable");
  poly->add_flag("--json", as_json, "JSON output");

  CLI::App* check = app.add_subcommand("check", "Deletion/contraction and specialization checks");
  check->add_option("file", path)->required();

  CLI::App* gen = app.add_subcommand("gen", "Generate a random valid graph file");
  gen->add_option("--vertices", vertices, "vertex count")->required();
  gen->add_option("--seed", seed, "RNG seed")->required();
  gen->add_option("--flags", flag_count, "number of legs left as flags");

  CLI11_PARSE(app, argc, argv);

  try {
    if (info->parsed()) return run_info(path, as_json);
    if (poly->parsed())
      return run_poly(path, which, strategy, substitutions, gamma_literal, as_json);
    if (check->parsed()) return run_check(path);
    if (gen->parsed()) return run_gen(vertices, seed, flag_count);
  } catch (const tensorpoly::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
