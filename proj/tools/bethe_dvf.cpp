// bethe_dvf: build, count, export, solve and verify dressed vacuum forms.
//
// Exit codes
//   0  success
//   1  verify: at least one hard-fail check failed
//   2  bad input: parse error, unsupported shape, wrong algebra, bad system
//   3  solve: no admissible solution found
//   4  internal error (sampling exhausted, unexpected exception)

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "bethe_dvf.hpp"

#ifndef BETHE_DVF_GOLDEN_DIR
#define BETHE_DVF_GOLDEN_DIR "data/golden"
#endif

namespace {

using namespace bethe_dvf;

constexpr const char* kShapeHelp =
    "Shape grammar: \"m^a\" is a rows, each of length m (\"1^3\" is a column, \"3^1\" or \"3\" a row); "
    "\"3,2,1\" lists row lengths; \"outer/inner\" is a skew shape, e.g. \"3,1/1\".";

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

struct BuildArgs {
  std::string spec, shape, format = "text", out;
  bool no_vacuum = false, normalized = false;
};

SymSum build_for(const BuildArgs& a, AlgebraSpec& spec, SkewDiagram& shape) {
  spec = AlgebraSpec::parse(a.spec);
  shape = parse_shape(a.shape);
  BoxContext ctx{spec, !a.no_vacuum};
  SymSum x = build_dvf(ctx, shape);
  if (a.normalized) x = normalize_b0s(spec, x, shape);
  return x;
}

int cmd_build(const BuildArgs& a) {
  AlgebraSpec spec;
  SkewDiagram shape;
  SymSum x = build_for(a, spec, shape);
  if (a.format == "latex") {
    emit(to_latex(x), a.out);
  } else if (a.format == "json") {
    json j = to_json(x);
    j["spec"] = spec.str();
    j["shape"] = a.shape;
    j["vacuum"] = !a.no_vacuum;
    j["normalized"] = a.normalized;
    emit(j.dump(1), a.out);
  } else {
    emit(to_text(x), a.out);
  }
  return 0;
}

int cmd_export(const BuildArgs& a) {
  AlgebraSpec spec;
  SkewDiagram shape;
  SymSum x = build_for(a, spec, shape);
  json tabs = json::array();
  for (const auto& t : enumerate_tableaux(spec, shape)) tabs.push_back(to_json(t));
  json j = {{"schema", 1},        {"spec", spec.str()}, {"shape", a.shape},   {"vacuum", !a.no_vacuum},
            {"normalized", a.normalized}, {"tableaux", tabs}, {"dvf", to_json(x)}, {"latex", to_latex(x)}};
  emit(j.dump(1), a.out);
  return 0;
}

int cmd_count(const std::string& spec_text, const std::string& shape_text, bool as_json) {
  AlgebraSpec spec = AlgebraSpec::parse(spec_text);
  SkewDiagram shape = parse_shape(shape_text);
  std::uint64_t n = count_tableaux(spec, shape);
  if (as_json)
    std::cout << json{{"schema", 1}, {"spec", spec.str()}, {"shape", shape_text}, {"count", n}}.dump() << '\n';
  else
    std::cout << n << '\n';
  return 0;
}

struct SolveArgs {
  std::string spec, out;
  int N = 0;
  std::vector<double> w;
  std::vector<int> Na;
  SolveOptions opt;
};

int cmd_solve(SolveArgs a) {
  BetheSystem sys;
  sys.spec = AlgebraSpec::parse(a.spec);
  sys.N = a.N;
  for (double x : a.w) sys.w.emplace_back(x, 0.0);
  sys.Na = a.Na;
  try {
    sys.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  SolveReport rep = solve_bae(sys, a.opt);
  json sols = json::array();
  for (std::size_t i = 0; i < rep.solutions.size(); ++i)
    sols.push_back({{"roots", to_json(rep.solutions[i])}, {"residual", rep.residuals[i]}});
  json j = {{"schema", 1},
            {"system", to_json(sys)},
            {"seed", a.opt.seed},
            {"seeds_tried", rep.seeds_tried},
            {"tolerance", a.opt.tol},
            {"solutions", sols}};
  emit(j.dump(1), a.out);
  return 0;
}

struct VerifyArgs {
  std::string suite = "all", out;
  VerifyOptions v;
};

int cmd_verify(const VerifyArgs& a) {
  Reports rs = run_suite(a.suite, a.v);
  json arr = json::array();
  for (const auto& r : rs) arr.push_back(to_json(r));
  emit(arr.dump(1), a.out);
  int failed = 0;
  for (const auto& r : rs)
    if (!r.passed) {
      std::cerr << (r.hard_fail ? "FAIL " : "conjecture mismatch ") << r.name << '\n';
      failed += r.hard_fail;
    }
  std::cerr << rs.size() << " checks, " << failed << " hard failures\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dressed vacuum forms for B(r|s) and D(r|s): construction, counting, Bethe roots, identity checks"};
  app.require_subcommand(1);
  app.footer(std::string(kShapeHelp) +
             "\nExit codes: 0 ok, 1 hard-fail in verify, 2 bad input or unsupported shape, 3 no BAE solution, "
             "4 internal error.");

  BuildArgs build_args, export_args;
  auto add_build_opts = [](CLI::App* sub, BuildArgs& b) {
    sub->add_option("spec", b.spec, "algebra, e.g. \"B(2|1)\", \"D(3|1)\"")->required();
    sub->add_option("--shape", b.shape, kShapeHelp)->required();
    sub->add_flag("--no-vacuum", b.no_vacuum, "drop the vacuum (phi) parts");
    sub->add_flag("--normalized", b.normalized, "divide by the B(0|s) normalization");
    sub->add_option("-o,--out", b.out, "output file (default stdout)");
  };
  auto* build = app.add_subcommand("build", "construct a DVF");
  add_build_opts(build, build_args);
  build->add_option("--format", build_args.format, "json | latex | text")
      ->check(CLI::IsMember({"json", "latex", "text"}));

  auto* exp = app.add_subcommand("export", "write the DVF with its tableaux as JSON");
  add_build_opts(exp, export_args);

  std::string count_spec, count_shape;
  bool count_json = false;
  auto* count = app.add_subcommand("count", "count admissible tableaux");
  count->add_option("spec", count_spec, "algebra")->required();
  count->add_option("--shape", count_shape, kShapeHelp)->required();
  count->add_flag("--json", count_json, "JSON output");

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "solve the Bethe ansatz equations by multi-start Newton");
  solve->add_option("spec", solve_args.spec, "algebra")->required();
  solve->add_option("--N", solve_args.N, "number of sites")->required();
  solve->add_option("--w", solve_args.w, "inhomogeneities, comma separated")->delimiter(',');
  solve->add_option("--Na", solve_args.Na, "root counts per color, comma separated")->delimiter(',')->required();
  solve->add_option("--seeds", solve_args.opt.seeds, "number of random starts");
  solve->add_option("--seed", solve_args.opt.seed, "RNG seed");
  solve->add_option("--tol", solve_args.opt.tol, "residual tolerance");
  solve->add_option("--radius", solve_args.opt.radius, "start disk radius");
  solve->add_option("-o,--out", solve_args.out, "output file (default stdout)");

  VerifyArgs verify_args;
  verify_args.v.golden_dir = BETHE_DVF_GOLDEN_DIR;
  verify_args.v.jobs = default_jobs();
  auto* verify = app.add_subcommand("verify", "run an identity suite and print a JSON array of reports");
  verify->add_option("suite", verify_args.suite, "suite name")->check(CLI::IsMember(suite_names()));
  verify->add_option("--seed", verify_args.v.seed, "sampling seed");
  verify->add_option("--jobs", verify_args.v.jobs, "worker threads (default BETHE_DVF_JOBS or 1)");
  verify->add_option("--trials", verify_args.v.trials, "sample points per randomized check");
  verify->add_flag("--symbolic", verify_args.v.symbolic, "exact expansion for determinants of size <= 3");
  verify->add_option("--golden-dir", verify_args.v.golden_dir, "directory of golden expansions");
  verify->add_option("-o,--out", verify_args.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*build) return cmd_build(build_args);
    if (*exp) return cmd_export(export_args);
    if (*count) return cmd_count(count_spec, count_shape, count_json);
    if (*solve) return cmd_solve(solve_args);
    if (*verify) return cmd_verify(verify_args);
  } catch (const NoSolutionFound& e) {
    std::cerr << "no solution: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedShape& e) {
    std::cerr << "unsupported shape: " << e.what() << '\n';
    return 2;
  } catch (const WrongAlgebra& e) {
    std::cerr << "wrong algebra: " << e.what() << '\n';
    return 2;
  } catch (const OddSpinLabel& e) {
    std::cerr << "odd label: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
