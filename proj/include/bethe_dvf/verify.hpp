#pragma once

#include <filesystem>
#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bae.hpp"
#include "dvf.hpp"
#include "identity.hpp"
#include "json_io.hpp"
#include "relations.hpp"
#include "root_systems.hpp"
#include "tableaux.hpp"

namespace bethe_dvf {

struct VerifyOptions {
  std::uint64_t seed = 42;
  int jobs = 1;
  int trials = 20;
  bool symbolic = false;  // exact expansion for determinants of size <= 3
  std::string golden_dir;
};

using Reports = std::vector<IdentityReport>;

inline CheckOptions check_options(const VerifyOptions& v) {
  CheckOptions o;
  o.seed = v.seed;
  o.jobs = v.jobs;
  o.trials = v.trials;
  return o;
}

inline bool all_passed(const Reports& rs) {
  for (const auto& r : rs)
    if (r.hard_fail && !r.passed) return false;
  return true;
}

inline void append(Reports& to, Reports from) {
  for (auto& r : from) to.push_back(std::move(r));
}

namespace detail {

inline IdentityReport count_report(const std::string& name, std::uint64_t got, std::uint64_t want) {
  IdentityReport r;
  r.name = name;
  r.mode = "exact-count";
  r.samples = 1;
  r.passed = got == want;
  r.max_deviation = std::abs(static_cast<double>(got) - static_cast<double>(want));
  r.details.push_back({{"expected", want}, {"got", got}});
  return r;
}

}  // namespace detail

// ---------------------------------------------------------------- golden

/// Each *.json in dir carries spec, shape, vacuum and the expected terms.
inline Reports suite_golden(const VerifyOptions& v) {
  namespace fs = std::filesystem;
  if (v.golden_dir.empty() || !fs::is_directory(v.golden_dir))
    throw std::runtime_error("golden directory not found: " + v.golden_dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(v.golden_dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  Reports out;
  for (const auto& f : files) {
    json j = read_json_file(f.string());
    BoxContext ctx{AlgebraSpec::parse(j.at("spec").get<std::string>()), j.value("vacuum", true)};
    SymSum built = build_dvf(ctx, parse_shape(j.at("shape").get<std::string>()));
    SymSum want = sum_from_json(j);
    auto r = exact_symbolic("golden " + j.value("name", f.filename().string()), built, want);
    r.details.push_back({{"file", f.filename().string()}, {"terms", built.size()}, {"expected_terms", want.size()}});
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- counts

inline Reports suite_counts(const VerifyOptions&) {
  Reports out;
  AlgebraSpec b02(Family::B, 0, 2);
  const std::uint64_t col[] = {5, 15, 35, 70}, rect[] = {10, 50, 175, 490};
  for (int m = 1; m <= 4; ++m) {
    out.push_back(detail::count_report("N_" + std::to_string(m) + "^(1) B(0|2)",
                                       count_tableaux(b02, SkewDiagram(Partition::rectangle(1, m))), col[m - 1]));
  }
  for (int m = 1; m <= 4; ++m) {
    out.push_back(detail::count_report("N_" + std::to_string(2 * m) + "^(2) B(0|2)",
                                       count_tableaux(b02, SkewDiagram(Partition::rectangle(2, m))), rect[m - 1]));
  }
  out.push_back(detail::count_report("B(2|1) T^1 terms", count_tableaux(AlgebraSpec::parse("B(2|1)"), parse_shape("1")), 7));
  out.push_back(detail::count_report("D(3|1) T^2 terms", count_tableaux(AlgebraSpec::parse("D(3|1)"), parse_shape("1^2")), 31));
  out.push_back(detail::count_report("D(2|2) T^2 terms", count_tableaux(AlgebraSpec::parse("D(2|2)"), parse_shape("1^2")), 33));
  return out;
}

inline Reports suite_dimensions(const VerifyOptions&) {
  const std::vector<std::pair<std::pair<int, int>, long>> table = {
      {{0, 0}, 1}, {{1, 0}, 5}, {{2, 0}, 14}, {{3, 0}, 30}, {{0, 2}, 10}, {{0, 4}, 35}, {{0, 6}, 84}, {{2, 2}, 81}};
  Reports out;
  for (const auto& [b, want] : table) {
    KacDynkinLabel label{Rational(b.first), Rational(b.second)};
    mpz_class d = dimension_b0s(2, label);
    IdentityReport r;
    r.name = "dim V" + label_str(label) + " B(0|2)";
    r.mode = "exact-count";
    r.samples = 1;
    r.passed = d == want;
    r.max_deviation = std::abs(d.get_d() - static_cast<double>(want));
    r.details.push_back({{"expected", want}, {"got", d.get_str()}});
    out.push_back(std::move(r));
  }
  return out;
}

/// B(0|2), a in {1,2}, m in 1..4 (hard-fail: the tabulated data), plus
/// B(0|3) for m <= 2 as quarantined conjecture checks.
inline Reports suite_conjecture(const VerifyOptions&, int max_m = 4) {
  Reports out;
  for (int a = 1; a <= 2; ++a)
    for (int m = 1; m <= max_m; ++m) out.push_back(check_term_count_conjecture(2, a, m));
  for (int a = 1; a <= 3; ++a)
    for (int m = 1; m <= 2; ++m) out.push_back(check_term_count_conjecture(3, a, m));
  return out;
}

// ---------------------------------------------------------------- determinants

/// Straight partitions with 1..max_cells cells and skew mu/lambda with
/// |mu| <= max_cells, lambda a nonempty proper subdiagram.
inline std::vector<SkewDiagram> small_shapes(int max_cells) {
  std::vector<Partition> parts;
  std::function<void(int, int, std::vector<int>&)> rec = [&](int left, int cap, std::vector<int>& cur) {
    if (!cur.empty()) parts.emplace_back(cur);
    for (int p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  rec(max_cells, max_cells, cur);
  std::sort(parts.begin(), parts.end(), [](const Partition& x, const Partition& y) {
    return x.size() != y.size() ? x.size() < y.size() : x.str() < y.str();
  });
  std::vector<SkewDiagram> out;
  for (const auto& mu : parts) out.emplace_back(mu);
  for (const auto& mu : parts)
    for (const auto& la : parts) {
      if (la.size() >= mu.size() || la.length() > mu.length()) continue;
      bool inside = true;
      for (int i = 1; i <= la.length(); ++i) inside &= la[i] <= mu[i];
      if (inside) out.emplace_back(la, mu);
    }
  return out;
}

inline Reports suite_determinant(const VerifyOptions& v, int max_cells = 6) {
  Reports out;
  CheckOptions o = check_options(v);
  auto shapes = small_shapes(max_cells);
  for (const char* sp : {"B(1|1)", "B(2|1)"}) {
    BoxContext ctx{AlgebraSpec::parse(sp), true};
    for (const auto& sh : shapes)
      for (DetVariant var : {DetVariant::column, DetVariant::row}) {
        bool small = det_matrix(ctx.spec, sh, var).size() <= 3;
        out.push_back(check_determinant(ctx, sh, var, o, v.symbolic && small));
      }
  }
  BoxContext d21{AlgebraSpec::parse("D(2|1)"), true};
  out.push_back(check_d_m2(d21, o));
  for (int m = 2; m <= 3; ++m) out.push_back(check_determinant(d21, SkewDiagram(Partition::rectangle(m, 1)), DetVariant::d_row, o));
  return out;
}

// ---------------------------------------------------------------- Hirota, T-system, duality

inline Reports suite_hirota(const VerifyOptions& v, int max_index = 3) {
  Reports out;
  CheckOptions o = check_options(v);
  for (const char* sp : {"B(1|1)", "B(0|2)"}) {
    BoxContext ctx{AlgebraSpec::parse(sp), true};
    for (int a = 1; a <= max_index; ++a)
      for (int m = 1; m <= max_index; ++m) out.push_back(check_hirota(ctx, a, m, o));
  }
  return out;
}

inline Reports suite_vanishing(const VerifyOptions&) {
  BoxContext ctx{AlgebraSpec::parse("B(1|1)"), true};
  return {check_vanishing(ctx, 3, 4)};
}

inline Reports suite_tsystem(const VerifyOptions& v, int depth = 3) {
  Reports out;
  CheckOptions o = check_options(v);
  for (int s = 1; s <= 2; ++s) append(out, check_t_system(s, depth, o));
  return out;
}

/// The full-row product with the 2-bar box at u-2s-2 instead of u+2s-2;
/// passes when that variant is NOT constant.
inline IdentityReport printed_const_shift_control(int s) {
  AlgebraSpec spec(Family::B, 0, s);
  BoxContext ctx{spec, false};
  SymTerm full = SymTerm::constant(1);
  for (int j = 1; j <= s; ++j) full = mul_terms(full, box(ctx, IndexLabel::unbarred(j), Rational(-2 * s + 2 * (j - 1))));
  full = mul_terms(full, box(ctx, IndexLabel::zero(), 0));
  for (int k = 1; k <= s; ++k) {
    int a = s - k + 1;
    Rational shift = a == 2 ? Rational(-2 * s - 2) : Rational(2 * k);
    full = mul_terms(full, box(ctx, IndexLabel::barred(a), shift));
  }
  auto r = exact_symbolic("full row product with printed 2-bar shift is not constant", SymSum(full), SymSum::one());
  r.passed = !r.passed;
  return r;
}

inline Reports suite_duality(const VerifyOptions& v) {
  Reports out;
  CheckOptions o = check_options(v);
  for (int s = 1; s <= 2; ++s) {
    BoxContext ctx{AlgebraSpec(Family::B, 0, s), true};
    for (int a = 1; a <= 2; ++a)
      for (int m = 0; m <= 2 * s + 1; ++m) out.push_back(check_duality(ctx, a, m, o));
    append(out, check_duality_identities(ctx.spec));
  }
  out.push_back(printed_const_shift_control(2));
  return out;
}

// ---------------------------------------------------------------- Bethe ansatz

struct SolvedInstance {
  std::string name;
  BetheSystem sys;
  BetheRootSet roots;
  double residual = 0;
};

inline BetheSystem make_system(const std::string& spec, std::vector<cplx> w, std::vector<int> Na) {
  BetheSystem sys;
  sys.spec = AlgebraSpec::parse(spec);
  sys.N = static_cast<int>(w.size());
  sys.w = std::move(w);
  sys.Na = std::move(Na);
  sys.validate();
  return sys;
}

/// Instances with N <= 3 and N_a <= 2 that admit admissible solutions.
inline std::vector<BetheSystem> standard_systems() {
  return {
      make_system("B(1|1)", {0.0, 0.0}, {2, 1}),
      make_system("B(1|1)", {0.3, -0.2}, {2, 1}),
      make_system("B(1|1)", {1.0, -1.0}, {2, 2}),
      make_system("B(0|1)", {0.0, 0.0}, {1}),
      make_system("B(0|1)", {1.0, -1.0}, {2}),
      make_system("B(0|2)", {0.0, 0.0, 0.0}, {2, 1}),
      make_system("B(0|2)", {0.25, 0.0, -0.4}, {2, 1}),
      make_system("D(2|1)", {0.0, 0.0}, {2, 2, 0}),
      make_system("D(2|1)", {0.0, 0.0}, {2, 0, 2}),
  };
}

inline std::string system_label(const BetheSystem& sys) {
  std::string s = sys.spec.str() + " Na=[";
  for (std::size_t i = 0; i < sys.Na.size(); ++i) s += (i ? "," : "") + std::to_string(sys.Na[i]);
  s += "] w=[";
  for (std::size_t i = 0; i < sys.w.size(); ++i) {
    std::ostringstream os;
    os << sys.w[i].real();
    s += (i ? "," : "") + os.str();
  }
  return s + "]";
}

/// First (lowest seed index) solution of each standard system.
inline std::vector<SolvedInstance> solved_instances(const VerifyOptions& v) {
  std::vector<SolvedInstance> out;
  SolveOptions so;
  so.seed = v.seed;
  for (const auto& sys : standard_systems()) {
    SolveReport rep = solve_bae(sys, so);
    out.push_back({system_label(sys), sys, rep.solutions.front(), rep.residuals.front()});
  }
  return out;
}

inline Reports suite_polefree(const VerifyOptions& v, const std::vector<SolvedInstance>& inst) {
  Reports out;
  for (const auto& in : inst) {
    BoxContext ctx{in.sys.spec, true};
    for (int a = 1; a <= 4; ++a)
      out.push_back(check_pole_free(column_dvf(ctx, a), in.sys, in.roots, "pole-free T^" + std::to_string(a) + " " + in.name));
    for (int m = 1; m <= 4; ++m)
      out.push_back(check_pole_free(row_dvf(ctx, m), in.sys, in.roots, "pole-free T_" + std::to_string(m) + " " + in.name));
    // negative control: the same check at perturbed roots must fail clearly
    BetheRootSet moved = in.roots;
    for (auto& c : moved.roots)
      for (auto& z : c) z += cplx(0.137, 0.071);
    double worst = 0;
    for (int a = 1; a <= 4; ++a)
      worst = std::max(worst, check_pole_free(column_dvf(ctx, a), in.sys, moved).max_deviation);
    IdentityReport ctl;
    ctl.name = "pole-free negative control " + in.name;
    ctl.mode = "numeric";
    ctl.samples = 4;
    ctl.max_deviation = worst;
    ctl.passed = worst > 1e-3;
    ctl.details.push_back({{"perturbation", complex_json(cplx(0.137, 0.071))}, {"threshold", 1e-3}});
    out.push_back(std::move(ctl));
  }
  (void)v;
  return out;
}

inline Reports suite_residues(const std::vector<SolvedInstance>& inst) {
  Reports out;
  for (const auto& in : inst) {
    auto r = check_residue_pairs(in.sys.spec, in.sys, in.roots);
    r.name += " " + in.name;
    r.details.push_back({{"bae_residual", in.residual}});
    out.push_back(std::move(r));
  }
  return out;
}

inline Reports suite_lemmas(const VerifyOptions&) {
  Reports out;
  for (const char* sp : {"B(1|1)", "B(2|1)", "B(3|1)", "B(0|2)", "B(0|3)", "D(2|1)", "D(3|1)", "D(2|2)"}) {
    AlgebraSpec spec = AlgebraSpec::parse(sp);
    out.push_back(check_lemma_products(spec));
    out.push_back(check_chain_factorizations(spec));
  }
  return out;
}

// ---------------------------------------------------------------- series and crossing

inline Reports suite_genseries(const VerifyOptions& v) {
  Reports out;
  CheckOptions o = check_options(v);
  for (const char* sp : {"B(1|1)", "B(0|2)", "D(2|1)"}) {
    BoxContext ctx{AlgebraSpec::parse(sp), true};
    for (SeriesKind kind : {SeriesKind::column, SeriesKind::row})
      for (int n = 0; n <= 4; ++n) {
        SymSum g = generating_series_coeff(ctx, kind, n, 4);
        SymSum d = shift_u(kind == SeriesKind::column ? column_dvf(ctx, n) : row_dvf(ctx, n), Rational(n - 1));
        std::string name = std::string("generating series ") + (kind == SeriesKind::column ? "column" : "row") +
                           " n=" + std::to_string(n) + " " + sp;
        out.push_back(equal_as_rational_functions(g, d, o.trials, o, name));
      }
  }
  return out;
}

inline Reports suite_crossing(const VerifyOptions& v) {
  Reports out;
  CheckOptions o = check_options(v);
  for (const char* sp : {"B(2|1)", "B(0|2)", "D(2|1)"}) {
    BoxContext ctx{AlgebraSpec::parse(sp), true};
    const std::vector<std::pair<std::string, SymSum>> fs = {
        {"T^1", column_dvf(ctx, 1)}, {"T^2", column_dvf(ctx, 2)}, {"T_2", row_dvf(ctx, 2)}};
    for (const auto& [label, x] : fs)
      out.push_back(equal_as_rational_functions(crossing_transform(ctx.spec, x), x, o.trials, o,
                                                "crossing " + label + " " + sp));
  }
  return out;
}

// ---------------------------------------------------------------- dispatch

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"golden",  "determinant", "hirota", "duality",  "tsystem",  "residues",
                                                 "polefree", "lemmas",     "counts", "crossing", "genseries", "all"};
  return names;
}

inline Reports run_suite(const std::string& name, const VerifyOptions& v) {
  Reports out;
  auto want = [&](const char* s) { return name == s || name == "all"; };
  bool known = false;
  for (const auto& n : suite_names()) known |= n == name;
  if (!known) throw ParseError("unknown suite: " + name);
  if (want("golden")) append(out, suite_golden(v));
  if (want("counts")) {
    append(out, suite_counts(v));
    append(out, suite_dimensions(v));
    append(out, suite_conjecture(v));
  }
  if (want("determinant")) append(out, suite_determinant(v));
  if (want("hirota")) {
    append(out, suite_hirota(v));
    append(out, suite_vanishing(v));
  }
  if (want("tsystem")) append(out, suite_tsystem(v));
  if (want("duality")) append(out, suite_duality(v));
  if (want("residues") || want("polefree")) {
    auto inst = solved_instances(v);
    if (want("residues")) append(out, suite_residues(inst));
    if (want("polefree")) append(out, suite_polefree(v, inst));
  }
  if (want("lemmas")) append(out, suite_lemmas(v));
  if (want("genseries")) append(out, suite_genseries(v));
  if (want("crossing")) append(out, suite_crossing(v));
  return out;
}

}  // namespace bethe_dvf
