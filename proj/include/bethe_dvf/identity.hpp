#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "parallel.hpp"
#include "symbolic.hpp"

namespace bethe_dvf {

/// Outcome of one verification. mode is "exact-symbolic", "randomized-exact"
/// or "numeric".
struct IdentityReport {
  std::string name;
  std::string mode;
  int samples = 0;
  double max_deviation = 0.0;
  bool passed = false;
  bool hard_fail = true;  // false for conjecture checks outside the fixed data
  std::uint64_t seed = 0;
  nlohmann::json details = nlohmann::json::array();
};

inline nlohmann::json to_json(const IdentityReport& r) {
  return {{"schema", 1},           {"name", r.name},     {"mode", r.mode},
          {"samples", r.samples},  {"max_deviation", r.max_deviation},
          {"passed", r.passed},    {"hard_fail", r.hard_fail},
          {"seed", r.seed},        {"details", r.details}};
}

struct SampleConfig {
  int roots_per_color = 2;
  int sites = 2;
  std::int64_t bound = 10000;  // numerators in [-bound, bound], denominators in [1, bound]
  int retry_cap = 100;
};

struct CheckOptions {
  std::uint64_t seed = 42;
  int trials = 20;
  int jobs = 1;
  SampleConfig sampling;
};

inline mpq_class random_rational(std::mt19937_64& rng, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> num(-bound, bound), den(1, bound);
  std::int64_t n = num(rng);
  std::int64_t d = den(rng);
  mpq_class q(static_cast<long>(n), static_cast<unsigned long>(d));
  q.canonicalize();
  return q;
}

/// Random point with roots for colors 1..rank.
inline ExactAssignment random_exact_assignment(int rank, const SampleConfig& cfg, std::mt19937_64& rng) {
  ExactAssignment a;
  a.u = random_rational(rng, cfg.bound);
  for (int c = 1; c <= rank; ++c) {
    auto& v = a.roots[c];
    for (int j = 0; j < cfg.roots_per_color; ++j) v.push_back(random_rational(rng, cfg.bound));
  }
  for (int j = 0; j < cfg.sites; ++j) a.inhoms.push_back(random_rational(rng, cfg.bound));
  return a;
}

inline nlohmann::json point_json(const ExactAssignment& a) {
  nlohmann::json roots = nlohmann::json::object();
  for (const auto& [c, v] : a.roots) {
    auto arr = nlohmann::json::array();
    for (const auto& x : v) arr.push_back(x.get_str());
    roots[std::to_string(c)] = arr;
  }
  auto w = nlohmann::json::array();
  for (const auto& x : a.inhoms) w.push_back(x.get_str());
  return {{"u", a.u.get_str()}, {"roots", roots}, {"w", w}};
}

/// Deviation function: returns lhs - rhs at a point (may throw PoleHit).
using ExactCheck = std::function<mpq_class(const ExactAssignment&)>;

/// Evaluates `f` at opts.trials random exact points; passes iff every value
/// is exactly zero. Points that hit a pole are redrawn up to the retry cap.
inline IdentityReport randomized_identity(const std::string& name, int rank, const ExactCheck& f,
                                          const CheckOptions& opts) {
  std::size_t n = static_cast<std::size_t>(std::max(1, opts.trials));
  std::vector<mpq_class> dev(n);
  std::vector<nlohmann::json> pts(n);
  parallel_for(n, opts.jobs, [&](std::size_t i) {
    std::seed_seq sq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                     static_cast<std::uint32_t>(i), 0x5eedu};
    std::mt19937_64 rng(sq);
    for (int attempt = 1; attempt <= opts.sampling.retry_cap; ++attempt) {
      ExactAssignment a = random_exact_assignment(rank, opts.sampling, rng);
      try {
        dev[i] = f(a);
      } catch (const PoleHit&) {
        continue;
      }
      pts[i] = point_json(a);
      pts[i]["attempts"] = attempt;
      pts[i]["deviation"] = dev[i].get_str();
      return;
    }
    throw SamplingExhausted(name + ": no pole-free sample after " + std::to_string(opts.sampling.retry_cap) +
                            " draws");
  });
  IdentityReport r;
  r.name = name;
  r.mode = "randomized-exact";
  r.samples = static_cast<int>(n);
  r.seed = opts.seed;
  r.passed = true;
  for (std::size_t i = 0; i < n; ++i) {
    double d = std::abs(dev[i].get_d());
    if (sgn(dev[i]) != 0) {
      r.passed = false;
      if (d == 0.0) d = 1e-300;
    }
    r.max_deviation = std::max(r.max_deviation, d);
    r.details.push_back(pts[i]);
  }
  return r;
}

inline IdentityReport equal_as_rational_functions(const SymSum& a, const SymSum& b, int trials,
                                                  const CheckOptions& base = {}, std::string name = "equal") {
  CheckOptions opts = base;
  opts.trials = trials;
  SymSum diff = a - b;
  int rank = std::max(max_color(a), max_color(b));
  return randomized_identity(
      name, rank, [&](const ExactAssignment& p) -> mpq_class { return evaluate(diff, p); }, opts);
}

/// Structural comparison for identities that hold term by term.
inline IdentityReport exact_symbolic(const std::string& name, const SymSum& a, const SymSum& b) {
  IdentityReport r;
  r.name = name;
  r.mode = "exact-symbolic";
  SymSum d = canonical(a) - canonical(b);
  r.passed = d.is_zero();
  r.max_deviation = r.passed ? 0.0 : static_cast<double>(d.size());
  r.details.push_back({{"residual_terms", d.size()}});
  return r;
}

}  // namespace bethe_dvf
