#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "root_systems.hpp"
#include "symbolic.hpp"
#include "tableaux.hpp"

namespace bethe_dvf {

struct BoxContext {
  AlgebraSpec spec;
  bool include_vacuum = true;
};

/// Vacuum part psi_x(u + v): phi(v-2)phi(v+c) for 1, phi(v)phi(v+c+2) for
/// bar 1 and phi(v)phi(v+c) otherwise, with c = 2r-2s-1 (B) or 2r-2s-2 (D).
inline SymTerm vacuum_part(const AlgebraSpec& spec, const IndexLabel& x, const Rational& v) {
  Rational c = spec.is_b() ? 2 * spec.r - 2 * spec.s - 1 : 2 * spec.r - 2 * spec.s - 2;
  SymTerm t;
  if (x == IndexLabel::unbarred(1)) {
    t.phi = {{v - 2, 1}, {v + c, 1}};
  } else if (x == IndexLabel::barred(1)) {
    t.phi = {{v, 1}, {v + c + 2, 1}};
  } else {
    t.phi = {{v, 1}, {v + c, 1}};
  }
  return canonical(t);
}

/// The box [x]_{u + v}: a ratio of shifted Q-functions (Q_0 = 1), times the
/// vacuum part when ctx.include_vacuum.
inline SymTerm box(const BoxContext& ctx, const IndexLabel& x, const Rational& v) {
  const AlgebraSpec& sp = ctx.spec;
  if (!valid_label(sp, x)) throw std::invalid_argument("label " + x.str() + " not valid for " + sp.str());
  const int s = sp.s, r = sp.r, n = sp.rank();
  SymTerm t;
  auto Q = [&](int color, std::int64_t shift, int e) {
    if (color >= 1) t.q.push_back({color, v + shift, e});
  };
  const int a = x.value;
  if (sp.is_b()) {
    if (x.is_zero()) {
      Q(n, -s + r + 1, 1), Q(n, -s + r - 2, 1), Q(n, -s + r - 1, -1), Q(n, -s + r, -1);
    } else if (!x.is_barred() && a <= s) {
      Q(a - 1, -a - 1, 1), Q(a, -a + 2, 1), Q(a - 1, -a + 1, -1), Q(a, -a, -1);
    } else if (!x.is_barred()) {
      Q(a - 1, -2 * s + a + 1, 1), Q(a, -2 * s + a - 2, 1), Q(a - 1, -2 * s + a - 1, -1), Q(a, -2 * s + a, -1);
    } else if (a > s) {
      Q(a - 1, 2 * r - a - 2, 1), Q(a, 2 * r - a + 1, 1), Q(a - 1, 2 * r - a, -1), Q(a, 2 * r - a - 1, -1);
    } else {
      std::int64_t k = -2 * s + 2 * r + a;
      Q(a - 1, k, 1), Q(a, k - 3, 1), Q(a - 1, k - 2, -1), Q(a, k - 1, -1);
    }
  } else {
    const std::int64_t k = -s + r;
    if (!x.is_barred() && a <= s) {
      Q(a - 1, -a - 1, 1), Q(a, -a + 2, 1), Q(a - 1, -a + 1, -1), Q(a, -a, -1);
    } else if (!x.is_barred() && a <= n - 2) {
      Q(a - 1, -2 * s + a + 1, 1), Q(a, -2 * s + a - 2, 1), Q(a - 1, -2 * s + a - 1, -1), Q(a, -2 * s + a, -1);
    } else if (!x.is_barred() && a == n - 1) {
      Q(n - 2, k, 1), Q(n - 1, k - 3, 1), Q(n, k - 3, 1);
      Q(n - 2, k - 2, -1), Q(n - 1, k - 1, -1), Q(n, k - 1, -1);
    } else if (!x.is_barred()) {  // a == n
      Q(n - 1, k + 1, 1), Q(n, k - 3, 1), Q(n - 1, k - 1, -1), Q(n, k - 1, -1);
    } else if (a == n) {
      Q(n - 1, k - 3, 1), Q(n, k + 1, 1), Q(n - 1, k - 1, -1), Q(n, k - 1, -1);
    } else if (a == n - 1) {
      Q(n - 2, k - 2, 1), Q(n - 1, k + 1, 1), Q(n, k + 1, 1);
      Q(n - 2, k, -1), Q(n - 1, k - 1, -1), Q(n, k - 1, -1);
    } else if (a > s) {
      Q(a - 1, 2 * r - a - 3, 1), Q(a, 2 * r - a, 1), Q(a - 1, 2 * r - a - 1, -1), Q(a, 2 * r - a - 2, -1);
    } else {
      std::int64_t m = -2 * s + 2 * r + a;
      Q(a - 1, m - 1, 1), Q(a, m - 4, 1), Q(a - 1, m - 3, -1), Q(a, m - 2, -1);
    }
  }
  t = canonical(t);
  if (ctx.include_vacuum) t = mul_terms(t, vacuum_part(sp, x, v));
  return t;
}

/// Shift of cell (i, j) in the DVF of lambda in mu: -mu_1 + mu'_1 - 2i + 2j.
inline Rational cell_shift(const SkewDiagram& shape, int i, int j) {
  return Rational(-shape.mu[1] + shape.mu.length() - 2 * i + 2 * j);
}

/// Signed box product of one tableau.
inline SymTerm tableau_term(const BoxContext& ctx, const Tableau& t) {
  SymTerm acc = SymTerm::constant(1);
  int parity = 0;
  for (std::size_t k = 0; k < t.cells.size(); ++k) {
    parity += grading(ctx.spec, t.entries[k]);
    acc = mul_terms(acc, box(ctx, t.entries[k], cell_shift(t.shape, t.cells[k].i, t.cells[k].j)));
  }
  if (parity % 2) acc.coeff = -acc.coeff;
  return acc;
}

/// T_{lambda in mu}(u): sum over admissible tableaux of signed box products.
inline SymSum build_dvf(const BoxContext& ctx, const SkewDiagram& shape) {
  AdmissibilityRules rules(ctx.spec, shape);
  const auto cells = shape.cells();
  const auto& labs = rules.label_list();
  // boxes[label][cell]
  std::vector<std::vector<SymTerm>> boxes(labs.size());
  std::vector<int> sign(labs.size());
  for (std::size_t l = 0; l < labs.size(); ++l) {
    sign[l] = grading(ctx.spec, labs[l]);
    for (const auto& c : cells) boxes[l].push_back(box(ctx, labs[l], cell_shift(shape, c.i, c.j)));
  }
  std::vector<SymTerm> terms;
  for_each_filling(rules, shape, [&](const std::vector<int>& fill) {
    SymTerm acc = SymTerm::constant(1);
    int parity = 0;
    for (std::size_t k = 0; k < fill.size(); ++k) {
      acc = mul_terms(acc, boxes[fill[k]][k]);
      parity += sign[fill[k]];
    }
    if (parity % 2) acc.coeff = -acc.coeff;
    terms.push_back(std::move(acc));
  });
  return canonical_sum(std::move(terms));
}

/// T^a: a single column of height a. T^0 = 1, negative a gives 0.
inline SymSum column_dvf(const BoxContext& ctx, int a) {
  if (a < 0) return {};
  if (a == 0) return SymSum::one();
  return build_dvf(ctx, Partition::rectangle(1, a));
}

/// T_m: a single row of length m. T_0 = 1, negative m gives 0.
inline SymSum row_dvf(const BoxContext& ctx, int m) {
  if (m < 0) return {};
  if (m == 0) return SymSum::one();
  return build_dvf(ctx, Partition::rectangle(m, 1));
}

// ---------------------------------------------------------------- B(0|s) normalization

/// F_m(u + v): product_{j=1}^{m-1} phi(u-m+2j+1) phi(u-2s-m+2j-2); F_1 = 1;
/// F_0 = 1 / (phi(u+1) phi(u-2s-2)).
inline SymTerm f_factor(int s, int m, const Rational& v) {
  if (m < 0) throw std::invalid_argument("F_m needs m >= 0");
  SymTerm t;
  if (m == 0) {
    t.phi = {{v + 1, -1}, {v - 2 * s - 2, -1}};
  } else {
    for (int j = 1; j <= m - 1; ++j) {
      t.phi.push_back({v - m + 2 * j + 1, 1});
      t.phi.push_back({v - 2 * s - m + 2 * j - 2, 1});
    }
  }
  return canonical(t);
}

/// Divisor prod_{j=1}^{rows} F_{mu_j - lambda_j}(u - mu_1 + rows + mu_j + lambda_j - 2j + 1).
/// rows defaults to mu'_1; pass it explicitly for the empty shape with a rows.
inline SymTerm normalization_divisor(const AlgebraSpec& spec, const SkewDiagram& shape, int rows = -1) {
  if (!spec.is_b0s()) throw WrongAlgebra("normalization is defined for B(0|s) only, got " + spec.str());
  if (rows < 0) rows = shape.mu.length();
  SymTerm d = SymTerm::constant(1);
  for (int j = 1; j <= rows; ++j) {
    int mj = shape.mu[j], lj = shape.lambda[j];
    d = mul_terms(d, f_factor(spec.s, mj - lj, Rational(-shape.mu[1] + rows + mj + lj - 2 * j + 1)));
  }
  return d;
}

inline SymSum normalize_b0s(const AlgebraSpec& spec, const SymSum& x, const SkewDiagram& shape, int rows = -1) {
  return mul(x, inverse(normalization_divisor(spec, shape, rows)));
}

/// Normalized T_m^a (a rows of length m) for B(0|s); m = 0 gives
/// prod_j T_0(u + a - 2j + 1) with T_0(u) = phi(u+1)phi(u-2s-2).
inline SymSum normalized_rectangle(const BoxContext& ctx, int m, int a) {
  if (m < 0 || a < 0) return {};
  if (a == 0) return SymSum::one();
  SkewDiagram shape(Partition::rectangle(m, a));
  SymSum raw = m == 0 ? SymSum::one() : build_dvf(ctx, shape);
  if (!ctx.include_vacuum) return raw;
  return normalize_b0s(ctx.spec, raw, shape, a);
}

// ---------------------------------------------------------------- top terms

/// Term of the highest-weight tableau (vacuum omitted unless ctx asks).
inline SymTerm top_term(const BoxContext& ctx, const SkewDiagram& shape) {
  const AlgebraSpec& sp = ctx.spec;
  if (shape.cell_count() == 0) return SymTerm::constant(1);
  if (!shape.is_straight()) throw UnsupportedShape("top term needs a straight shape");
  Tableau t;
  t.shape = shape;
  t.cells = shape.cells();
  const Partition& mu = shape.mu;
  if (sp.is_b()) {
    if (sp.r == 0 ? mu[1] > sp.s : mu[sp.r + 1] > sp.s)
      throw UnsupportedShape("top term rule needs mu_{r+1} <= s for " + sp.str());
    for (const auto& c : t.cells)
      t.entries.push_back(IndexLabel::unbarred(c.j <= sp.s ? c.j : c.i + sp.s));
  } else {
    const auto& p = mu.parts();
    bool column = std::all_of(p.begin(), p.end(), [](int x) { return x == 1; });
    if (column) {
      for (std::size_t k = 0; k < t.cells.size(); ++k) t.entries.push_back(IndexLabel::unbarred(1));
    } else if (p.size() == 1) {
      for (const auto& c : t.cells) t.entries.push_back(IndexLabel::unbarred(std::min(c.j, sp.s + 1)));
    } else {
      throw UnsupportedShape("D top term only for (1^a) or (m)");
    }
  }
  return tableau_term(ctx, t);
}

// ---------------------------------------------------------------- crossing

/// Parities of N_a and N used when rewriting Q_a(-v) and phi(-v).
struct DegreeParity {
  std::map<int, int> q;  // color -> N_a mod 2, default even
  int phi = 0;           // N mod 2
};

/// u -> -(u + K) with roots and inhomogeneities negated; K = 2r-2s-1 (B),
/// 2r-2s-2 (D). Q_a(u+c) becomes (-1)^{N_a} Q_a(u+K-c).
inline SymSum crossing_transform(const AlgebraSpec& spec, const SymSum& x, const DegreeParity& par = {}) {
  Rational K = spec.is_b() ? 2 * spec.r - 2 * spec.s - 1 : 2 * spec.r - 2 * spec.s - 2;
  std::vector<SymTerm> out;
  for (const auto& t : x.terms) {
    SymTerm y;
    y.coeff = t.coeff;
    int flips = 0;
    for (const auto& f : t.q) {
      y.q.push_back({f.color, K - f.shift, f.exponent});
      auto it = par.q.find(f.color);
      if (it != par.q.end() && it->second % 2) flips += f.exponent;
    }
    for (const auto& f : t.phi) {
      y.phi.push_back({K - f.shift, f.exponent});
      if (par.phi % 2) flips += f.exponent;
    }
    if (flips % 2) y.coeff = -y.coeff;
    out.push_back(canonical(y));
  }
  return canonical_sum(std::move(out));
}

// ---------------------------------------------------------------- generating series

/// Truncated series in the shift operator X = exp(2 d/du): coefficient k
/// multiplies X^k, and X moves everything to its right by 2.
using Series = std::vector<SymSum>;

inline Series series_mul(const Series& a, const Series& b, int max_order) {
  Series c(max_order + 1);
  for (int i = 0; i < static_cast<int>(a.size()) && i <= max_order; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < static_cast<int>(b.size()) && i + j <= max_order; ++j) {
      if (b[j].is_zero()) continue;
      c[i + j] = c[i + j] + mul(a[i], shift_u(b[j], Rational(2 * i)));
    }
  }
  return c;
}

/// (1 - A)^{-1} = sum_k A^k for A without constant term.
inline Series series_geometric(const Series& a, int max_order) {
  Series out(max_order + 1), power(max_order + 1);
  out[0] = SymSum::one();
  power[0] = SymSum::one();
  for (int k = 1; k <= max_order; ++k) {
    power = series_mul(power, a, max_order);
    for (int i = 0; i <= max_order; ++i) out[i] = out[i] + power[i];
  }
  return out;
}

inline Series series_box(const BoxContext& ctx, const IndexLabel& x, int max_order) {
  Series s(max_order + 1);
  if (max_order >= 1) s[1] = SymSum(box(ctx, x, 0));
  return s;
}

inline Series series_one(int max_order) {
  Series s(max_order + 1);
  s[0] = SymSum::one();
  return s;
}

/// 1 + c [x] X
inline Series series_linear(const BoxContext& ctx, const IndexLabel& x, int c, int max_order) {
  Series s = series_box(ctx, x, max_order);
  if (max_order >= 1) s[1] = scale(s[1], c);
  s[0] = SymSum::one();
  return s;
}

/// (1 + c [x] X)^{-1}
inline Series series_inverse_linear(const BoxContext& ctx, const IndexLabel& x, int c, int max_order) {
  Series a = series_box(ctx, x, max_order);
  if (max_order >= 1) a[1] = scale(a[1], -c);
  return series_geometric(a, max_order);
}

enum class SeriesKind { column, row };

/// Coefficient of X^n in the ordered generating product; equals T^n(u+n-1)
/// for columns and T_n(u+n-1) for rows.
inline SymSum generating_series_coeff(const BoxContext& ctx, SeriesKind kind, int n, int max_order) {
  if (n > max_order) throw TruncationTooSmall("coefficient " + std::to_string(n) + " beyond truncation order");
  if (n < 0) return {};
  const AlgebraSpec& sp = ctx.spec;
  const int s = sp.s, nr = sp.rank();
  const int M = max_order;
  auto U = IndexLabel::unbarred;
  auto Bb = IndexLabel::barred;
  Series acc = series_one(M);
  auto times = [&](const Series& f) { acc = series_mul(acc, f, M); };
  if (kind == SeriesKind::column) {
    for (int a = 1; a <= s; ++a) times(series_inverse_linear(ctx, Bb(a), 1, M));
    for (int a = s + 1; a <= nr; ++a) times(series_linear(ctx, Bb(a), 1, M));
    if (sp.is_b()) {
      times(series_inverse_linear(ctx, IndexLabel::zero(), -1, M));
    } else {
      Series pair = series_mul(series_box(ctx, U(nr), M), series_box(ctx, Bb(nr), M), M);
      times(series_geometric(pair, M));
    }
    for (int a = nr; a >= s + 1; --a) times(series_linear(ctx, U(a), 1, M));
    for (int a = s; a >= 1; --a) times(series_inverse_linear(ctx, U(a), 1, M));
  } else {
    for (int a = 1; a <= s; ++a) times(series_linear(ctx, U(a), -1, M));
    if (sp.is_b()) {
      for (int a = s + 1; a <= nr; ++a) times(series_inverse_linear(ctx, U(a), -1, M));
      times(series_linear(ctx, IndexLabel::zero(), 1, M));
      for (int a = nr; a >= s + 1; --a) times(series_inverse_linear(ctx, Bb(a), -1, M));
    } else {
      for (int a = s + 1; a <= nr - 1; ++a) times(series_inverse_linear(ctx, U(a), -1, M));
      Series mid = series_inverse_linear(ctx, U(nr), -1, M);
      Series other = series_inverse_linear(ctx, Bb(nr), -1, M);
      for (int i = 0; i <= M; ++i) mid[i] = mid[i] + other[i];
      mid[0] = mid[0] - SymSum::one();
      times(mid);
      for (int a = nr - 1; a >= s + 1; --a) times(series_inverse_linear(ctx, Bb(a), -1, M));
    }
    for (int a = s; a >= 1; --a) times(series_linear(ctx, Bb(a), -1, M));
  }
  return acc[n];
}

// ---------------------------------------------------------------- D isolated terms

/// h^a(u) = prod_{j=1}^{a+1-r+s} psi_1(u+a-2j+1) psi_{bar 1}(u-a+2j-1).
inline SymTerm h_column(const AlgebraSpec& spec, int a) {
  SymTerm t = SymTerm::constant(1);
  for (int j = 1; j <= a + 1 - spec.r + spec.s; ++j) {
    t = mul_terms(t, vacuum_part(spec, IndexLabel::unbarred(1), Rational(a - 2 * j + 1)));
    t = mul_terms(t, vacuum_part(spec, IndexLabel::barred(1), Rational(-a + 2 * j - 1)));
  }
  return t;
}

/// h_m(u) = prod_{j=1}^{m+r-s-1} psi_j(u-m+2j-1) psi_{bar j}(u+m-2j+1).
inline SymTerm h_row(const AlgebraSpec& spec, int m) {
  SymTerm t = SymTerm::constant(1);
  for (int j = 1; j <= m + spec.r - spec.s - 1; ++j) {
    t = mul_terms(t, vacuum_part(spec, IndexLabel::unbarred(j), Rational(-m + 2 * j - 1)));
    t = mul_terms(t, vacuum_part(spec, IndexLabel::barred(j), Rational(m - 2 * j + 1)));
  }
  return t;
}

/// h^a(u) T^{-a+2(r-s-1)}(u): the part removed from T^a(u) for D(r|s).
inline SymSum isolated_column_part(const BoxContext& ctx, int a) {
  if (!ctx.spec.is_d()) throw WrongAlgebra("isolated terms are a D(r|s) notion");
  return mul(column_dvf(ctx, -a + 2 * (ctx.spec.r - ctx.spec.s - 1)), h_column(ctx.spec, a));
}

/// h_m(u) T_{-m+2(s-r+1)}(u).
inline SymSum isolated_row_part(const BoxContext& ctx, int m) {
  if (!ctx.spec.is_d()) throw WrongAlgebra("isolated terms are a D(r|s) notion");
  return mul(row_dvf(ctx, -m + 2 * (ctx.spec.s - ctx.spec.r + 1)), h_row(ctx.spec, m));
}

// ---------------------------------------------------------------- LaTeX

inline std::string latex_arg(const Rational& c) {
  if (c.is_zero()) return "u";
  std::ostringstream os;
  if (c.is_integer())
    os << c.num();
  else
    os << "\\frac{" << c.num() << "}{" << c.den() << "}";
  os << " + u";
  return os.str();
}

inline std::string to_latex(const SymTerm& t) {
  std::ostringstream num, den, phi_num, phi_den;
  auto pw = [](std::ostringstream& os, int e) {
    if (e > 1) os << "^{" << e << "}";
  };
  for (const auto& f : t.phi) {
    auto& os = f.exponent > 0 ? phi_num : phi_den;
    os << "\\phi(" << latex_arg(f.shift) << ")";
    pw(os, std::abs(f.exponent));
  }
  for (const auto& f : t.q) {
    auto& os = f.exponent > 0 ? num : den;
    os << "Q_{" << f.color << "}(" << latex_arg(f.shift) << ")";
    pw(os, std::abs(f.exponent));
  }
  std::string n = num.str(), d = den.str() + phi_den.str();
  std::ostringstream out;
  Rational c = t.coeff;
  Rational mag = c < 0 ? -c : c;
  if (mag != Rational(1)) {
    if (mag.is_integer())
      out << mag.num();
    else
      out << "\\frac{" << mag.num() << "}{" << mag.den() << "}";
  }
  out << phi_num.str();
  if (!d.empty())
    out << "\\frac{" << (n.empty() ? "1" : n) << "}{" << d << "}";
  else
    out << n;
  std::string body = out.str();
  if (body.empty()) body = "1";
  return (c < 0 ? "-" : "") + body;
}

inline std::string to_latex(const SymSum& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < x.terms.size(); ++i) {
    std::string t = to_latex(x.terms[i]);
    if (i == 0)
      out += t;
    else if (t[0] == '-')
      out += "\n - " + t.substr(1);
    else
      out += "\n + " + t;
  }
  return out;
}

}  // namespace bethe_dvf
