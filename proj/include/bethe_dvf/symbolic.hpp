#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "rational.hpp"

namespace bethe_dvf {

/// Q_color(u + shift)^exponent
struct QFactor {
  int color = 1;
  Rational shift;
  int exponent = 1;
  friend bool operator==(const QFactor&, const QFactor&) = default;
};

/// phi(u + shift)^exponent
struct PhiFactor {
  Rational shift;
  int exponent = 1;
  friend bool operator==(const PhiFactor&, const PhiFactor&) = default;
};

namespace detail {

inline std::strong_ordering cmp(const QFactor& a, const QFactor& b) {
  if (auto c = a.color <=> b.color; c != 0) return c;
  if (auto c = a.shift <=> b.shift; c != 0) return c;
  return a.exponent <=> b.exponent;
}

inline std::strong_ordering cmp(const PhiFactor& a, const PhiFactor& b) {
  if (auto c = a.shift <=> b.shift; c != 0) return c;
  return a.exponent <=> b.exponent;
}

template <class T>
std::strong_ordering cmp_seq(const std::vector<T>& a, const std::vector<T>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = cmp(a[i], b[i]); c != 0) return c;
  return a.size() <=> b.size();
}

}  // namespace detail

/// coefficient * prod Q * prod phi. Canonical when factors are sorted by key,
/// keys are unique and exponents are nonzero.
struct SymTerm {
  Rational coeff{1};
  std::vector<QFactor> q;
  std::vector<PhiFactor> phi;

  static SymTerm constant(Rational c) {
    SymTerm t;
    t.coeff = c;
    return t;
  }
  static SymTerm qf(int color, Rational shift, int exponent = 1) {
    SymTerm t;
    if (exponent != 0) t.q.push_back({color, shift, exponent});
    return t;
  }
  static SymTerm phif(Rational shift, int exponent = 1) {
    SymTerm t;
    if (exponent != 0) t.phi.push_back({shift, exponent});
    return t;
  }

  bool is_zero() const { return coeff.is_zero(); }
  bool is_constant() const { return q.empty() && phi.empty(); }

  /// Exponent of Q_color(u + shift), 0 when absent.
  int q_exponent(int color, const Rational& shift) const {
    for (const auto& f : q)
      if (f.color == color && f.shift == shift) return f.exponent;
    return 0;
  }
  bool contains_color(int color) const {
    return std::any_of(q.begin(), q.end(), [&](const QFactor& f) { return f.color == color; });
  }

  friend bool operator==(const SymTerm&, const SymTerm&) = default;
};

/// Order on the factor part only (coefficient ignored).
inline std::strong_ordering compare_monomial(const SymTerm& a, const SymTerm& b) {
  if (auto c = detail::cmp_seq(a.q, b.q); c != 0) return c;
  return detail::cmp_seq(a.phi, b.phi);
}

inline SymTerm canonical(SymTerm t) {
  if (t.coeff.is_zero()) return SymTerm::constant(0);
  std::sort(t.q.begin(), t.q.end(), [](const QFactor& a, const QFactor& b) {
    return std::pair(a.color, a.shift) < std::pair(b.color, b.shift);
  });
  std::vector<QFactor> q;
  for (const auto& f : t.q) {
    if (!q.empty() && q.back().color == f.color && q.back().shift == f.shift)
      q.back().exponent += f.exponent;
    else
      q.push_back(f);
    if (q.back().exponent == 0) q.pop_back();
  }
  std::sort(t.phi.begin(), t.phi.end(), [](const PhiFactor& a, const PhiFactor& b) { return a.shift < b.shift; });
  std::vector<PhiFactor> phi;
  for (const auto& f : t.phi) {
    if (!phi.empty() && phi.back().shift == f.shift)
      phi.back().exponent += f.exponent;
    else
      phi.push_back(f);
    if (phi.back().exponent == 0) phi.pop_back();
  }
  t.q = std::move(q);
  t.phi = std::move(phi);
  return t;
}

namespace detail {

template <class F, class Key>
std::vector<F> merge_factors(const std::vector<F>& a, const std::vector<F>& b, Key key) {
  std::vector<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && key(a[i]) < key(b[j]))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || key(b[j]) < key(a[i])) {
      out.push_back(b[j++]);
    } else {
      F f = a[i++];
      f.exponent += b[j++].exponent;
      if (f.exponent != 0) out.push_back(f);
    }
  }
  return out;
}

}  // namespace detail

inline SymTerm mul_terms(const SymTerm& a, const SymTerm& b) {
  SymTerm t;
  t.coeff = a.coeff * b.coeff;
  if (t.coeff.is_zero()) return t;
  t.q = detail::merge_factors(a.q, b.q, [](const QFactor& f) { return std::pair(f.color, f.shift); });
  t.phi = detail::merge_factors(a.phi, b.phi, [](const PhiFactor& f) { return f.shift; });
  return t;
}

inline SymTerm inverse(const SymTerm& a) {
  SymTerm t = a;
  t.coeff = Rational(1) / a.coeff;
  for (auto& f : t.q) f.exponent = -f.exponent;
  for (auto& f : t.phi) f.exponent = -f.exponent;
  return t;
}

inline SymTerm shift_u(SymTerm t, const Rational& delta) {
  for (auto& f : t.q) f.shift += delta;
  for (auto& f : t.phi) f.shift += delta;
  return t;
}

/// Signed sum of terms, canonical: sorted by monomial, unique monomials,
/// nonzero coefficients. The empty sum is zero.
struct SymSum {
  std::vector<SymTerm> terms;

  SymSum() = default;
  SymSum(const SymTerm& t) {  // NOLINT(implicit)
    if (!t.is_zero()) terms.push_back(canonical(t));
  }
  static SymSum one() { return SymSum(SymTerm::constant(1)); }

  bool is_zero() const { return terms.empty(); }
  std::size_t size() const { return terms.size(); }

  friend bool operator==(const SymSum&, const SymSum&) = default;
};

/// Sorts and merges an arbitrary list of canonical terms.
inline SymSum canonical_sum(std::vector<SymTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const SymTerm& a, const SymTerm& b) { return compare_monomial(a, b) < 0; });
  SymSum out;
  for (auto& t : terms) {
    if (t.is_zero()) continue;
    if (!out.terms.empty() && compare_monomial(out.terms.back(), t) == 0) {
      out.terms.back().coeff += t.coeff;
      if (out.terms.back().coeff.is_zero()) out.terms.pop_back();
    } else {
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

inline SymSum canonical(const SymSum& x) {
  std::vector<SymTerm> ts;
  ts.reserve(x.terms.size());
  for (const auto& t : x.terms) ts.push_back(canonical(t));
  return canonical_sum(std::move(ts));
}

inline SymSum add(const SymSum& a, const SymSum& b) {
  std::vector<SymTerm> ts = a.terms;
  ts.insert(ts.end(), b.terms.begin(), b.terms.end());
  return canonical_sum(std::move(ts));
}

inline SymSum scale(const SymSum& a, const Rational& c) {
  if (c.is_zero()) return {};
  SymSum out = a;
  for (auto& t : out.terms) t.coeff *= c;
  return out;
}

inline SymSum mul(const SymSum& a, const SymSum& b) {
  std::vector<SymTerm> ts;
  ts.reserve(a.terms.size() * b.terms.size());
  for (const auto& x : a.terms)
    for (const auto& y : b.terms) ts.push_back(mul_terms(x, y));
  return canonical_sum(std::move(ts));
}

inline SymSum mul(const SymSum& a, const SymTerm& t) {
  std::vector<SymTerm> ts;
  ts.reserve(a.terms.size());
  for (const auto& x : a.terms) ts.push_back(mul_terms(x, t));
  return canonical_sum(std::move(ts));
}

inline SymSum shift_u(const SymSum& x, const Rational& delta) {
  SymSum out = x;
  for (auto& t : out.terms) t = shift_u(std::move(t), delta);
  return out;
}

inline SymSum operator+(const SymSum& a, const SymSum& b) { return add(a, b); }
inline SymSum operator-(const SymSum& a) { return scale(a, -1); }
inline SymSum operator-(const SymSum& a, const SymSum& b) { return add(a, scale(b, -1)); }
inline SymSum operator*(const SymSum& a, const SymSum& b) { return mul(a, b); }

/// Largest color appearing anywhere in x (0 if none).
inline int max_color(const SymSum& x) {
  int m = 0;
  for (const auto& t : x.terms)
    for (const auto& f : t.q) m = std::max(m, f.color);
  return m;
}

inline bool contains_color(const SymSum& x, int color) {
  return std::any_of(x.terms.begin(), x.terms.end(), [&](const SymTerm& t) { return t.contains_color(color); });
}

// ---------------------------------------------------------------- evaluation

/// Values for u, the Bethe roots u_j^(a) (roots[a] indexed from 0) and the
/// inhomogeneities w_j. Phi(u) = u, so Q_a(v) = prod_j (v - u_j^(a)).
template <class Scalar>
struct Assignment {
  Scalar u{};
  std::map<int, std::vector<Scalar>> roots;
  std::vector<Scalar> inhoms;
};

using ExactAssignment = Assignment<mpq_class>;
using FloatAssignment = Assignment<std::complex<double>>;

template <class Scalar>
Scalar to_scalar(const Rational& r) {
  if constexpr (std::is_same_v<Scalar, mpq_class>)
    return r.to_mpq();
  else
    return Scalar(r.to_double());
}

template <class Scalar>
bool is_exact_zero(const Scalar& v) {
  if constexpr (std::is_same_v<Scalar, mpq_class>)
    return sgn(v) == 0;
  else
    return v == Scalar(0);
}

/// Caches Q_a(u+c) and phi(u+c) values for one assignment.
template <class Scalar>
class Evaluator {
 public:
  explicit Evaluator(const Assignment<Scalar>& asg, Rational u_offset = 0)
      : asg_(asg), u_(asg.u + to_scalar<Scalar>(u_offset)) {}

  const Scalar& q_value(int color, const Rational& shift) {
    auto key = std::pair(color, shift);
    auto it = qcache_.find(key);
    if (it != qcache_.end()) return it->second;
    auto rit = asg_.roots.find(color);
    if (rit == asg_.roots.end())
      throw std::invalid_argument("assignment has no roots for color " + std::to_string(color));
    Scalar arg = u_ + to_scalar<Scalar>(shift);
    Scalar v(1);
    for (const auto& r : rit->second) v *= arg - r;
    return qcache_.emplace(key, std::move(v)).first->second;
  }

  const Scalar& phi_value(const Rational& shift) {
    auto it = phicache_.find(shift);
    if (it != phicache_.end()) return it->second;
    Scalar arg = u_ + to_scalar<Scalar>(shift);
    Scalar v(1);
    for (const auto& w : asg_.inhoms) v *= arg - w;
    return phicache_.emplace(shift, std::move(v)).first->second;
  }

  Scalar term(const SymTerm& t) {
    if constexpr (std::is_same_v<Scalar, mpq_class>) return exact_term(t);
    Scalar num = to_scalar<Scalar>(t.coeff);
    Scalar den(1);
    for (const auto& f : t.q) {
      const Scalar& v = q_value(f.color, f.shift);
      if (f.exponent < 0 && is_exact_zero(v)) throw PoleHit(f.color, f.shift.str());
      for (int e = 0; e < std::abs(f.exponent); ++e) (f.exponent > 0 ? num : den) *= v;
    }
    for (const auto& f : t.phi) {
      const Scalar& v = phi_value(f.shift);
      if (f.exponent < 0 && is_exact_zero(v)) throw PoleHit(0, f.shift.str());
      for (int e = 0; e < std::abs(f.exponent); ++e) (f.exponent > 0 ? num : den) *= v;
    }
    return num / den;
  }

  Scalar sum(const SymSum& x) {
    if constexpr (std::is_same_v<Scalar, mpq_class>) return exact_sum(x);
    Scalar acc(0);
    for (const auto& t : x.terms) acc += term(t);
    return acc;
  }

 private:
  // numerator and denominator products stay unreduced; one gcd per term
  mpq_class exact_term(const SymTerm& t) {
    mpq_class c = t.coeff.to_mpq();
    mpz_class num = c.get_num(), den = c.get_den();
    auto take = [&](const mpq_class& v, int exponent) {
      const mpz_class& top = exponent > 0 ? v.get_num() : v.get_den();
      const mpz_class& bottom = exponent > 0 ? v.get_den() : v.get_num();
      for (int e = 0; e < std::abs(exponent); ++e) {
        num *= top;
        den *= bottom;
      }
    };
    for (const auto& f : t.q) {
      const mpq_class& v = q_value(f.color, f.shift);
      if (f.exponent < 0 && sgn(v) == 0) throw PoleHit(f.color, f.shift.str());
      take(v, f.exponent);
    }
    for (const auto& f : t.phi) {
      const mpq_class& v = phi_value(f.shift);
      if (f.exponent < 0 && sgn(v) == 0) throw PoleHit(0, f.shift.str());
      take(v, f.exponent);
    }
    mpq_class out(num, den);
    out.canonicalize();
    return out;
  }

  // Scales every term by one common denominator so the running sum is an
  // integer; a single reduction at the end.
  mpq_class exact_sum(const SymSum& x) {
    if (x.terms.size() < 8) {
      mpq_class acc = 0;
      for (const auto& t : x.terms) acc += exact_term(t);
      return acc;
    }
    struct Base {
      const mpq_class* v;
      int top = 0;     // max power of the numerator in a denominator
      int bottom = 0;  // max power of the denominator in a denominator
    };
    std::vector<Base> bases;
    std::map<std::pair<int, Rational>, std::size_t> index;  // color 0 is phi
    auto base_of = [&](int color, const Rational& shift) {
      auto key = std::pair(color, shift);
      auto it = index.find(key);
      if (it != index.end()) return it->second;
      const mpq_class& v = color == 0 ? phi_value(shift) : q_value(color, shift);
      bases.push_back({&v});
      return index.emplace(key, bases.size() - 1).first->second;
    };
    struct Flat {
      mpz_class coeff_num, coeff_den;
      std::vector<std::pair<std::size_t, int>> powers;
    };
    std::vector<Flat> flat;
    flat.reserve(x.terms.size());
    mpz_class lcm_den = 1;
    for (const auto& t : x.terms) {
      Flat f;
      mpq_class c = t.coeff.to_mpq();
      f.coeff_num = c.get_num();
      f.coeff_den = c.get_den();
      mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), f.coeff_den.get_mpz_t());
      auto add = [&](int color, const Rational& shift, int e) {
        std::size_t b = base_of(color, shift);
        if (e < 0 && sgn(*bases[b].v) == 0) throw PoleHit(color, shift.str());
        f.powers.push_back({b, e});
        if (e < 0) bases[b].top = std::max(bases[b].top, -e);
        if (e > 0) bases[b].bottom = std::max(bases[b].bottom, e);
      };
      for (const auto& q : t.q) add(q.color, q.shift, q.exponent);
      for (const auto& p : t.phi) add(0, p.shift, p.exponent);
      flat.push_back(std::move(f));
    }
    // C = lcm_den * prod num^top * den^bottom; term * C is an integer
    mpz_class C = lcm_den;
    for (const auto& b : bases) {
      for (int i = 0; i < b.top; ++i) C *= b.v->get_num();
      for (int i = 0; i < b.bottom; ++i) C *= b.v->get_den();
    }
    mpz_class acc = 0;
    std::vector<int> e(bases.size());
    for (const auto& f : flat) {
      std::fill(e.begin(), e.end(), 0);
      for (const auto& [b, p] : f.powers) e[b] += p;
      mpz_class v = f.coeff_num * (lcm_den / f.coeff_den);
      for (std::size_t b = 0; b < bases.size(); ++b) {
        const mpq_class& q = *bases[b].v;
        for (int i = 0; i < e[b] + bases[b].top; ++i) v *= q.get_num();
        for (int i = 0; i < bases[b].bottom - e[b]; ++i) v *= q.get_den();
      }
      acc += v;
    }
    mpq_class out(acc, C);
    out.canonicalize();
    return out;
  }

  const Assignment<Scalar>& asg_;
  Scalar u_;
  std::map<std::pair<int, Rational>, Scalar> qcache_;
  std::map<Rational, Scalar> phicache_;
};

/// Value of x at asg with u replaced by u + u_offset.
template <class Scalar>
Scalar evaluate(const SymSum& x, const Assignment<Scalar>& asg, const Rational& u_offset = 0) {
  Evaluator<Scalar> ev(asg, u_offset);
  return ev.sum(x);
}

template <class Scalar>
Scalar evaluate(const SymTerm& t, const Assignment<Scalar>& asg, const Rational& u_offset = 0) {
  Evaluator<Scalar> ev(asg, u_offset);
  return ev.term(t);
}

// ---------------------------------------------------------------- residues

struct ResidueBreakdown {
  std::complex<double> total{0.0, 0.0};
  double abs_sum = 0.0;  // sum of |per-term residue|
  int contributing_terms = 0;

  /// |total| / abs_sum, 0 when nothing contributes.
  double relative() const { return abs_sum == 0.0 ? 0.0 : std::abs(total) / abs_sum; }
};

/// Simple-pole residue of x at u = u_k^(color) + shift (k is 0-based).
inline ResidueBreakdown residue_breakdown(const SymSum& x, int color, std::size_t k, const Rational& shift,
                                          const FloatAssignment& asg, double genericity_tol = 1e-10) {
  using C = std::complex<double>;
  auto rit = asg.roots.find(color);
  if (rit == asg.roots.end() || k >= rit->second.size())
    throw std::invalid_argument("residue_at: root index out of range");
  const auto& rs = rit->second;
  C uk = rs[k];
  C prod_other(1.0, 0.0);
  for (std::size_t j = 0; j < rs.size(); ++j) {
    if (j == k) continue;
    if (std::abs(uk - rs[j]) < genericity_tol)
      throw GenericityViolation("coincident roots of color " + std::to_string(color));
    prod_other *= uk - rs[j];
  }
  FloatAssignment at = asg;
  at.u = uk + shift.to_double();
  Evaluator<C> ev(at);
  Rational pole_key = -shift;
  ResidueBreakdown out;
  for (const auto& t : x.terms) {
    int e = t.q_exponent(color, pole_key);
    if (e >= 0) continue;
    if (e <= -2)
      throw HigherOrderPole("pole of order " + std::to_string(-e) + " for Q_" + std::to_string(color));
    SymTerm rest = t;
    std::erase_if(rest.q, [&](const QFactor& f) { return f.color == color && f.shift == pole_key; });
    C r = ev.term(rest) / prod_other;
    out.total += r;
    out.abs_sum += std::abs(r);
    ++out.contributing_terms;
  }
  return out;
}

inline std::complex<double> residue_at(const SymSum& x, int color, std::size_t k, const Rational& shift,
                                       const FloatAssignment& asg) {
  return residue_breakdown(x, color, k, shift, asg).total;
}

/// Laurent principal part of x at u = u_k^(color) + shift. coeff[j-1] is the
/// coefficient of (u - p)^(-j); abs_sum[j-1] sums the per-term magnitudes.
struct PrincipalPart {
  std::vector<std::complex<double>> coeff;
  std::vector<double> abs_sum;
  int contributing_terms = 0;

  int order() const { return static_cast<int>(coeff.size()); }
  /// Worst |coeff| / abs_sum over all orders, 0 when nothing contributes.
  double relative() const {
    double worst = 0.0;
    for (std::size_t j = 0; j < coeff.size(); ++j)
      if (abs_sum[j] != 0.0) worst = std::max(worst, std::abs(coeff[j]) / abs_sum[j]);
    return worst;
  }
};

/// Handles poles of any order: each term is coeff * (u-p)^(-m) * g(u) with g
/// a product of nonvanishing linear factors, expanded through log g.
inline PrincipalPart principal_part(const SymSum& x, int color, std::size_t k, const Rational& shift,
                                    const FloatAssignment& asg, double genericity_tol = 1e-10) {
  using C = std::complex<double>;
  auto rit = asg.roots.find(color);
  if (rit == asg.roots.end() || k >= rit->second.size())
    throw std::invalid_argument("principal_part: root index out of range");
  const C p = rit->second[k] + shift.to_double();
  const Rational pole_key = -shift;
  PrincipalPart out;
  auto grow = [&](int m) {
    if (m > out.order()) {
      out.coeff.resize(m, C(0.0));
      out.abs_sum.resize(m, 0.0);
    }
  };
  for (const auto& t : x.terms) {
    int m = -t.q_exponent(color, pole_key);
    if (m <= 0) continue;
    std::vector<std::pair<C, int>> lin;  // (a, e): factor (a + (u-p))^e
    for (const auto& f : t.q) {
      auto qit = asg.roots.find(f.color);
      if (qit == asg.roots.end())
        throw std::invalid_argument("assignment has no roots for color " + std::to_string(f.color));
      for (std::size_t j = 0; j < qit->second.size(); ++j) {
        if (f.color == color && f.shift == pole_key && j == k) continue;
        C a = p + f.shift.to_double() - qit->second[j];
        if (std::abs(a) >= genericity_tol)
          lin.emplace_back(a, f.exponent);
        else if (f.exponent < 0)
          throw GenericityViolation("coinciding poles at Q_" + std::to_string(f.color));
        else
          m -= f.exponent;  // a vanishing numerator lowers the order
      }
    }
    for (const auto& f : t.phi)
      for (const auto& w : asg.inhoms) {
        C a = p + f.shift.to_double() - w;
        if (std::abs(a) >= genericity_tol)
          lin.emplace_back(a, f.exponent);
        else if (f.exponent < 0)
          throw GenericityViolation("pole meets a pole of phi");
        else
          m -= f.exponent;
      }
    if (m <= 0) continue;
    C g0 = t.coeff.to_double();
    for (const auto& [a, e] : lin) g0 *= std::pow(a, e);
    // log g = log g0 + sum_n L_n t^n, L_n = sum e (-1)^(n-1) / (n a^n)
    std::vector<C> L(m, C(0.0)), G(m, C(0.0));
    for (int n = 1; n < m; ++n)
      for (const auto& [a, e] : lin) L[n] += static_cast<double>(e) * ((n % 2) ? 1.0 : -1.0) / (static_cast<double>(n) * std::pow(a, n));
    G[0] = 1.0;
    for (int n = 1; n < m; ++n) {
      for (int j = 1; j <= n; ++j) G[n] += static_cast<double>(j) * L[j] * G[n - j];
      G[n] /= static_cast<double>(n);
    }
    grow(m);
    for (int j = 1; j <= m; ++j) {
      C c = g0 * G[m - j];
      out.coeff[j - 1] += c;
      out.abs_sum[j - 1] += std::abs(c);
    }
    ++out.contributing_terms;
  }
  return out;
}

// ---------------------------------------------------------------- text form

inline std::string shift_arg(const Rational& c) {
  if (c.is_zero()) return "u";
  std::ostringstream os;
  os << "u" << (c > 0 ? "+" : "-") << (c > 0 ? c : -c);
  return os.str();
}

inline std::string to_text(const SymTerm& t) {
  std::ostringstream os;
  os << t.coeff;
  for (const auto& f : t.phi) {
    os << " phi(" << shift_arg(f.shift) << ")";
    if (f.exponent != 1) os << "^" << f.exponent;
  }
  for (const auto& f : t.q) {
    os << " Q" << f.color << "(" << shift_arg(f.shift) << ")";
    if (f.exponent != 1) os << "^" << f.exponent;
  }
  return os.str();
}

inline std::string to_text(const SymSum& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < x.terms.size(); ++i) {
    if (i) s += "\n";
    s += to_text(x.terms[i]);
  }
  return s;
}

}  // namespace bethe_dvf
