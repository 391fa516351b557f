#pragma once

#include <regex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "rational.hpp"

namespace bethe_dvf {

enum class Family { B, D };

/// B(r|s) = osp(2r+1|2s) with r >= 0, or D(r|s) = osp(2r|2s) with r >= 2; s >= 1.
struct AlgebraSpec {
  Family family = Family::B;
  int r = 0;
  int s = 1;

  AlgebraSpec() = default;
  AlgebraSpec(Family f, int r_, int s_) : family(f), r(r_), s(s_) { validate(); }

  int rank() const { return s + r; }
  bool is_b() const { return family == Family::B; }
  bool is_d() const { return family == Family::D; }
  bool is_b0s() const { return is_b() && r == 0; }

  void validate() const {
    if (s < 1) throw ParseError("s must be >= 1");
    if (family == Family::B && r < 0) throw ParseError("B(r|s) needs r >= 0");
    if (family == Family::D && r < 2) throw ParseError("D(r|s) needs r >= 2");
  }

  std::string str() const {
    return std::string(is_b() ? "B" : "D") + "(" + std::to_string(r) + "|" + std::to_string(s) + ")";
  }

  /// "B(2|1)", "D(3|1)", "B(0|2)".
  static AlgebraSpec parse(const std::string& text) {
    static const std::regex re(R"(\s*([BbDd])\s*\(\s*(-?\d+)\s*\|\s*(-?\d+)\s*\)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw ParseError("cannot parse algebra spec '" + text + "'");
    Family f = (m[1] == "B" || m[1] == "b") ? Family::B : Family::D;
    return AlgebraSpec(f, std::stoi(m[2]), std::stoi(m[3]));
  }

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

// ---------------------------------------------------------------- labels

struct IndexLabel {
  enum class Kind { unbarred, barred, zero };
  Kind kind = Kind::unbarred;
  int value = 1;  // 0 for the zero label

  static IndexLabel unbarred(int v) { return {Kind::unbarred, v}; }
  static IndexLabel barred(int v) { return {Kind::barred, v}; }
  static IndexLabel zero() { return {Kind::zero, 0}; }

  bool is_zero() const { return kind == Kind::zero; }
  bool is_barred() const { return kind == Kind::barred; }
  IndexLabel bar() const {
    if (kind == Kind::zero) return *this;
    return {kind == Kind::barred ? Kind::unbarred : Kind::barred, value};
  }

  /// "3", "0", "3b".
  std::string str() const {
    if (is_zero()) return "0";
    return std::to_string(value) + (is_barred() ? "b" : "");
  }

  static IndexLabel parse(const std::string& t) {
    if (t == "0") return zero();
    try {
      std::size_t pos = 0;
      int v = std::stoi(t, &pos);
      if (v >= 1 && pos == t.size()) return unbarred(v);
      if (v >= 1 && pos + 1 == t.size() && t[pos] == 'b') return barred(v);
    } catch (const std::logic_error&) {
    }
    throw ParseError("bad index label '" + t + "'");
  }

  friend bool operator==(const IndexLabel&, const IndexLabel&) = default;
};

inline bool valid_label(const AlgebraSpec& spec, const IndexLabel& x) {
  if (x.is_zero()) return spec.is_b();
  return x.value >= 1 && x.value <= spec.rank();
}

/// All labels in enumeration order: unbarred ascending, then 0 (B only), then
/// barred descending. For D, s+r precedes its bar.
inline std::vector<IndexLabel> labels(const AlgebraSpec& spec) {
  std::vector<IndexLabel> out;
  int n = spec.rank();
  for (int v = 1; v <= n; ++v) out.push_back(IndexLabel::unbarred(v));
  if (spec.is_b()) out.push_back(IndexLabel::zero());
  for (int v = n; v >= 1; --v) out.push_back(IndexLabel::barred(v));
  return out;
}

/// Position in the chain 1 < ... < s+r < 0 < bar(s+r) < ... < bar(1).
inline int label_position(const AlgebraSpec& spec, const IndexLabel& x) {
  int n = spec.rank();
  switch (x.kind) {
    case IndexLabel::Kind::unbarred:
      return x.value;
    case IndexLabel::Kind::zero:
      return n + 1;
    case IndexLabel::Kind::barred:
      return 2 * n + 2 - x.value;
  }
  return 0;
}

enum class Order { less, equal, greater, incomparable };

inline Order order_relation(const AlgebraSpec& spec, const IndexLabel& x, const IndexLabel& y) {
  if (x == y) return Order::equal;
  int n = spec.rank();
  if (spec.is_d() && x.value == n && y.value == n && !x.is_zero() && !y.is_zero()) return Order::incomparable;
  int px = label_position(spec, x), py = label_position(spec, y);
  return px < py ? Order::less : Order::greater;
}

inline bool precedes(const AlgebraSpec& spec, const IndexLabel& x, const IndexLabel& y) {
  return order_relation(spec, x, y) == Order::less;
}
inline bool precedes_eq(const AlgebraSpec& spec, const IndexLabel& x, const IndexLabel& y) {
  auto o = order_relation(spec, x, y);
  return o == Order::less || o == Order::equal;
}

/// 1 on J_- (1..s and bars), 0 on J_+ (s+1..s+r, bars, 0).
inline int grading(const AlgebraSpec& spec, const IndexLabel& x) {
  if (x.is_zero()) return 0;
  return x.value <= spec.s ? 1 : 0;
}

inline bool in_j_minus(const AlgebraSpec& spec, const IndexLabel& x) { return grading(spec, x) == 1; }

// ---------------------------------------------------------------- roots

/// Simple root alpha_a in the basis (delta_1..delta_s, eps_1..eps_r).
inline std::vector<int> simple_root(const AlgebraSpec& spec, int a) {
  int s = spec.s, r = spec.r;
  std::vector<int> v(s + r, 0);
  auto delta = [&](int i) -> int& { return v[i - 1]; };
  auto eps = [&](int j) -> int& { return v[s + j - 1]; };
  if (a < 1 || a > s + r) throw std::out_of_range("simple root index");
  if (a < s) {
    delta(a) = 1;
    delta(a + 1) = -1;
  } else if (a == s) {
    delta(s) = 1;
    if (r >= 1) eps(1) = -1;
  } else {
    int j = a - s;
    if (spec.is_b()) {
      eps(j) = 1;
      if (j < r) eps(j + 1) = -1;
    } else if (j < r) {
      eps(j) = 1;
      eps(j + 1) = -1;
    } else {
      eps(r - 1) = 1;
      eps(r) = 1;
    }
  }
  return v;
}

/// (alpha_a | alpha_b) with (eps_i|eps_j) = delta_ij, (delta_i|delta_j) = -delta_ij.
inline Rational bilinear_form(const AlgebraSpec& spec, int a, int b) {
  auto x = simple_root(spec, a), y = simple_root(spec, b);
  std::int64_t acc = 0;
  for (int i = 0; i < spec.s + spec.r; ++i) acc += (i < spec.s ? -1 : 1) * x[i] * y[i];
  return Rational(acc);
}

/// deg(alpha_a): only alpha_s is odd.
inline int root_degree(const AlgebraSpec& spec, int a) { return a == spec.s ? 1 : 0; }

// ---------------------------------------------------------------- weights

using KacDynkinLabel = std::vector<Rational>;

inline std::string label_str(const KacDynkinLabel& b) {
  std::string out = "[";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += ",";
    out += b[i].is_integer() ? std::to_string(b[i].num()) : b[i].str();
  }
  return out + "]";
}

/// Kac-Dynkin label of the highest weight attached to the diagram mu.
/// D supports only single columns (1^a) and single rows (m).
inline KacDynkinLabel kac_dynkin_from_diagram(const AlgebraSpec& spec, const std::vector<int>& mu) {
  int s = spec.s, r = spec.r, n = spec.rank();
  auto part = [&](int i) { return i >= 1 && i <= static_cast<int>(mu.size()) ? mu[i - 1] : 0; };
  auto conj = [&](int j) {
    int c = 0;
    for (int x : mu)
      if (x >= j) ++c;
    return c;
  };
  KacDynkinLabel b(n, Rational(0));
  if (spec.is_b()) {
    if (r == 0) {
      for (int i = 1; i < s; ++i) b[i - 1] = conj(i) - conj(i + 1);
      b[s - 1] = 2 * conj(s);
      return b;
    }
    if (part(r + 1) > s)
      throw UnsupportedShape("Kac-Dynkin label needs mu_{r+1} <= s for " + spec.str());
    auto eta = [&](int i) { return std::max(part(i) - s, 0); };
    for (int i = 1; i < s; ++i) b[i - 1] = conj(i) - conj(i + 1);
    b[s - 1] = conj(s) + eta(1);
    for (int j = 1; j < r; ++j) b[s + j - 1] = eta(j) - eta(j + 1);
    b[n - 1] = 2 * eta(r);
    return b;
  }
  int total = 0;
  for (int x : mu) total += x;
  if (total == 0) return b;
  bool column = std::all_of(mu.begin(), mu.end(), [](int x) { return x == 1; });
  if (column) {
    b[0] = static_cast<std::int64_t>(mu.size());
    return b;
  }
  if (mu.size() != 1) throw UnsupportedShape("D Kac-Dynkin label only for shapes (1^a) or (m)");
  int m = mu[0];
  if (m <= s) {
    b[m - 1] = 1;
  } else {
    b[s - 1] = m - s + 1;
    b[s] = m - s;
    if (r == 2) b[s + 1] = m - s;
  }
  return b;
}

/// Dimension of the irreducible B(0|s) module with label [b_1..b_s].
inline mpz_class dimension_b0s(int s, const KacDynkinLabel& label) {
  if (static_cast<int>(label.size()) != s) throw std::invalid_argument("label length must equal s");
  std::vector<mpz_class> b(s + 1);
  for (int i = 1; i <= s; ++i) {
    const Rational& x = label[i - 1];
    if (!x.is_integer() || x.num() < 0) throw NotFiniteDimensional("label " + label_str(label) + " not finite");
    b[i] = static_cast<long>(x.num());
  }
  if (b[s] % 2 != 0) throw NotFiniteDimensional("b_s must be even: " + label_str(label));
  auto sum = [&](int from, int to) {  // b_from + ... + b_to, empty if from > to
    mpz_class acc = 0;
    for (int k = from; k <= to; ++k) acc += b[k];
    return acc;
  };
  mpq_class d = 1;
  for (int i = 1; i <= s; ++i)
    for (int j = i + 1; j <= s; ++j) {
      d *= mpq_class(sum(i, j - 1) + (j - i), j - i);
      d *= mpq_class(sum(i, j - 1) + 2 * sum(j, s - 1) + b[s] + (2 * s - i - j + 1), 2 * s - i - j + 1);
    }
  for (int k = 1; k <= s; ++k) d *= mpq_class(2 * sum(k, s - 1) + b[s] + (2 * s - 2 * k + 1), 2 * s - 2 * k + 1);
  d.canonicalize();
  if (d.get_den() != 1) throw std::logic_error("non-integer dimension");
  return d.get_num();
}

}  // namespace bethe_dvf
