#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "root_systems.hpp"

namespace bethe_dvf {

/// Weakly decreasing parts with trailing zeros trimmed.
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<int> parts) : parts_(std::move(parts)) {  // NOLINT(implicit)
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw ParseError("negative part in partition");
      if (i && parts_[i] > parts_[i - 1]) throw ParseError("partition parts must be weakly decreasing");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  /// a rows of length m.
  static Partition rectangle(int m, int a) {
    if (m <= 0 || a <= 0) return {};
    return Partition(std::vector<int>(a, m));
  }

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  /// 1-based part, 0 beyond the length.
  int operator[](int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }
  int size() const {
    int n = 0;
    for (int p : parts_) n += p;
    return n;
  }
  bool empty() const { return parts_.empty(); }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "," : "") + std::to_string(parts_[i]);
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

inline Partition conjugate(const Partition& p) {
  std::vector<int> c(p[1], 0);
  for (int x : p.parts())
    for (int j = 0; j < x; ++j) ++c[j];
  return Partition(std::move(c));
}

struct Cell {
  int i = 1;  // row, grows downward
  int j = 1;  // column, grows rightward
  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// lambda inside mu; cells are those of mu not in lambda.
struct SkewDiagram {
  Partition lambda;
  Partition mu;

  SkewDiagram() = default;
  SkewDiagram(Partition mu_) : mu(std::move(mu_)) {}  // NOLINT(implicit)
  SkewDiagram(Partition lambda_, Partition mu_) : lambda(std::move(lambda_)), mu(std::move(mu_)) {
    for (int i = 1; i <= std::max(lambda.length(), mu.length()); ++i)
      if (lambda[i] > mu[i]) throw ParseError("skew diagram needs lambda inside mu");
  }

  bool is_straight() const { return lambda.empty(); }
  bool contains(int i, int j) const { return i >= 1 && j > lambda[i] && j <= mu[i]; }

  /// Row-major cell list.
  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    for (int i = 1; i <= mu.length(); ++i)
      for (int j = lambda[i] + 1; j <= mu[i]; ++j) out.push_back({i, j});
    return out;
  }
  int cell_count() const { return mu.size() - lambda.size(); }

  std::string str() const { return lambda.empty() ? mu.str() : mu.str() + "/" + lambda.str(); }

  friend bool operator==(const SkewDiagram&, const SkewDiagram&) = default;
};

namespace detail {

inline Partition parse_partition(const std::string& t) {
  std::string s;
  for (char c : t)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "0") return {};
  try {
    auto caret = s.find('^');
    if (caret != std::string::npos) {
      std::size_t p1 = 0, p2 = 0;
      int m = std::stoi(s.substr(0, caret), &p1);
      int a = std::stoi(s.substr(caret + 1), &p2);
      if (p1 != caret || p2 != s.size() - caret - 1 || m < 0 || a < 0) throw ParseError("bad shape " + t);
      return Partition::rectangle(m, a);
    }
    std::vector<int> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t p = 0;
      int x = std::stoi(item, &p);
      if (p != item.size()) throw ParseError("bad shape " + t);
      parts.push_back(x);
    }
    return Partition(parts);
  } catch (const std::logic_error&) {
    throw ParseError("bad shape '" + t + "'");
  }
}

}  // namespace detail

/// Grammar: "m^a" (a rows of length m), "3,2,1", "outer/inner" e.g. "3,1/1".
inline SkewDiagram parse_shape(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return SkewDiagram(detail::parse_partition(text));
  return SkewDiagram(detail::parse_partition(text.substr(slash + 1)), detail::parse_partition(text.substr(0, slash)));
}

struct Tableau {
  SkewDiagram shape;
  std::vector<Cell> cells;          // row-major
  std::vector<IndexLabel> entries;  // aligned with cells

  const IndexLabel& at(int i, int j) const {
    for (std::size_t k = 0; k < cells.size(); ++k)
      if (cells[k].i == i && cells[k].j == j) return entries[k];
    throw std::out_of_range("cell outside tableau");
  }
};

// ---------------------------------------------------------------- rules

/// Pairwise admissibility tables over label indices (positions in labels(spec)).
class AdmissibilityRules {
 public:
  AdmissibilityRules(const AlgebraSpec& spec, const SkewDiagram& shape) : spec_(spec), labels_(labels(spec)) {
    std::size_t n = labels_.size();
    if (spec.is_d()) {
      if (!shape.is_straight()) throw UnsupportedShape("D(r|s) admissibility is only defined for straight shapes");
      const auto& p = shape.mu.parts();
      bool column = std::all_of(p.begin(), p.end(), [](int x) { return x == 1; });
      if (!column && p.size() != 1)
        throw UnsupportedShape("D(r|s) admissibility is only defined for shapes (1^a) or (m); got " + shape.str());
      d_row_ = !column;
    }
    hor_.assign(n * n, 0);
    ver_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        hor_[a * n + b] = horizontal(labels_[a], labels_[b]);
        ver_[a * n + b] = vertical(labels_[a], labels_[b]);
      }
    int top = spec.rank();
    for (std::size_t a = 0; a < n; ++a) {
      if (spec.is_d() && labels_[a].value == top && !labels_[a].is_zero())
        (labels_[a].is_barred() ? top_bar_ : top_) = static_cast<int>(a);
    }
  }

  const AlgebraSpec& spec() const { return spec_; }
  const std::vector<IndexLabel>& label_list() const { return labels_; }
  std::size_t label_count() const { return labels_.size(); }
  /// x immediately left of y.
  bool hor(int x, int y) const { return hor_[x * labels_.size() + y]; }
  /// x immediately above y.
  bool ver(int x, int y) const { return ver_[x * labels_.size() + y]; }
  /// D rows may not contain both s+r and its bar.
  bool d_row_rule() const { return d_row_; }
  int top() const { return top_; }
  int top_bar() const { return top_bar_; }

  int index_of(const IndexLabel& x) const {
    for (std::size_t a = 0; a < labels_.size(); ++a)
      if (labels_[a] == x) return static_cast<int>(a);
    throw std::invalid_argument("label " + x.str() + " not valid for " + spec_.str());
  }

 private:
  AlgebraSpec spec_;
  std::vector<IndexLabel> labels_;
  std::vector<char> hor_, ver_;
  bool d_row_ = false;
  int top_ = -1, top_bar_ = -1;

  bool horizontal(const IndexLabel& x, const IndexLabel& y) const {
    if (spec_.is_b()) {
      if (!precedes_eq(spec_, x, y)) return false;
      if (in_j_minus(spec_, x) || x.is_zero()) return precedes(spec_, x, y);
      return true;
    }
    // D rows: weak into J_+, strict into J_-
    return in_j_minus(spec_, y) ? precedes(spec_, x, y) : precedes_eq(spec_, x, y);
  }

  bool vertical(const IndexLabel& x, const IndexLabel& y) const {
    if (spec_.is_b()) {
      if (!precedes_eq(spec_, x, y)) return false;
      if (!in_j_minus(spec_, x) && !x.is_zero()) return precedes(spec_, x, y);
      return true;
    }
    // D columns: weak into J_-, strict into J_+ except the (s+r, bar s+r) pairs
    if (in_j_minus(spec_, y)) return precedes_eq(spec_, x, y);
    if (order_relation(spec_, x, y) == Order::incomparable) return true;
    return precedes(spec_, x, y);
  }
};

inline bool is_admissible(const AlgebraSpec& spec, const Tableau& t) {
  AdmissibilityRules rules(spec, t.shape);
  std::map<Cell, int> idx;
  for (std::size_t k = 0; k < t.cells.size(); ++k) {
    if (!t.shape.contains(t.cells[k].i, t.cells[k].j)) return false;
    if (!valid_label(spec, t.entries[k])) return false;
    idx[t.cells[k]] = rules.index_of(t.entries[k]);
  }
  if (static_cast<int>(idx.size()) != t.shape.cell_count()) return false;
  for (const auto& [c, x] : idx) {
    auto right = idx.find({c.i, c.j + 1});
    if (right != idx.end() && !rules.hor(x, right->second)) return false;
    auto below = idx.find({c.i + 1, c.j});
    if (below != idx.end() && !rules.ver(x, below->second)) return false;
  }
  if (rules.d_row_rule()) {
    bool has_top = false, has_bar = false;
    for (const auto& [c, x] : idx) {
      has_top |= x == rules.top();
      has_bar |= x == rules.top_bar();
    }
    if (has_top && has_bar) return false;
  }
  return true;
}

/// Calls f(const std::vector<int>& label_indices) for every admissible
/// filling, cells in row-major order, labels tried in enumeration order.
template <class F>
void for_each_filling(const AdmissibilityRules& rules, const SkewDiagram& shape, F&& f) {
  const auto cells = shape.cells();
  const int nc = static_cast<int>(cells.size());
  const int nl = static_cast<int>(rules.label_count());
  std::vector<int> left(nc, -1), up(nc, -1);
  for (int k = 0; k < nc; ++k)
    for (int m = 0; m < k; ++m) {
      if (cells[m].i == cells[k].i && cells[m].j == cells[k].j - 1) left[k] = m;
      if (cells[m].i == cells[k].i - 1 && cells[m].j == cells[k].j) up[k] = m;
    }
  std::vector<int> fill(nc, 0);
  int tops = 0, bars = 0;
  auto rec = [&](auto&& self, int k) -> void {
    if (k == nc) {
      f(static_cast<const std::vector<int>&>(fill));
      return;
    }
    for (int x = 0; x < nl; ++x) {
      if (left[k] >= 0 && !rules.hor(fill[left[k]], x)) continue;
      if (up[k] >= 0 && !rules.ver(fill[up[k]], x)) continue;
      if (rules.d_row_rule()) {
        if (x == rules.top() && bars) continue;
        if (x == rules.top_bar() && tops) continue;
      }
      fill[k] = x;
      tops += x == rules.top();
      bars += x == rules.top_bar();
      self(self, k + 1);
      tops -= x == rules.top();
      bars -= x == rules.top_bar();
    }
  };
  rec(rec, 0);
}

template <class F>
void for_each_tableau(const AlgebraSpec& spec, const SkewDiagram& shape, F&& f) {
  AdmissibilityRules rules(spec, shape);
  Tableau t;
  t.shape = shape;
  t.cells = shape.cells();
  t.entries.resize(t.cells.size());
  for_each_filling(rules, shape, [&](const std::vector<int>& fill) {
    for (std::size_t k = 0; k < fill.size(); ++k) t.entries[k] = rules.label_list()[fill[k]];
    f(static_cast<const Tableau&>(t));
  });
}

inline std::vector<Tableau> enumerate_tableaux(const AlgebraSpec& spec, const SkewDiagram& shape) {
  std::vector<Tableau> out;
  for_each_tableau(spec, shape, [&](const Tableau& t) { out.push_back(t); });
  return out;
}

/// Number of admissible tableaux, by dynamic programming over rows.
inline std::uint64_t count_tableaux(const AlgebraSpec& spec, const SkewDiagram& shape) {
  AdmissibilityRules rules(spec, shape);
  const int rows = shape.mu.length();
  const int nl = static_cast<int>(rules.label_count());
  std::map<std::pair<int, std::vector<int>>, std::uint64_t> memo;

  // prev: labels of row i-1 indexed by column (-1 outside the diagram)
  auto count_from = [&](auto&& self, int i, const std::vector<int>& prev) -> std::uint64_t {
    if (i > rows) return 1;
    auto key = std::pair(i, prev);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int lo = shape.lambda[i] + 1, hi = shape.mu[i];
    std::vector<int> row(shape.mu[1] + 1, -1);
    std::uint64_t total = 0;
    int tops = 0, bars = 0;
    auto fill = [&](auto&& fself, int j) -> void {
      if (j > hi) {
        std::uint64_t c = self(self, i + 1, row);
        if (__builtin_add_overflow(total, c, &total)) throw std::overflow_error("tableau count overflow");
        return;
      }
      for (int x = 0; x < nl; ++x) {
        if (j > lo && !rules.hor(row[j - 1], x)) continue;
        if (j < static_cast<int>(prev.size()) && prev[j] >= 0 && !rules.ver(prev[j], x)) continue;
        if (rules.d_row_rule()) {
          if (x == rules.top() && bars) continue;
          if (x == rules.top_bar() && tops) continue;
        }
        row[j] = x;
        tops += x == rules.top();
        bars += x == rules.top_bar();
        fself(fself, j + 1);
        tops -= x == rules.top();
        bars -= x == rules.top_bar();
      }
      row[j] = -1;
    };
    fill(fill, lo);
    memo.emplace(key, total);
    return total;
  };
  return count_from(count_from, 1, std::vector<int>(shape.mu[1] + 1, -1));
}

}  // namespace bethe_dvf
