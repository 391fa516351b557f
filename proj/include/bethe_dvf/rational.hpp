#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "errors.hpp"

namespace bethe_dvf {

/// Small exact rational on int64 with overflow checks. Used for shifts and
/// term coefficients; evaluation uses mpq_class instead.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return Rational(neg(num_), den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    std::int64_t g = std::gcd(a.den_, b.den_);
    std::int64_t da = a.den_ / g;
    std::int64_t db = b.den_ / g;
    return Rational(add(mul(a.num_, db), mul(b.num_, da)), mul(a.den_, db));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rational(mul(a.num_ / g1, b.num_ / g2), mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DivisionByZero("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // cross-multiply in 128 bits; denominators are positive
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  /// Always "p/q", including integers ("3/1").
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Accepts "p" or "p/q".
  static Rational parse(std::string_view s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string_view::npos) return Rational(std::stoll(std::string(s)));
      std::size_t pos = 0;
      std::string ns(s.substr(0, slash)), ds(s.substr(slash + 1));
      std::int64_t n = std::stoll(ns, &pos);
      if (pos != ns.size()) throw ParseError("bad rational: " + std::string(s));
      std::int64_t d = std::stoll(ds, &pos);
      if (pos != ds.size() || d == 0) throw ParseError("bad rational: " + std::string(s));
      return Rational(n, d);
    } catch (const std::logic_error&) {
      throw ParseError("bad rational: " + std::string(s));
    }
  }

  mpq_class to_mpq() const {
    mpq_class q(mpz_class(std::to_string(num_)), mpz_class(std::to_string(den_)));
    q.canonicalize();
    return q;
  }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;

  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational overflow");
    return r;
  }
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational overflow");
    return r;
  }
  static std::int64_t neg(std::int64_t a) { return mul(a, -1); }

  void normalize() {
    if (den_ == 0) throw DivisionByZero("rational with zero denominator");
    if (den_ < 0) {
      num_ = neg(num_);
      den_ = neg(den_);
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }
};

}  // namespace bethe_dvf
