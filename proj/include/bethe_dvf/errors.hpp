#pragma once

#include <stdexcept>
#include <string>

namespace bethe_dvf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct UnsupportedShape : Error {
  using Error::Error;
};

struct WrongAlgebra : Error {
  using Error::Error;
};

struct NotFiniteDimensional : Error {
  using Error::Error;
};

struct PoleHit : Error {
  int color;  // 0 for a phi factor
  std::string shift;
  PoleHit(int c, std::string s)
      : Error("pole hit at " + (c == 0 ? std::string("phi") : "Q_" + std::to_string(c)) + "(u+" + s + ")"),
        color(c),
        shift(std::move(s)) {}
};

struct SamplingExhausted : Error {
  using Error::Error;
};

struct HigherOrderPole : Error {
  using Error::Error;
};

struct GenericityViolation : Error {
  using Error::Error;
};

struct TruncationTooSmall : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

struct NoSolutionFound : Error {
  using Error::Error;
};

struct OddSpinLabel : Error {
  using Error::Error;
};

}  // namespace bethe_dvf
