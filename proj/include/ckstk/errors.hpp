#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ckstk {

// Base class for every numeric/domain error thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidTolerance : public Error {
public:
  explicit InvalidTolerance(const std::string& msg) : Error(msg) {}
};

// Series still growing when the term budget ran out: the evaluation point is
// outside the safe range for the available depth.
class NonDecreasingTail : public Error {
public:
  explicit NonDecreasingTail(const std::string& msg) : Error(msg) {}
};

// Table shows no n-th-root decay; the series it would feed is not entire.
class DivergentProfile : public Error {
public:
  explicit DivergentProfile(const std::string& msg) : Error(msg) {}
};

// Bracket expansion hit the configured range without enclosing an interior
// extremum. `side` tells which edge was still improving.
class NoBracket : public Error {
public:
  enum class Side { Left, Right };
  NoBracket(const std::string& msg, Side s) : Error(msg), side(s) {}
  Side side;
};

class NonFinite : public Error {
public:
  explicit NonFinite(const std::string& msg) : Error(msg) {}
};

class BadParam : public Error {
public:
  explicit BadParam(const std::string& msg) : Error(msg) {}
};

// Evaluation would leave the representable range (iterated exponentials).
class OverflowDomain : public Error {
public:
  explicit OverflowDomain(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t pos, std::string expected_tokens)
      : Error(msg), position(pos), expected(std::move(expected_tokens)) {}
  std::size_t position;
  std::string expected;
};

class NonPositive : public Error {
public:
  NonPositive(const std::string& msg, double probe_r) : Error(msg), at(probe_r) {}
  double at;
};

class EvalFailure : public Error {
public:
  explicit EvalFailure(const std::string& msg) : Error(msg) {}
};

class TooShort : public Error {
public:
  explicit TooShort(const std::string& msg) : Error(msg) {}
};

class LengthMismatch : public Error {
public:
  explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

// Accumulated error estimate of a series composition exceeded its budget, or
// a coefficient left the representable range.
class PrecisionLoss : public Error {
public:
  explicit PrecisionLoss(const std::string& msg) : Error(msg) {}
};

}  // namespace ckstk
