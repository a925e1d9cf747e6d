#pragma once

#include <stdexcept>
#include <string>

namespace minred {

// Exit-code classes used by the CLI: parse (1), math (2), inconclusive (3).
struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int l, int c)
      : std::runtime_error(msg), line(l), column(c) {}
};

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Inconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularModel : MathError {
  using MathError::MathError;
};

struct KrausConditionFailed : MathError {
  using MathError::MathError;
};

struct PointNotOnCurve : MathError {
  using MathError::MathError;
};

struct SingularPoint : MathError {
  using MathError::MathError;
};

struct NotSaturated : MathError {
  using MathError::MathError;
};

struct NotCritical : MathError {
  using MathError::MathError;
};

struct NumericFailure : Inconclusive {
  using Inconclusive::Inconclusive;
};

}  // namespace minred
