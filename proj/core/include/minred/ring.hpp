#pragma once

#include "minred/arith.hpp"
#include "minred/errors.hpp"

namespace minred {

// Rings are stateless or context objects exposing
//   T zero(), one(), from_int(long), add, sub, neg, mul, inv, is_zero, is_unit.
// inv throws when the element is not a unit.
struct RatRing {
  using T = Rat;
  T zero() const { return Rat(0); }
  T one() const { return Rat(1); }
  T from_int(long a) const { return Rat(a); }
  T from_rat(const Rat& a) const { return a; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T neg(const T& a) const { return -a; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const {
    if (a == 0) throw MathError("division by zero");
    return 1 / a;
  }
  bool is_zero(const T& a) const { return a == 0; }
  bool is_unit(const T& a) const { return a != 0; }
};

}  // namespace minred
