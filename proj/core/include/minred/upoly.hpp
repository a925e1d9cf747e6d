#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "minred/arith.hpp"
#include "minred/errors.hpp"

namespace minred {

// Dense univariate polynomial over Q, coefficients low degree first, no
// trailing zeros (the zero polynomial is empty).
struct UPoly {
  std::vector<Rat> c;

  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
  static UPoly constant(const Rat& a) { return UPoly(std::vector<Rat>{a}); }
  static UPoly x() { return UPoly(std::vector<Rat>{Rat(0), Rat(1)}); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Rat coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : Rat(0); }
  const Rat& lead() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  Rat eval(const Rat& t) const;
  std::string str(const char* var = "t") const;
};

bool operator==(const UPoly& a, const UPoly& b);
UPoly operator+(const UPoly& a, const UPoly& b);
UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);
UPoly operator*(const Rat& s, const UPoly& a);
// Quotient and remainder; b nonzero.
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly operator%(const UPoly& a, const UPoly& b);
UPoly monic(const UPoly& a);
UPoly gcd(const UPoly& a, const UPoly& b);
// Returns monic g = gcd(a, b) and s with s*a == g mod b.
UPoly xgcd_inverse_part(const UPoly& a, const UPoly& b, UPoly& s);
UPoly derivative(const UPoly& a);
bool is_squarefree(const UPoly& a);
// Interpolate the unique polynomial of degree < n through (xs[i], ys[i]).
UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);
// Resultant of two polynomials over Q (Euclidean algorithm).
Rat resultant(const UPoly& a, const UPoly& b);

// Thrown when an element of Q[t]/(f) is a nonzero non-unit; `factor` is a
// monic proper factor of f (gcd with the element).
struct ZeroDivisor : MathError {
  UPoly factor;
  explicit ZeroDivisor(UPoly g) : MathError("zero divisor in quotient algebra"), factor(std::move(g)) {}
};

// The etale algebra Q[t]/(f), f monic squarefree.
class QAlg {
 public:
  using T = std::vector<Rat>;  // representative, size deg f

  explicit QAlg(const UPoly& f);
  const UPoly& modulus() const { return f_; }
  int degree() const { return f_.degree(); }

  T zero() const { return T(n_, Rat(0)); }
  T one() const {
    T r = zero();
    r[0] = 1;
    return r;
  }
  T from_int(long a) const {
    T r = zero();
    r[0] = a;
    return r;
  }
  T from_rat(const Rat& a) const {
    T r = zero();
    r[0] = a;
    return r;
  }
  T gen() const;
  T add(const T& a, const T& b) const;
  T sub(const T& a, const T& b) const;
  T neg(const T& a) const;
  T mul(const T& a, const T& b) const;
  // Throws ZeroDivisor for nonzero non-units.
  T inv(const T& a) const;
  bool is_zero(const T& a) const;
  bool is_unit(const T& a) const;
  // True when the representative is a constant; then `out` receives it.
  bool is_constant(const T& a, Rat& out) const;
  UPoly to_poly(const T& a) const;
  T from_poly(const UPoly& p) const;

 private:
  UPoly f_;
  Int f_den_;               // lcm of the denominators of f
  std::vector<Int> f_int_;  // f * f_den_, low degree first
  int n_;
};

}  // namespace minred
