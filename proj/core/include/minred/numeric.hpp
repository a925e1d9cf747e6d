#pragma once

#include <array>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "minred/arith.hpp"
#include "minred/matrix.hpp"

namespace minred {

// Variable-precision real and complex arithmetic on top of MPFR.
using Real = boost::multiprecision::mpfr_float;

struct Complex {
  Real re, im;
  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
inline Complex& operator+=(Complex& a, const Complex& b) { return a = a + b; }
inline Complex& operator-=(Complex& a, const Complex& b) { return a = a - b; }
inline Complex& operator*=(Complex& a, const Complex& b) { return a = a * b; }
Complex conj(const Complex& a);
Real norm(const Complex& a);  // |a|^2
Real abs(const Complex& a);
Complex polar_unit(const Real& theta);  // exp(i theta)

Real to_real(const Rat& x);
Complex to_complex(const Rat& x);

// Sets the working precision in bits for values created afterwards and
// restores the previous precision on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;
  static Real epsilon();  // 2^-bits of the active scope

 private:
  unsigned saved_;
};

using CMat = Mat<Complex>;
using RMat = Mat<Real>;

CMat c_mul(const CMat& a, const CMat& b);
// Inverse by Gaussian elimination with partial pivoting; throws NumericFailure
// when a pivot is below tol times the largest entry.
CMat c_inverse(const CMat& m, const Real& tol);
// Basis (as columns) of an approximate kernel of dimension `dim`, from
// elimination with complete pivoting. The ratio of the last accepted pivot to
// the largest one is returned through `gap` when non-null.
CMat c_null_space(const CMat& m, int dim, Real* last_pivot = nullptr, Real* next_pivot = nullptr);

// Characteristic polynomial, coefficients from degree 0 up (monic).
std::vector<Complex> char_poly(const CMat& m);

// All complex roots of a polynomial (coefficients from degree 0 up) by
// simultaneous Aberth iteration followed by Newton polishing.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);
Complex poly_eval(const std::vector<Complex>& coeffs, const Complex& z);

// Jacobi eigen-decomposition of a real symmetric matrix: eigenvalues
// ascending, eigenvectors as the matching columns of `vectors`.
void symmetric_eigen(const RMat& s, std::vector<Real>& values, RMat& vectors);

}  // namespace minred
