#include "minred/matrix.hpp"

#include "minred/ring.hpp"

namespace minred {

Int det_int(IntMat m) {
  int n = m.rows;
  if (n != m.cols) throw MathError("determinant of non-square matrix");
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      m.swap_rows(k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = t;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

RatMat to_rat(const IntMat& m) {
  return map_mat(m, [](const Int& x) { return Rat(x); });
}

bool is_integral(const RatMat& m) {
  for (const auto& x : m.a)
    if (x.get_den() != 1) return false;
  return true;
}

IntMat to_int(const RatMat& m) {
  if (!is_integral(m)) throw MathError("matrix is not integral");
  return map_mat(m, [](const Rat& x) { return Int(x.get_num()); });
}

IntMat int_identity(int n) {
  IntMat r(n, n, Int(0));
  for (int i = 0; i < n; ++i) r(i, i) = 1;
  return r;
}

IntMat int_mul(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw MathError("matrix dimension mismatch");
  IntMat z(x.rows, y.cols, Int(0));
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

RatMat rat_identity(int n) { return identity_mat(RatRing{}, n); }
RatMat rat_mul(const RatMat& x, const RatMat& y) { return mat_mul(RatRing{}, x, y); }
RatMat rat_inverse(const RatMat& m) { return inverse(RatRing{}, m); }
Rat rat_det(const RatMat& m) { return det(RatRing{}, m); }

}  // namespace minred
