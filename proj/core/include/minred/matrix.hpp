#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "minred/arith.hpp"
#include "minred/errors.hpp"

namespace minred {

// Dense row-major matrix. Arithmetic goes through a ring context R (see ring.hpp).
template <class T>
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c, const T& fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  std::vector<T> row(int i) const {
    return std::vector<T>(a.begin() + static_cast<long>(i) * cols, a.begin() + static_cast<long>(i + 1) * cols);
  }
  std::vector<T> col(int j) const {
    std::vector<T> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void swap_rows(int i, int k) {
    if (i == k) return;
    for (int j = 0; j < cols; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }
  void swap_cols(int j, int k) {
    if (j == k) return;
    for (int i = 0; i < rows; ++i) std::swap((*this)(i, j), (*this)(i, k));
  }
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

template <class T>
Mat<T> transpose(const Mat<T>& m) {
  Mat<T> t(m.cols, m.rows, T());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
  return t;
}

template <class T, class F>
auto map_mat(const Mat<T>& m, F f) {
  using U = decltype(f(m.a[0]));
  Mat<U> r;
  r.rows = m.rows;
  r.cols = m.cols;
  r.a.reserve(m.a.size());
  for (const auto& x : m.a) r.a.push_back(f(x));
  return r;
}

template <class R>
Mat<typename R::T> zero_mat(const R& ring, int r, int c) {
  return Mat<typename R::T>(r, c, ring.zero());
}

template <class R>
Mat<typename R::T> identity_mat(const R& ring, int n) {
  auto m = zero_mat(ring, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

template <class R>
Mat<typename R::T> mat_mul(const R& ring, const Mat<typename R::T>& x, const Mat<typename R::T>& y) {
  if (x.cols != y.rows) throw MathError("matrix dimension mismatch");
  auto z = zero_mat(ring, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const auto& xik = x(i, k);
      if (ring.is_zero(xik)) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) = ring.add(z(i, j), ring.mul(xik, y(k, j)));
    }
  return z;
}

template <class R>
std::vector<typename R::T> mat_vec(const R& ring, const Mat<typename R::T>& x, const std::vector<typename R::T>& v) {
  std::vector<typename R::T> r(x.rows, ring.zero());
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) r[i] = ring.add(r[i], ring.mul(x(i, k), v[k]));
  return r;
}

// Row vector times matrix.
template <class R>
std::vector<typename R::T> vec_mat(const R& ring, const std::vector<typename R::T>& v, const Mat<typename R::T>& x) {
  std::vector<typename R::T> r(x.cols, ring.zero());
  for (int k = 0; k < x.rows; ++k) {
    if (ring.is_zero(v[k])) continue;
    for (int j = 0; j < x.cols; ++j) r[j] = ring.add(r[j], ring.mul(v[k], x(k, j)));
  }
  return r;
}

// In-place reduced row echelon form. Pivots are the first nonzero entry in
// each column scan; inv() may throw for rings with zero divisors.
template <class R>
int rref(const R& ring, Mat<typename R::T>& m, std::vector<int>* pivots = nullptr) {
  int r = 0;
  if (pivots) pivots->clear();
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int piv = -1;
    for (int i = r; i < m.rows; ++i)
      if (!ring.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.swap_rows(r, piv);
    auto inv = ring.inv(m(r, c));
    for (int j = c; j < m.cols; ++j) m(r, j) = ring.mul(m(r, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || ring.is_zero(m(i, c))) continue;
      auto f = m(i, c);
      for (int j = c; j < m.cols; ++j) m(i, j) = ring.sub(m(i, j), ring.mul(f, m(r, j)));
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

template <class R>
int rank_of(const R& ring, Mat<typename R::T> m) {
  return rref(ring, m);
}

// Basis of the right null space, returned as the columns of a cols x k matrix.
template <class R>
Mat<typename R::T> kernel(const R& ring, Mat<typename R::T> m) {
  std::vector<int> piv;
  int rk = rref(ring, m, &piv);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  int k = m.cols - rk;
  auto ker = zero_mat(ring, m.cols, k);
  int t = 0;
  for (int f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    ker(f, t) = ring.one();
    for (int i = 0; i < rk; ++i) ker(piv[i], t) = ring.neg(m(i, f));
    ++t;
  }
  return ker;
}

template <class R>
typename R::T det(const R& ring, Mat<typename R::T> m) {
  if (m.rows != m.cols) throw MathError("determinant of non-square matrix");
  auto d = ring.one();
  int n = m.rows;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (!ring.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) return ring.zero();
    if (piv != c) {
      m.swap_rows(c, piv);
      d = ring.neg(d);
    }
    d = ring.mul(d, m(c, c));
    auto inv = ring.inv(m(c, c));
    for (int i = c + 1; i < n; ++i) {
      if (ring.is_zero(m(i, c))) continue;
      auto f = ring.mul(m(i, c), inv);
      for (int j = c; j < n; ++j) m(i, j) = ring.sub(m(i, j), ring.mul(f, m(c, j)));
    }
  }
  return d;
}

template <class R>
Mat<typename R::T> inverse(const R& ring, const Mat<typename R::T>& m) {
  int n = m.rows;
  if (n != m.cols) throw MathError("inverse of non-square matrix");
  auto aug = zero_mat(ring, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = ring.one();
  }
  std::vector<int> piv;
  rref(ring, aug, &piv);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) throw MathError("singular matrix");
  auto r = zero_mat(ring, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

// Integer determinant by fraction-free (Bareiss) elimination.
Int det_int(IntMat m);
RatMat to_rat(const IntMat& m);
// Exact integer matrix if all entries are integers; throws MathError otherwise.
IntMat to_int(const RatMat& m);
bool is_integral(const RatMat& m);
IntMat int_identity(int n);
IntMat int_mul(const IntMat& x, const IntMat& y);
RatMat rat_identity(int n);
RatMat rat_mul(const RatMat& x, const RatMat& y);
RatMat rat_inverse(const RatMat& m);
Rat rat_det(const RatMat& m);

}  // namespace minred
