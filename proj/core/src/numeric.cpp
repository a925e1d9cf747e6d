#include "minred/numeric.hpp"

#include <algorithm>

namespace minred {

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator/(const Complex& a, const Complex& b) {
  Real d = b.re * b.re + b.im * b.im;
  if (d == 0) throw NumericFailure("complex division by zero");
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Complex conj(const Complex& a) { return {a.re, -a.im}; }
Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
Real abs(const Complex& a) { return sqrt(norm(a)); }
Complex polar_unit(const Real& theta) { return {cos(theta), sin(theta)}; }

Real to_real(const Rat& x) {
  Real n(x.get_num().get_str()), d(x.get_den().get_str());
  return n / d;
}
Complex to_complex(const Rat& x) { return Complex(to_real(x)); }

PrecisionScope::PrecisionScope(int bits) : saved_(Real::default_precision()) {
  // mpfr_float precision is in decimal digits.
  Real::default_precision(static_cast<unsigned>(bits * 0.30103) + 2);
}
PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }
Real PrecisionScope::epsilon() {
  const unsigned digits = Real::default_precision();
  return pow(Real(10), -static_cast<int>(digits) + 2);
}

CMat c_mul(const CMat& a, const CMat& b) {
  if (a.cols != b.rows) throw MathError("matrix dimension mismatch");
  CMat c(a.rows, b.cols, Complex());
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k)
      for (int j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

CMat c_inverse(const CMat& m, const Real& tol) {
  const int n = m.rows;
  CMat a = m, inv(n, n, Complex());
  for (int i = 0; i < n; ++i) inv(i, i) = Complex(1);
  Real scale = 0;
  for (const auto& x : m.a) scale = max(scale, abs(x));
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int i = c + 1; i < n; ++i)
      if (norm(a(i, c)) > norm(a(piv, c))) piv = i;
    if (abs(a(piv, c)) <= tol * scale) throw NumericFailure("matrix is numerically singular");
    a.swap_rows(c, piv);
    inv.swap_rows(c, piv);
    const Complex f = Complex(1) / a(c, c);
    for (int j = 0; j < n; ++j) {
      a(c, j) *= f;
      inv(c, j) *= f;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c) continue;
      const Complex g = a(i, c);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= g * a(c, j);
        inv(i, j) -= g * inv(c, j);
      }
    }
  }
  return inv;
}

CMat c_null_space(const CMat& m, int dim, Real* last_pivot, Real* next_pivot) {
  CMat a = m;
  const int rank = m.cols - dim;
  if (rank < 0 || rank > m.rows) throw MathError("impossible kernel dimension");
  std::vector<int> colperm(m.cols);
  for (int j = 0; j < m.cols; ++j) colperm[j] = j;
  Real top = 0;
  for (const auto& x : a.a) top = max(top, abs(x));
  if (top == 0) top = 1;
  for (int r = 0; r < rank; ++r) {
    int pi = r, pj = r;
    Real best = -1;
    for (int i = r; i < a.rows; ++i)
      for (int j = r; j < a.cols; ++j)
        if (Real v = norm(a(i, j)); v > best) {
          best = v;
          pi = i;
          pj = j;
        }
    a.swap_rows(r, pi);
    a.swap_cols(r, pj);
    std::swap(colperm[r], colperm[pj]);
    if (r == rank - 1 && last_pivot) *last_pivot = sqrt(best) / top;
    const Complex f = Complex(1) / a(r, r);
    for (int j = r; j < a.cols; ++j) a(r, j) *= f;
    for (int i = 0; i < a.rows; ++i) {
      if (i == r) continue;
      const Complex g = a(i, r);
      if (g.re == 0 && g.im == 0) continue;
      for (int j = r; j < a.cols; ++j) a(i, j) -= g * a(r, j);
    }
  }
  if (next_pivot) {
    Real rest = 0;
    for (int i = rank; i < a.rows; ++i)
      for (int j = rank; j < a.cols; ++j) rest = max(rest, abs(a(i, j)));
    *next_pivot = rest / top;
  }
  // Kernel of [I | F] (permuted): free column t gives e_t - F_{.,t}.
  CMat ker(m.cols, dim, Complex());
  for (int t = 0; t < dim; ++t) {
    ker(colperm[rank + t], t) = Complex(1);
    for (int i = 0; i < rank; ++i) ker(colperm[i], t) = -a(i, rank + t);
  }
  return ker;
}

std::vector<Complex> char_poly(const CMat& m) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  const int n = m.rows;
  std::vector<Complex> c(n + 1);
  c[n] = Complex(1);
  CMat mk(n, n, Complex());
  for (int k = 1; k <= n; ++k) {
    CMat am = c_mul(m, mk);
    for (int i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
    mk = am;
    CMat t = c_mul(m, mk);
    Complex tr;
    for (int i = 0; i < n; ++i) tr += t(i, i);
    c[n - k] = -(tr / Complex(Real(k)));
  }
  return c;
}

Complex poly_eval(const std::vector<Complex>& c, const Complex& z) {
  Complex r;
  for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
  return r;
}

namespace {

std::vector<Complex> derivative(const std::vector<Complex>& c) {
  std::vector<Complex> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * Complex(Real(static_cast<long>(i))));
  return d;
}

}  // namespace

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
  std::vector<Complex> c = coeffs;
  while (!c.empty() && c.back().re == 0 && c.back().im == 0) c.pop_back();
  if (c.size() <= 1) return {};
  const int n = static_cast<int>(c.size()) - 1;
  const Complex lead = c.back();
  for (auto& x : c) x = x / lead;
  const auto dc = derivative(c);
  // Cauchy bound for the initial circle.
  Real radius = 0;
  for (int i = 0; i < n; ++i) radius = max(radius, abs(c[i]));
  radius = min(Real(1) + radius, Real(1e6));
  const Real half = radius / 2;
  std::vector<Complex> z(n);
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  for (int k = 0; k < n; ++k) z[k] = polar_unit(two_pi * k / n + Real(0.4)) * Complex(half);
  const Real eps = PrecisionScope::epsilon();
  Real best = 1;
  int stale = 0;
  for (int it = 0; it < 2000; ++it) {
    Real worst = 0;
    for (int k = 0; k < n; ++k) {
      const Complex p = poly_eval(c, z[k]);
      const Complex dp = poly_eval(dc, z[k]);
      if (norm(p) == 0) continue;
      const Complex ratio = p / dp;
      Complex s;
      for (int j = 0; j < n; ++j)
        if (j != k) s += Complex(1) / (z[k] - z[j]);
      const Complex w = ratio / (Complex(1) - ratio * s);
      z[k] -= w;
      worst = max(worst, abs(w) / max(Real(1), abs(z[k])));
    }
    if (worst < eps * 1024) break;
    // Rounding noise: the corrections stopped shrinking near the precision floor.
    if (worst < best / 2) {
      best = worst;
      stale = 0;
    } else if (best < sqrt(eps) && ++stale > 8) {
      break;
    }
  }
  for (auto& r : z)
    for (int it = 0; it < 3; ++it) {
      const Complex dp = poly_eval(dc, r);
      if (norm(dp) == 0) break;
      r -= poly_eval(c, r) / dp;
    }
  return z;
}

void symmetric_eigen(const RMat& s, std::vector<Real>& values, RMat& vectors) {
  const int n = s.rows;
  RMat a = s;
  RMat v(n, n, Real(0));
  for (int i = 0; i < n; ++i) v(i, i) = 1;
  const Real eps = PrecisionScope::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    Real off = 0, total = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        total += a(i, j) * a(i, j);
        if (i != j) off += a(i, j) * a(i, j);
      }
    if (off <= eps * eps * total) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0) continue;
        const Real theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + 1));
        const Real cs = 1 / sqrt(t * t + 1), sn = t * cs;
        for (int k = 0; k < n; ++k) {
          const Real akp = a(k, p), akq = a(k, q);
          a(k, p) = cs * akp - sn * akq;
          a(k, q) = sn * akp + cs * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Real apk = a(p, k), aqk = a(q, k);
          a(p, k) = cs * apk - sn * aqk;
          a(q, k) = sn * apk + cs * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const Real vkp = v(k, p), vkq = v(k, q);
          v(k, p) = cs * vkp - sn * vkq;
          v(k, q) = sn * vkp + cs * vkq;
        }
      }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
  values.assign(n, Real(0));
  vectors = RMat(n, n, Real(0));
  for (int k = 0; k < n; ++k) {
    values[k] = a(order[k], order[k]);
    for (int i = 0; i < n; ++i) vectors(i, k) = v(i, order[k]);
  }
}

}  // namespace minred
