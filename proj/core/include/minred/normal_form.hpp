#pragma once

#include <array>

#include "minred/models.hpp"

namespace minred {

// Division-free determinant by cofactor expansion (n <= 6 in practice).
template <class R>
typename R::T det_expand(const R& ring, const Mat<typename R::T>& m) {
  int n = m.rows;
  if (n == 0) return ring.one();
  if (n == 1) return m(0, 0);
  if (n == 2) return ring.sub(ring.mul(m(0, 0), m(1, 1)), ring.mul(m(0, 1), m(1, 0)));
  auto d = ring.zero();
  for (int j = 0; j < n; ++j) {
    if (ring.is_zero(m(0, j))) continue;
    Mat<typename R::T> minor(n - 1, n - 1, ring.zero());
    for (int i = 1; i < n; ++i) {
      int c = 0;
      for (int k = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    }
    auto t = ring.mul(m(0, j), det_expand(ring, minor));
    d = (j % 2 == 0) ? ring.add(d, t) : ring.sub(d, t);
  }
  return d;
}

template <class T>
struct NormalForm {
  Model5T<T> model;              // shape with entry (1,2) = x5 and x5 absent elsewhere
  QuadricIntersection<T> qi;     // (sum l_i alpha_i, sum l_i beta_i)
  Mat<T> A;                      // model = [A, B] applied to the input
  Mat<T> B;
  T det_g;                       // (det A)^2 det B
};

// Moves a smooth point P of C_Phi to (0:...:0:1), normalises the model to the
// degree-4 bridge shape and reads off the quadric intersection. P must have a
// unit coordinate. Throws PointNotOnCurve, SingularPoint, or whatever the
// ring's inv throws for zero divisors.
template <class R>
NormalForm<typename R::T> deg5_point_to_deg4(const R& ring, const Model5T<typename R::T>& phi,
                                             const Lin5<typename R::T>& P) {
  using T = typename R::T;
  auto pf = pfaffians(ring, phi);
  for (int i = 0; i < 5; ++i) {
    T v = ring.zero();
    for (int a = 0; a < 5; ++a)
      for (int b = a; b < 5; ++b) {
        const T& c = pf[i][mono_index(a, b, 5)];
        if (!ring.is_zero(c)) v = ring.add(v, ring.mul(c, ring.mul(P[a], P[b])));
      }
    if (!ring.is_zero(v)) throw PointNotOnCurve("point does not lie on the curve");
  }
  int c = -1;
  for (int k = 4; k >= 0; --k)
    if (ring.is_unit(P[k])) {
      c = k;
      break;
    }
  if (c < 0) throw MathError("point has no unit coordinate");

  // Step 1: B1 with row 5 = P and rows e_k (k != c), so that x = B1^T x' sends e5 to P.
  auto B1 = zero_mat(ring, 5, 5);
  {
    int r = 0;
    for (int k = 0; k < 5; ++k)
      if (k != c) B1(r++, k) = ring.one();
    for (int k = 0; k < 5; ++k) B1(4, k) = P[k];
  }
  auto I5 = identity_mat(ring, 5);
  auto m1 = apply_transformation(ring, I5, B1, phi);

  // Step 2: symplectic congruence making the x5-coefficient matrix E12 - E21.
  auto M = zero_mat(ring, 5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) M(i, j) = entry_coeff(ring, m1, i, j, 4);
  int pi = -1, pj = -1;
  for (int i = 0; i < 5 && pi < 0; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (ring.is_unit(M(i, j))) {
        pi = i;
        pj = j;
        break;
      }
  if (pi < 0) {
    bool all_zero = true;
    for (const auto& x : M.a)
      if (!ring.is_zero(x)) all_zero = false;
    if (all_zero) throw SingularPoint("model vanishes identically at the point");
    // A nonzero non-unit: force the ring to report the zero divisor.
    for (const auto& x : M.a)
      if (!ring.is_zero(x)) (void)ring.inv(x);
    throw SingularPoint("no unit entry at the point");
  }
  T u = M(pi, pj);
  T uinv = ring.inv(u);
  auto A = zero_mat(ring, 5, 5);
  std::vector<T> r1(5, ring.zero()), r2(5, ring.zero());
  r1[pi] = uinv;
  r2[pj] = ring.one();
  auto bil = [&](const std::vector<T>& x, const std::vector<T>& y) {
    T s = ring.zero();
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (!ring.is_zero(M(i, j))) s = ring.add(s, ring.mul(x[i], ring.mul(M(i, j), y[j])));
    return s;
  };
  for (int k = 0; k < 5; ++k) {
    A(0, k) = r1[k];
    A(1, k) = r2[k];
  }
  {
    int row = 2;
    for (int k = 0; k < 5; ++k) {
      if (k == pi || k == pj) continue;
      std::vector<T> z(5, ring.zero());
      z[k] = ring.one();
      T s1 = bil(z, r1), s2 = bil(z, r2);
      for (int t = 0; t < 5; ++t) {
        T v = z[t];
        v = ring.add(v, ring.mul(s1, r2[t]));
        v = ring.sub(v, ring.mul(s2, r1[t]));
        A(row, t) = v;
      }
      ++row;
    }
  }
  auto m2 = apply_transformation(ring, A, I5, m1);
  for (int p = 1; p < 10; ++p)
    if (!ring.is_zero(m2.e[p][4])) throw SingularPoint("rank of the model at the point exceeds 2");

  // Step 3: substitution x5 <- x5 - sum c_k x_k so that entry (1,2) is exactly x5.
  auto B3 = identity_mat(ring, 5);
  for (int k = 0; k < 4; ++k) B3(k, 4) = ring.neg(m2.e[0][k]);
  auto m3 = apply_transformation(ring, I5, B3, m2);

  NormalForm<T> out;
  out.model = m3;
  out.qi = read_normal_form(ring, m3);
  out.A = A;
  out.B = mat_mul(ring, B3, B1);
  T dA = det_expand(ring, A);
  out.det_g = ring.mul(ring.mul(dA, dA), det_expand(ring, out.B));

  auto L = zero_mat(ring, 3, 4);
  for (int k = 0; k < 4; ++k) {
    L(0, k) = m3.at(3, 4)[k];
    L(1, k) = m3.at(2, 4)[k];
    L(2, k) = m3.at(2, 3)[k];
  }
  if (rank_of(ring, L) < 3) throw SingularPoint("l1, l2, l3 are linearly dependent");
  return out;
}

// Coefficients (a,b,c,d,e) of F(s,t) = det(s G1 + t G2) = a s^4 + b s^3 t + ... + e t^4.
template <class R>
std::array<typename R::T, 5> quartic_of_pencil(const R& ring, const QuadricIntersection<typename R::T>& qi) {
  using T = typename R::T;
  auto G1 = gram4(ring, qi.q1), G2 = gram4(ring, qi.q2);
  std::array<T, 5> f;
  f.fill(ring.zero());
  int perm[4] = {0, 1, 2, 3};
  do {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (perm[i] > perm[j]) ++inv;
    // product of (G1 s + G2 t) entries as a binary form, index = power of t
    std::array<T, 5> prod;
    prod.fill(ring.zero());
    prod[0] = ring.one();
    int deg = 0;
    bool zero = false;
    for (int i = 0; i < 4 && !zero; ++i) {
      const T& s = G1(i, perm[i]);
      const T& t = G2(i, perm[i]);
      if (ring.is_zero(s) && ring.is_zero(t)) {
        zero = true;
        break;
      }
      std::array<T, 5> next;
      next.fill(ring.zero());
      for (int k = 0; k <= deg; ++k) {
        if (ring.is_zero(prod[k])) continue;
        next[k] = ring.add(next[k], ring.mul(prod[k], s));
        next[k + 1] = ring.add(next[k + 1], ring.mul(prod[k], t));
      }
      prod = next;
      ++deg;
    }
    if (zero) continue;
    for (int k = 0; k < 5; ++k) f[k] = (inv % 2) ? ring.sub(f[k], prod[k]) : ring.add(f[k], prod[k]);
  } while (std::next_permutation(perm, perm + 4));
  return f;
}

// c4 = I and c6 = J/2 of the binary quartic det(s G1 + t G2).
template <class R>
std::array<typename R::T, 2> qi_c4c6(const R& ring, const QuadricIntersection<typename R::T>& qi) {
  auto f = quartic_of_pencil(ring, qi);
  const auto &a = f[0], &b = f[1], &c = f[2], &d = f[3], &e = f[4];
  auto k = [&](long n) { return ring.from_int(n); };
  auto mul = [&](std::initializer_list<typename R::T> xs) {
    auto r = ring.one();
    for (const auto& x : xs) r = ring.mul(r, x);
    return r;
  };
  auto I = ring.add(ring.sub(mul({k(12), a, e}), mul({k(3), b, d})), mul({c, c}));
  auto J = mul({k(72), a, c, e});
  J = ring.add(J, mul({k(9), b, c, d}));
  J = ring.sub(J, mul({k(27), a, d, d}));
  J = ring.sub(J, mul({k(27), e, b, b}));
  J = ring.sub(J, mul({k(2), c, c, c}));
  return {I, ring.mul(J, ring.inv(k(2)))};
}

}  // namespace minred
