#pragma once

#include <array>
#include <string>
#include <vector>

#include "minred/arith.hpp"
#include "minred/errors.hpp"
#include "minred/fq.hpp"
#include "minred/matrix.hpp"
#include "minred/ring.hpp"

namespace minred {

// Positions (i,j), i<j, of the upper triangle in lex order, 0-based.
inline constexpr int kPairs[10][2] = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2},
                                      {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};

// Index of (i,j), i != j, in kPairs.
constexpr int pair_index(int i, int j) {
  if (i > j) std::swap(i, j);
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += 4 - a;
  return idx + (j - i - 1);
}

// Index of the monomial x_a x_b (a <= b) among the quadratic monomials in n
// variables in lex order: x1^2, x1x2, ..., x1xn, x2^2, ...
constexpr int mono_index(int a, int b, int n) {
  if (a > b) std::swap(a, b);
  int idx = 0;
  for (int t = 0; t < a; ++t) idx += n - t;
  return idx + (b - a);
}

template <class T>
using Lin5 = std::array<T, 5>;
template <class T>
using Quad5 = std::array<T, 15>;
template <class T>
using Quad4 = std::array<T, 10>;

// A genus one model of degree 5: 10 linear forms, one per upper-triangle position.
template <class T>
struct Model5T {
  std::array<Lin5<T>, 10> e;
  Lin5<T>& at(int i, int j) { return e[pair_index(i, j)]; }
  const Lin5<T>& at(int i, int j) const { return e[pair_index(i, j)]; }
  bool operator==(const Model5T& o) const { return e == o.e; }
};

using Model5 = Model5T<Rat>;
using Pfaffians = std::array<Quad5<Rat>, 5>;

template <class R>
Model5T<typename R::T> zero_model(const R& ring) {
  Model5T<typename R::T> m;
  for (auto& l : m.e) l.fill(ring.zero());
  return m;
}

// Coefficient c of x_k in entry (i,j) of the full alternating matrix.
template <class R>
typename R::T entry_coeff(const R& ring, const Model5T<typename R::T>& m, int i, int j, int k) {
  if (i == j) return ring.zero();
  if (i < j) return m.at(i, j)[k];
  return ring.neg(m.at(j, i)[k]);
}

// Product of two linear forms in n variables as a quadric.
template <class R, size_t N>
void add_product(const R& ring, const std::array<typename R::T, N>& l, const std::array<typename R::T, N>& m,
                 typename R::T* quad, bool subtract) {
  constexpr int n = static_cast<int>(N);
  for (int a = 0; a < n; ++a) {
    if (ring.is_zero(l[a])) continue;
    for (int b = 0; b < n; ++b) {
      if (ring.is_zero(m[b])) continue;
      auto t = ring.mul(l[a], m[b]);
      int idx = mono_index(a, b, n);
      quad[idx] = subtract ? ring.sub(quad[idx], t) : ring.add(quad[idx], t);
    }
  }
}

// 4x4 Pfaffian of the submatrix on rows/columns r[0..3]:
// f12 f34 - f13 f24 + f14 f23.
template <class R>
Quad5<typename R::T> pfaffian4(const R& ring, const Model5T<typename R::T>& m, const int r[4]) {
  using T = typename R::T;
  Quad5<T> q;
  q.fill(ring.zero());
  auto ent = [&](int a, int b) {
    Lin5<T> l;
    for (int k = 0; k < 5; ++k) l[k] = entry_coeff(ring, m, r[a], r[b], k);
    return l;
  };
  add_product(ring, ent(0, 1), ent(2, 3), q.data(), false);
  add_product(ring, ent(0, 2), ent(1, 3), q.data(), true);
  add_product(ring, ent(0, 3), ent(1, 2), q.data(), false);
  return q;
}

// p_i = (-1)^(i-1) times the Pfaffian of the submatrix with row/column i deleted.
template <class R>
std::array<Quad5<typename R::T>, 5> pfaffians(const R& ring, const Model5T<typename R::T>& m) {
  std::array<Quad5<typename R::T>, 5> p;
  for (int i = 0; i < 5; ++i) {
    int r[4], t = 0;
    for (int j = 0; j < 5; ++j)
      if (j != i) r[t++] = j;
    p[i] = pfaffian4(ring, m, r);
    if (i % 2 == 1)
      for (auto& c : p[i]) c = ring.neg(c);
  }
  return p;
}

inline Pfaffians pfaffians(const Model5& m) { return pfaffians(RatRing{}, m); }

// A * Phi(B x) * A^T, where substitution sends each coefficient vector c to B c.
template <class R>
Model5T<typename R::T> apply_transformation(const R& ring, const Mat<typename R::T>& A, const Mat<typename R::T>& B,
                                            const Model5T<typename R::T>& m) {
  using T = typename R::T;
  Model5T<T> sub;
  for (int p = 0; p < 10; ++p)
    for (int i = 0; i < 5; ++i) {
      T s = ring.zero();
      for (int j = 0; j < 5; ++j)
        if (!ring.is_zero(m.e[p][j])) s = ring.add(s, ring.mul(B(i, j), m.e[p][j]));
      sub.e[p][i] = s;
    }
  auto out = zero_model(ring);
  for (int p = 0; p < 10; ++p) {
    int k = kPairs[p][0], l = kPairs[p][1];
    for (int q = 0; q < 10; ++q) {
      int i = kPairs[q][0], j = kPairs[q][1];
      // entry (i,j) and (j,i) = -(i,j) contribute A_ki A_lj - A_kj A_li
      T w = ring.sub(ring.mul(A(k, i), A(l, j)), ring.mul(A(k, j), A(l, i)));
      if (ring.is_zero(w)) continue;
      for (int x = 0; x < 5; ++x) out.e[p][x] = ring.add(out.e[p][x], ring.mul(w, sub.e[q][x]));
    }
  }
  return out;
}

// Transformation g = [A, B] with det g = (det A)^2 det B.
struct Transformation {
  RatMat A;
  RatMat B;

  static Transformation identity() { return {rat_identity(5), rat_identity(5)}; }
  Rat determinant() const;
  bool is_integral() const;
};

// (g o h) Phi = g(h Phi).
Transformation compose(const Transformation& g, const Transformation& h);
Transformation inverse(const Transformation& g);
Model5 apply_transformation(const Transformation& g, const Model5& m);

Model5 scale_model(const Model5& m, const Rat& s);
bool is_integral(const Model5& m);
bool is_zero_model(const Model5& m);
// Largest power of p dividing every coefficient (kValInf for the zero model).
long min_valuation(const Model5& m, const Int& p);
// Sup norm of the coefficients.
Rat sup_norm(const Model5& m);

Model5T<uint64_t> reduce_mod_p(const Model5& m, const FqField& F);

Model5 hesse_model(const Rat& a, const Rat& b);

// Quadric intersection in x1..x4; 10 coefficients each, lex monomial order.
template <class T>
struct QuadricIntersection {
  Quad4<T> q1;
  Quad4<T> q2;
  bool operator==(const QuadricIntersection& o) const { return q1 == o.q1 && q2 == o.q2; }
};
using QI = QuadricIntersection<Rat>;

// Symmetric 4x4 Gram matrix with doubled diagonal: Q(x) = x^T G x / 2.
template <class R>
Mat<typename R::T> gram4(const R& ring, const Quad4<typename R::T>& q) {
  auto G = zero_mat(ring, 4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      auto c = q[mono_index(a, b, 4)];
      if (a == b) {
        G(a, a) = ring.add(c, c);
      } else {
        G(a, b) = c;
        G(b, a) = c;
      }
    }
  return G;
}

struct WeierstrassCoefficients {
  Int a1, a2, a3, a4, a6;
  Int b2() const { return a1 * a1 + 4 * a2; }
  Int b4() const { return a1 * a3 + 2 * a4; }
  Int b6() const { return a3 * a3 + 4 * a6; }
  Int b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  Int c4() const { return b2() * b2() - 24 * b4(); }
  Int c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
  Int disc() const {
    Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  }
};

// (1 : x : y : x^2) embedding of (E, [4 O]); throws SingularModel when disc = 0.
QI weierstrass_to_deg4(const WeierstrassCoefficients& w);

// Degree 4 to degree 5 via the collect-by-x1,x2,x3 decomposition Q = sum x_i alpha_i.
// Requires the x4^2 coefficients to vanish, i.e. (0:0:0:1) on the curve.
Model5 deg4_to_deg5(const QI& qi);

// Reads (sum l_i alpha_i, sum l_i beta_i) from a model already in the normal
// shape (entry (1,2) = x5, x5 absent elsewhere).
template <class R>
QuadricIntersection<typename R::T> read_normal_form(const R& ring, const Model5T<typename R::T>& m) {
  using T = typename R::T;
  QuadricIntersection<T> qi;
  qi.q1.fill(ring.zero());
  qi.q2.fill(ring.zero());
  auto lin4 = [&](const Lin5<T>& l) {
    std::array<T, 4> r;
    for (int k = 0; k < 4; ++k) r[k] = l[k];
    return r;
  };
  std::array<T, 4> ell[3] = {lin4(m.at(3, 4)), lin4(m.at(2, 4)), lin4(m.at(2, 3))};
  for (auto& c : ell[1]) c = ring.neg(c);
  for (int i = 0; i < 3; ++i) {
    add_product(ring, ell[i], lin4(m.at(0, i + 2)), qi.q1.data(), false);
    add_product(ring, ell[i], lin4(m.at(1, i + 2)), qi.q2.data(), false);
  }
  return qi;
}

}  // namespace minred
