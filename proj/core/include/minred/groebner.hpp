#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "minred/fq.hpp"
#include "minred/matrix.hpp"

namespace minred {

// Monomials in x1..x5 packed as: total degree in bits 48..63, exponents of
// x5, x4, x3, x2 in 12-bit fields (bits 36, 24, 12, 0); the exponent of x1
// is implied. Products add packed values. The grevlex order with
// x1 > ... > x5 is the unsigned order of (m ^ kLow48).
namespace mono {
using Mono = uint64_t;
inline constexpr uint64_t kLow48 = (uint64_t(1) << 48) - 1;
inline constexpr int kShift[5] = {-1, 0, 12, 24, 36};

inline int deg(Mono m) { return static_cast<int>(m >> 48); }
inline int exp(Mono m, int i) {
  if (i == 0) {
    int s = 0;
    for (int k = 1; k < 5; ++k) s += static_cast<int>((m >> kShift[k]) & 0xFFF);
    return deg(m) - s;
  }
  return static_cast<int>((m >> kShift[i]) & 0xFFF);
}
inline Mono make(const std::array<int, 5>& e) {
  uint64_t d = 0;
  for (int x : e) d += x;
  Mono m = d << 48;
  for (int k = 1; k < 5; ++k) m |= uint64_t(e[k]) << kShift[k];
  return m;
}
inline Mono var(int i) {
  std::array<int, 5> e{0, 0, 0, 0, 0};
  e[i] = 1;
  return make(e);
}
inline uint64_t key(Mono m) { return m ^ kLow48; }
inline bool greater(Mono a, Mono b) { return key(a) > key(b); }
inline Mono mul(Mono a, Mono b) { return a + b; }
inline bool divides(Mono a, Mono b) {
  for (int i = 0; i < 5; ++i)
    if (exp(a, i) > exp(b, i)) return false;
  return true;
}
inline Mono quot(Mono b, Mono a) { return b - a; }  // requires divides(a, b)
inline Mono lcm(Mono a, Mono b) {
  std::array<int, 5> e;
  for (int i = 0; i < 5; ++i) e[i] = std::max(exp(a, i), exp(b, i));
  return make(e);
}
inline bool coprime(Mono a, Mono b) {
  for (int i = 0; i < 5; ++i)
    if (exp(a, i) && exp(b, i)) return false;
  return true;
}
}  // namespace mono

struct Term {
  mono::Mono m;
  uint64_t c;
};

// Polynomial over an FqField, terms sorted by decreasing grevlex order, no zero coefficients.
struct Poly {
  std::vector<Term> t;
  bool is_zero() const { return t.empty(); }
  mono::Mono lm() const { return t.front().m; }
  uint64_t lc() const { return t.front().c; }
  int degree() const;  // max total degree
  bool is_homogeneous() const;
};

Poly poly_add(const FqField& F, const Poly& a, const Poly& b);
Poly poly_sub(const FqField& F, const Poly& a, const Poly& b);
Poly poly_scale(const FqField& F, const Poly& a, uint64_t c, mono::Mono m = 0);
Poly poly_mul(const FqField& F, const Poly& a, const Poly& b);
Poly poly_monic(const FqField& F, const Poly& a);
Poly poly_linear(const FqField& F, const std::array<uint64_t, 5>& c);
Poly poly_pow(const FqField& F, const Poly& a, int n);
// Substitutes x_i <- sum_j T(i, j) x_j.
Poly poly_substitute(const FqField& F, const Poly& a, const Mat<uint64_t>& T);
// Divides by the largest power of x5 dividing every term.
Poly poly_strip_x5(const Poly& a);
// Sets x5 = 1 and re-sorts.
Poly poly_dehomogenize_x5(const FqField& F, const Poly& a);
uint64_t poly_eval(const FqField& F, const Poly& a, const std::array<uint64_t, 5>& x);
// Partial derivative with respect to x_i.
Poly poly_diff(const FqField& F, const Poly& a, int i);

// Full (top and tail) reduction of f by G, using the order above.
Poly normal_form(const FqField& F, Poly f, const std::vector<Poly>& G);

struct GroebnerOptions {
  size_t max_basis = 20000;  // safety cap; exceeding it throws Inconclusive
};

// Reduced Groebner basis for grevlex with x1 > ... > x5.
std::vector<Poly> groebner_basis(const FqField& F, std::vector<Poly> gens, const GroebnerOptions& opt = {});

// Projective dimension of V(I) over the algebraic closure from the leading
// monomials of a Groebner basis (-1 for the empty set).
int projective_dimension(const std::vector<Poly>& gb);

// Generators of I : x5^infinity from a grevlex basis with x5 last (a Groebner basis again).
std::vector<Poly> saturate_x5(const FqField& F, const std::vector<Poly>& gb);

}  // namespace minred
