#include "minred/singular.hpp"

#include <random>

#include "minred/errors.hpp"

namespace minred {

namespace {

using Vec5 = std::array<uint64_t, 5>;
using FMat = Mat<uint64_t>;

// Subspaces of the space of linear forms, stored as RREF row bases.
std::vector<Vec5> rref_basis(const FqField& F, const std::vector<Vec5>& rows) {
  if (rows.empty()) return {};
  FMat m(static_cast<int>(rows.size()), 5, 0);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < 5; ++j) m(static_cast<int>(i), j) = rows[i][j];
  int r = rref(F, m);
  std::vector<Vec5> out(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < 5; ++j) out[i][j] = m(i, j);
  return out;
}

std::vector<Vec5> full_space() {
  std::vector<Vec5> out(5, Vec5{0, 0, 0, 0, 0});
  for (int i = 0; i < 5; ++i) out[i][i] = 1;
  return out;
}

// Orthogonal complement under the standard pairing.
std::vector<Vec5> perp(const FqField& F, const std::vector<Vec5>& rows) {
  if (rows.empty()) return full_space();
  FMat m(static_cast<int>(rows.size()), 5, 0);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < 5; ++j) m(static_cast<int>(i), j) = rows[i][j];
  FMat k = kernel(F, m);
  std::vector<Vec5> out(k.cols);
  for (int c = 0; c < k.cols; ++c)
    for (int j = 0; j < 5; ++j) out[c][j] = k(j, c);
  return rref_basis(F, out);
}

std::vector<Vec5> intersect(const FqField& F, const std::vector<Vec5>& a, const std::vector<Vec5>& b) {
  auto pa = perp(F, a), pb = perp(F, b);
  pa.insert(pa.end(), pb.begin(), pb.end());
  return perp(F, rref_basis(F, pa));
}

// Coordinates x' = T x with x'_5 = l; the other rows are unit vectors.
FMat coordinates_with_last(const Vec5& l) {
  int c = -1;
  for (int j = 4; j >= 0; --j)
    if (l[j]) {
      c = j;
      break;
    }
  if (c < 0) throw MathError("zero linear form");
  FMat T(5, 5, 0);
  int r = 0;
  for (int j = 0; j < 5; ++j)
    if (j != c) T(r++, j) = 1;
  for (int j = 0; j < 5; ++j) T(4, j) = l[j];
  return T;
}

struct SpanContext {
  const FqField& F;
  const SingularOptions& opt;
  std::mt19937_64 rng;

  SpanContext(const FqField& f, const SingularOptions& o) : F(f), opt(o), rng(o.seed) {}

  uint64_t random_element() { return std::uniform_int_distribution<uint64_t>(0, F.order() - 1)(rng); }
  Vec5 random_form() {
    Vec5 v;
    do {
      for (auto& x : v) x = random_element();
    } while (v[4] == 0);
    return v;
  }

  std::vector<Poly> change(const std::vector<Poly>& gens, const FMat& T) {
    FMat Ti = inverse(F, T);
    std::vector<Poly> out;
    for (const auto& g : gens) out.push_back(poly_substitute(F, g, Ti));
    return out;
  }

  std::vector<Poly> change_back(const std::vector<Poly>& gens, const FMat& T) {
    std::vector<Poly> out;
    for (const auto& g : gens) out.push_back(poly_substitute(F, g, T));
    return out;
  }

  Vec5 form_back(const Vec5& l, const FMat& T) {
    Vec5 r{0, 0, 0, 0, 0};
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) r[j] = F.add(r[j], F.mul(l[i], T(i, j)));
    return r;
  }

  // Forms vanishing on the affine part x'_5 = l != 0 of a zero-dimensional V(gens).
  std::vector<Vec5> affine_span(const std::vector<Poly>& gens, const Vec5& l) {
    FMat T = coordinates_with_last(l);
    auto gb = groebner_basis(F, change(gens, T));
    auto sat = saturate_x5(F, gb);
    std::vector<Poly> aff;
    for (const auto& g : sat) aff.push_back(poly_monic(F, poly_dehomogenize_x5(F, g)));
    for (const auto& g : aff)
      if (mono::deg(g.lm()) == 0) return full_space();  // no affine points
    // Standard monomials in x1..x4.
    std::vector<mono::Mono> std_monos;
    for (int d = 0;; ++d) {
      bool any = false;
      std::array<int, 5> e{0, 0, 0, 0, 0};
      // Enumerate exponent vectors of x1..x4 with total degree d.
      for (e[0] = d; e[0] >= 0; --e[0])
        for (e[1] = d - e[0]; e[1] >= 0; --e[1])
          for (e[2] = d - e[0] - e[1]; e[2] >= 0; --e[2]) {
            e[3] = d - e[0] - e[1] - e[2];
            mono::Mono m = mono::make(e);
            bool red = false;
            for (const auto& g : aff)
              if (mono::divides(g.lm(), m)) {
                red = true;
                break;
              }
            if (!red) {
              std_monos.push_back(m);
              any = true;
            }
          }
      if (!any) break;
      if (std_monos.size() > 4000) throw Inconclusive("singular locus too large");
    }
    const int n = static_cast<int>(std_monos.size());
    auto index_of = [&](mono::Mono m) {
      for (int i = 0; i < n; ++i)
        if (std_monos[i] == m) return i;
      throw MathError("normal form outside the standard monomials");
    };
    std::array<FMat, 4> M;
    for (int v = 0; v < 4; ++v) {
      M[v] = FMat(n, n, 0);
      for (int b = 0; b < n; ++b) {
        Poly f;
        f.t.push_back({std_monos[b] + mono::var(v), 1});
        Poly nf = normal_form(F, f, aff);
        for (const auto& t : nf.t) M[v](index_of(t.m), b) = t.c;
      }
    }
    // l^q = sum c_i^q x_i^q in characteristic p, so nilpotency of l is a
    // linear condition on (c_i^q) once q >= n.
    int j = 1;
    uint64_t q = F.p();
    while (q < static_cast<uint64_t>(n)) {
      q *= F.p();
      ++j;
    }
    std::array<FMat, 4> P;
    for (int v = 0; v < 4; ++v) {
      FMat base = M[v];
      FMat acc = identity_mat(F, n);
      uint64_t e = q;
      while (e) {
        if (e & 1) acc = mat_mul(F, acc, base);
        e >>= 1;
        if (e) base = mat_mul(F, base, base);
      }
      P[v] = acc;
    }
    FMat sys(n * n, 5, 0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        int row = r * n + c;
        for (int v = 0; v < 4; ++v) sys(row, v) = P[v](r, c);
        sys(row, 4) = (r == c) ? 1 : 0;
      }
    FMat ker = kernel(F, sys);
    std::vector<Vec5> forms;
    for (int c = 0; c < ker.cols; ++c) {
      Vec5 l2;
      for (int i = 0; i < 5; ++i) l2[i] = F.frobenius_inverse(ker(i, c), j);
      forms.push_back(form_back(l2, T));
    }
    return rref_basis(F, forms);
  }

  std::vector<Vec5> span0(std::vector<Poly> gens, int depth) {
    if (depth > 6) throw Inconclusive("singular span recursion too deep");
    auto gb = groebner_basis(F, gens);
    int dim = projective_dimension(gb);
    if (dim < 0) return full_space();
    if (dim > 0) throw MathError("span0 expects a finite scheme");
    Vec5 y = random_form();
    auto L = affine_span(gb, y);
    gb.push_back(poly_linear(F, y));
    return intersect(F, L, span0(gb, depth + 1));
  }

  std::vector<Vec5> span(const std::vector<Poly>& gens, int depth) {
    if (depth > 8) throw Inconclusive("singular span recursion too deep");
    auto gb = groebner_basis(F, gens);
    int dim = projective_dimension(gb);
    if (dim < 0) return full_space();
    if (dim == 0) return span0(gb, 0);
    // Forms vanishing on the top-dimensional part: intersect spans of
    // generic linear sections until they stabilise.
    std::vector<Vec5> top = full_space();
    int stable = 0;
    for (int t = 0; t < opt.max_sections && stable < 2; ++t) {
      auto sec = gb;
      for (int s = 0; s < dim; ++s) sec.push_back(poly_linear(F, random_form()));
      auto sgb = groebner_basis(F, sec);
      if (projective_dimension(sgb) != 0) continue;
      auto next = intersect(F, top, span0(sgb, 0));
      stable = (next.size() == top.size()) ? stable + 1 : 0;
      top = next;
    }
    if (stable < 2) throw Inconclusive("linear sections of the singular locus did not stabilise");
    std::vector<Vec5> L = top;
    // Lower-dimensional components not inside span(top) survive saturation by some l in top.
    for (const auto& l : top) {
      FMat T = coordinates_with_last(l);
      auto sat = saturate_x5(F, groebner_basis(F, change(gb, T)));
      auto back = change_back(sat, T);
      auto bgb = groebner_basis(F, back);
      int d2 = projective_dimension(bgb);
      if (d2 < 0) continue;
      if (d2 >= dim) throw Inconclusive("saturation did not lower the dimension");
      L = intersect(F, L, span(bgb, depth + 1));
    }
    return L;
  }
};

Poly quad_to_poly(const FqField& F, const Quad5<uint64_t>& q) {
  Poly r;
  for (int a = 0; a < 5; ++a)
    for (int b = a; b < 5; ++b) {
      uint64_t c = q[mono_index(a, b, 5)];
      if (!c) continue;
      Poly t;
      t.t.push_back({mono::var(a) + mono::var(b), c});
      r = poly_add(F, r, t);
    }
  return r;
}

}  // namespace

std::vector<Poly> singular_ideal(const FqField& F, const Model5T<uint64_t>& m) {
  auto pf = pfaffians(F, m);
  std::vector<Poly> gens;
  std::array<std::array<Poly, 5>, 5> J;
  for (int i = 0; i < 5; ++i) {
    gens.push_back(quad_to_poly(F, pf[i]));
    for (int j = 0; j < 5; ++j) J[i][j] = poly_diff(F, gens.back(), j);
  }
  auto det2 = [&](int r0, int r1, int c0, int c1) {
    return poly_sub(F, poly_mul(F, J[r0][c0], J[r1][c1]), poly_mul(F, J[r0][c1], J[r1][c0]));
  };
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      for (int c = b + 1; c < 5; ++c)
        for (int u = 0; u < 5; ++u)
          for (int v = u + 1; v < 5; ++v)
            for (int w = v + 1; w < 5; ++w) {
              Poly d = poly_mul(F, J[a][u], det2(b, c, v, w));
              d = poly_sub(F, d, poly_mul(F, J[a][v], det2(b, c, u, w)));
              d = poly_add(F, d, poly_mul(F, J[a][w], det2(b, c, u, v)));
              if (!d.is_zero()) gens.push_back(d);
            }
  return gens;
}

SingularSpan singular_span(const Model5& m, uint64_t p, const SingularOptions& opt) {
  if (p >= (uint64_t(1) << 31)) throw Inconclusive("prime too large for the finite field layer");
  FqField F(p, extension_degree_for(p, opt.min_field_size));
  auto mm = reduce_mod_p(m, F);
  auto gens = singular_ideal(F, mm);
  auto gb = groebner_basis(F, gens);
  SpanContext ctx(F, opt);
  SingularSpan out;
  out.sing_dimension = projective_dimension(gb);
  auto L = ctx.span(gb, 0);
  for (const auto& l : L) {
    Vec5 v;
    for (int j = 0; j < 5; ++j) {
      if (!F.in_prime_field(l[j])) throw Inconclusive("singular span is not defined over F_p");
      v[j] = l[j];
    }
    bool ok = false;
    Poly lp = poly_linear(F, v);
    Poly pw;
    pw.t.push_back({0, 1});
    for (int N = 1; N <= opt.max_power && !ok; ++N) {
      pw = poly_mul(F, pw, lp);
      ok = normal_form(F, pw, gb).is_zero();
    }
    if (!ok) throw Inconclusive("linear form vanishing on the singular locus fails the power bound");
    out.forms.push_back(v);
  }
  return out;
}

SingularSpan singular_span_bruteforce(const Model5& m, uint64_t p, int e) {
  FqField F(p, e);
  auto mm = reduce_mod_p(m, F);
  auto pf = pfaffians(F, mm);
  const uint64_t q = F.order();
  std::vector<Vec5> points;
  SingularSpan out;
  // Normalised representatives: first nonzero coordinate equal to 1.
  for (int lead = 4; lead >= 0; --lead) {
    uint64_t count = 1;
    for (int i = lead + 1; i < 5; ++i) count *= q;
    for (uint64_t idx = 0; idx < count; ++idx) {
      Vec5 x{0, 0, 0, 0, 0};
      x[lead] = 1;
      uint64_t t = idx;
      for (int i = lead + 1; i < 5; ++i) {
        x[i] = t % q;
        t /= q;
      }
      bool on = true;
      for (int k = 0; k < 5 && on; ++k) {
        uint64_t s = 0;
        for (int a = 0; a < 5; ++a) {
          if (!x[a]) continue;
          for (int b = a; b < 5; ++b) s = F.add(s, F.mul(pf[k][mono_index(a, b, 5)], F.mul(x[a], x[b])));
        }
        on = (s == 0);
      }
      if (!on) continue;
      FMat J(5, 5, 0);
      for (int k = 0; k < 5; ++k)
        for (int a = 0; a < 5; ++a)
          for (int b = a; b < 5; ++b) {
            uint64_t c = pf[k][mono_index(a, b, 5)];
            if (!c) continue;
            if (a == b) {
              J(k, a) = F.add(J(k, a), F.mul(F.from_int(2), F.mul(c, x[a])));
            } else {
              J(k, a) = F.add(J(k, a), F.mul(c, x[b]));
              J(k, b) = F.add(J(k, b), F.mul(c, x[a]));
            }
          }
      if (rank_of(F, J) < 3) points.push_back(x);
    }
  }
  auto P = rref_basis(F, points);
  out.sing_dimension = points.empty() ? -1 : 0;
  for (const auto& l : perp(F, P)) {
    for (int j = 0; j < 5; ++j)
      if (!F.in_prime_field(l[j])) throw MathError("brute-force span is not defined over F_p");
    out.forms.push_back(l);
  }
  return out;
}

}  // namespace minred
