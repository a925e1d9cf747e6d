#include "minred/invariants.hpp"

#include <random>

#include "minred/minimise.hpp"
#include "minred/normal_form.hpp"
#include "minred/upoly.hpp"

namespace minred {

InvariantTriple InvariantTriple::scaled(const Rat& d) const {
  Rat d2 = d * d, d4 = d2 * d2, d6 = d4 * d2, d12 = d6 * d6;
  return {c4 * d4, c6 * d6, disc * d12};
}

InvariantTriple make_triple(const Rat& c4, const Rat& c6) {
  return {c4, c6, (c4 * c4 * c4 - c6 * c6) / 1728};
}

InvariantTriple hesse_invariants(const Rat& a, const Rat& b) {
  auto pw = [](const Rat& x, int k) {
    Rat r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
  };
  Rat a5 = pw(a, 5), b5 = pw(b, 5);
  Rat c4 = pw(a5, 4) + 228 * pw(a5, 3) * b5 + 494 * pw(a5, 2) * pw(b5, 2) - 228 * a5 * pw(b5, 3) + pw(b5, 4);
  Rat c6 = -pw(a5, 6) + 522 * pw(a5, 5) * b5 + 10005 * pw(a5, 4) * pw(b5, 2) + 10005 * pw(a5, 2) * pw(b5, 4) -
           522 * a5 * pw(b5, 5) - pw(b5, 6);
  Rat D = a * b * (pw(a5, 2) - 11 * a5 * b5 - pw(b5, 2));
  return {c4, c6, pw(D, 5)};
}

InvariantTriple qi_invariants(const QI& qi) {
  auto f = quartic_of_pencil(RatRing{}, qi);
  bool all_zero = true;
  for (const auto& x : f)
    if (x != 0) all_zero = false;
  if (all_zero) throw SingularModel("degenerate pencil of quadrics");
  auto c = qi_c4c6(RatRing{}, qi);
  return make_triple(c[0], c[1]);
}

namespace {

using Lin4 = std::array<Rat, 4>;

// Cubic monomials y_a y_b y_c, a <= b <= c, in 4 variables.
struct CubicIndex {
  int idx[4][4][4];
  CubicIndex() {
    int t = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a; b < 4; ++b)
        for (int c = b; c < 4; ++c) {
          int v[3] = {a, b, c};
          // all permutations map to the same index
          std::sort(v, v + 3);
          do {
            idx[v[0]][v[1]][v[2]] = t;
          } while (std::next_permutation(v, v + 3));
          ++t;
        }
  }
};

const CubicIndex& cubic_index() {
  static const CubicIndex ci;
  return ci;
}

// Normal forms modulo a graded piece given by an RREF basis.
struct GradedQuotient {
  RatMat basis;  // RREF rows
  std::vector<int> pivots;
  std::vector<int> free_cols;

  GradedQuotient(RatMat gens) {
    rref(RatRing{}, gens, &pivots);
    basis = RatMat(static_cast<int>(pivots.size()), gens.cols, Rat(0));
    for (int i = 0; i < basis.rows; ++i)
      for (int j = 0; j < gens.cols; ++j) basis(i, j) = gens(i, j);
    std::vector<bool> isp(gens.cols, false);
    for (int c : pivots) isp[c] = true;
    for (int c = 0; c < gens.cols; ++c)
      if (!isp[c]) free_cols.push_back(c);
  }
  int rank() const { return static_cast<int>(pivots.size()); }
  std::vector<Rat> nf(std::vector<Rat> h) const {
    for (int i = 0; i < basis.rows; ++i) {
      Rat f = h[pivots[i]];
      if (f == 0) continue;
      for (int j = 0; j < basis.cols; ++j)
        if (basis(i, j) != 0) h[j] -= f * basis(i, j);
    }
    std::vector<Rat> r;
    r.reserve(free_cols.size());
    for (int c : free_cols) r.push_back(h[c]);
    return r;
  }
};

struct SliceData {
  RatMat S;                 // 5 x 4
  std::vector<Rat> quad_nf_yy[4][4];  // NF2 of y_a y_b
  RatMat K;                 // M_l * M_m^{-1}
  RatMat Mm;
  UPoly charpoly;
};

std::optional<SliceData> try_slice(const Pfaffians& pf, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-12, 12);
  SliceData sd;
  std::array<Rat, 5> lam;
  for (auto& x : lam) x = dist(rng);
  while (lam[4] == 0) lam[4] = dist(rng);
  sd.S = RatMat(5, 4, Rat(0));
  for (int i = 0; i < 4; ++i) {
    sd.S(i, i) = 1;
    sd.S(4, i) = -lam[i] / lam[4];
  }
  // Restricted quadrics q_j(y) = p_j(S y).
  RatMat I2(5, 10, Rat(0));
  std::vector<std::array<Rat, 10>> q(5);
  for (int j = 0; j < 5; ++j) {
    q[j].fill(Rat(0));
    for (int a = 0; a < 5; ++a)
      for (int b = a; b < 5; ++b) {
        const Rat& c = pf[j][mono_index(a, b, 5)];
        if (c == 0) continue;
        Lin4 la, lb;
        for (int k = 0; k < 4; ++k) {
          la[k] = c * sd.S(a, k);
          lb[k] = sd.S(b, k);
        }
        add_product(RatRing{}, la, lb, q[j].data(), false);
      }
    for (int k = 0; k < 10; ++k) I2(j, k) = q[j][k];
  }
  GradedQuotient G2(I2);
  if (G2.rank() != 5) return std::nullopt;
  const auto& ci = cubic_index();
  RatMat I3(20, 20, Rat(0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 5; ++j) {
      int row = i * 5 + j;
      for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
          const Rat& c = q[j][mono_index(a, b, 4)];
          if (c != 0) I3(row, ci.idx[i][a][b]) += c;
        }
    }
  GradedQuotient G3(I3);
  if (G3.rank() != 15) return std::nullopt;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      std::vector<Rat> h(10, Rat(0));
      h[mono_index(a, b, 4)] = 1;
      sd.quad_nf_yy[a][b] = G2.nf(h);
    }
  // Monomial basis of R2 from the free columns.
  std::vector<std::pair<int, int>> r2;
  for (int c : G2.free_cols)
    for (int a = 0; a < 4; ++a)
      for (int b = a; b < 4; ++b)
        if (mono_index(a, b, 4) == c) r2.push_back({a, b});
  auto mult = [&](const Lin4& l) {
    RatMat M(5, 5, Rat(0));
    for (int j = 0; j < 5; ++j) {
      std::vector<Rat> h(20, Rat(0));
      for (int k = 0; k < 4; ++k)
        if (l[k] != 0) h[ci.idx[k][r2[j].first][r2[j].second]] += l[k];
      auto v = G3.nf(h);
      for (int i = 0; i < 5; ++i) M(i, j) = v[i];
    }
    return M;
  };
  Lin4 l, m;
  for (auto& x : l) x = dist(rng);
  for (auto& x : m) x = dist(rng);
  RatMat Ml = mult(l);
  sd.Mm = mult(m);
  if (rat_det(sd.Mm) == 0) return std::nullopt;
  sd.K = rat_mul(Ml, rat_inverse(sd.Mm));
  std::vector<Rat> xs, ys;
  for (int t = 0; t <= 5; ++t) {
    RatMat T = sd.K;
    for (int i = 0; i < 5; ++i) T(i, i) = Rat(t) - T(i, i);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (i != j) T(i, j) = -T(i, j);
    xs.push_back(t);
    ys.push_back(rat_det(T));
  }
  sd.charpoly = interpolate(xs, ys);
  if (!is_squarefree(sd.charpoly)) return std::nullopt;
  return sd;
}

// c4, c6 from one point of the slice over Q[t]/(f); throws ZeroDivisor to request a split.
std::array<Rat, 2> invariants_over_algebra(const Model5& phi, const SliceData& sd, const UPoly& f) {
  QAlg A(f);
  using T = QAlg::T;
  auto lift = [&](const Rat& x) { return A.from_rat(x); };
  // Left eigenvector of K for the eigenvalue theta: kernel of K^T - theta I.
  Mat<T> KT(5, 5, A.zero());
  T theta = A.gen();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      KT(i, j) = lift(sd.K(j, i));
      if (i == j) KT(i, j) = A.sub(KT(i, j), theta);
    }
  auto ker = kernel(A, KT);
  if (ker.cols < 1) throw MathError("eigenvector not found");
  std::vector<T> u(5);
  for (int i = 0; i < 5; ++i) u[i] = ker(i, 0);
  std::vector<T> e2(5, A.zero());
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i)
      if (sd.Mm(i, j) != 0) e2[j] = A.add(e2[j], A.mul(u[i], lift(sd.Mm(i, j))));
  auto ev = [&](int a, int b) {
    T s = A.zero();
    const auto& v = sd.quad_nf_yy[a][b];
    for (int k = 0; k < 5; ++k)
      if (v[k] != 0) s = A.add(s, A.mul(e2[k], lift(v[k])));
    return s;
  };
  int c = -1;
  for (int k = 0; k < 4; ++k)
    if (A.is_unit(ev(k, k))) {
      c = k;
      break;
    }
  if (c < 0) {
    for (int k = 0; k < 4; ++k) {
      T v = ev(k, k);
      if (!A.is_zero(v)) (void)A.inv(v);  // throws ZeroDivisor
    }
    throw MathError("point evaluation vanished");
  }
  std::array<T, 4> Py;
  for (int a = 0; a < 4; ++a) Py[a] = ev(a, c);
  Lin5<T> P;
  for (int i = 0; i < 5; ++i) {
    P[i] = A.zero();
    for (int k = 0; k < 4; ++k)
      if (sd.S(i, k) != 0) P[i] = A.add(P[i], A.mul(lift(sd.S(i, k)), Py[k]));
  }
  Model5T<T> phiA;
  for (int p = 0; p < 10; ++p)
    for (int k = 0; k < 5; ++k) phiA.e[p][k] = lift(phi.e[p][k]);
  auto nf = deg5_point_to_deg4(A, phiA, P);
  auto cc = qi_c4c6(A, nf.qi);
  T d = nf.det_g;
  T d2 = A.mul(d, d), d4 = A.mul(d2, d2), d6 = A.mul(d4, d2);
  T c4 = A.mul(cc[0], A.inv(d4));
  T c6 = A.mul(cc[1], A.inv(d6));
  Rat r4, r6;
  if (!A.is_constant(c4, r4) || !A.is_constant(c6, r6))
    throw MathError("invariants are not constant on the etale algebra");
  return {r4, r6};
}

}  // namespace

InvariantTriple invariants(const Model5& m, const InvariantOptions& opt) {
  // The invariants only change by (det g)^k, so an LLL-reduced unimodular
  // transform of an integral model has the same triple and far smaller
  // coefficients for the slice arithmetic.
  Model5 work = m;
  if (is_integral(m) && !is_zero_model(m)) {
    try {
      work = size_reduce(m).model;
    } catch (const MathError&) {
      work = m;
    }
  }
  auto pf = pfaffians(work);
  std::mt19937_64 rng(opt.seed);
  for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
    auto sd = try_slice(pf, rng);
    if (!sd) continue;
    UPoly f = sd->charpoly;
    for (int split = 0; split < 8; ++split) {
      try {
        auto c = invariants_over_algebra(work, *sd, f);
        auto t = make_triple(c[0], c[1]);
        if (!t.satisfies_syzygy()) throw MathError("syzygy check failed");
        return t;
      } catch (const ZeroDivisor& z) {
        f = z.factor;
      } catch (const SingularPoint&) {
        break;
      } catch (const PointNotOnCurve&) {
        break;
      }
    }
  }
  throw SingularModel("could not find a smooth point on a hyperplane section (singular or degenerate model)");
}

namespace {

bool kraus_try(const Int& c4, const Int& c6, WeierstrassCoefficients* out) {
  if (c4 == 0 && c6 == 0) return false;
  for (int b2i = -5; b2i <= 6; ++b2i) {
    Int b2 = b2i;
    Int n4 = b2 * b2 - c4;
    if (!mpz_divisible_ui_p(n4.get_mpz_t(), 24)) continue;
    Int b4 = n4 / 24;
    Int n6 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
    if (!mpz_divisible_ui_p(n6.get_mpz_t(), 216)) continue;
    Int b6 = n6 / 216;
    for (int a1 = 0; a1 <= 1; ++a1) {
      Int r2 = b2 - a1;
      if (!mpz_divisible_ui_p(r2.get_mpz_t(), 4)) continue;
      for (int a3 = 0; a3 <= 1; ++a3) {
        Int r6 = b6 - a3;
        Int r4 = b4 - a1 * a3;
        if (!mpz_divisible_ui_p(r6.get_mpz_t(), 4) || !mpz_divisible_ui_p(r4.get_mpz_t(), 2)) continue;
        if (out) *out = {Int(a1), r2 / 4, Int(a3), r4 / 2, r6 / 4};
        return true;
      }
    }
  }
  return false;
}

}  // namespace

WeierstrassCoefficients kraus_lift(const Int& c4, const Int& c6) {
  WeierstrassCoefficients w;
  if (!kraus_try(c4, c6, &w)) throw KrausConditionFailed("no integral Weierstrass equation has these c4, c6");
  return w;
}

bool kraus_lift_exists(const Int& c4, const Int& c6) { return kraus_try(c4, c6, nullptr); }

JacobianResult jacobian_from_invariants(const InvariantTriple& t) {
  if (t.disc == 0) throw SingularModel("model is singular");
  if (t.c4.get_den() != 1 || t.c6.get_den() != 1) throw MathError("invariants are not integral");
  Int c4 = t.c4.get_num(), c6 = t.c6.get_num();
  JacobianResult r;
  WeierstrassCoefficients w;
  if (kraus_try(c4, c6, &w)) {
    r.w = w;
    return r;
  }
  r.fallback = true;
  r.w = {0, 0, 0, -27 * c4, -54 * c6};
  return r;
}

JacobianResult jacobian(const Model5& m, const InvariantOptions& opt) {
  return jacobian_from_invariants(invariants(m, opt));
}

long minimal_discriminant_valuation(const InvariantTriple& t, const Int& p) {
  if (t.disc == 0) throw SingularModel("discriminant is zero");
  if (t.c4.get_den() != 1 || t.c6.get_den() != 1 || t.disc.get_den() != 1)
    throw MathError("invariants are not integral");
  long vd = valuation(t.disc, p);
  long v4 = valuation(t.c4, p), v6 = valuation(t.c6, p);
  long umax = vd / 12;
  if (v4 != kValInf) umax = std::min(umax, v4 / 4);
  if (v6 != kValInf) umax = std::min(umax, v6 / 6);
  if (p >= 5) return vd - 12 * umax;
  for (long u = umax; u >= 0; --u) {
    Int c4 = t.c4.get_num(), c6 = t.c6.get_num();
    c4 /= ipow(p, 4 * u);
    c6 /= ipow(p, 6 * u);
    if (kraus_lift_exists(c4, c6)) return vd - 12 * u;
  }
  throw KrausConditionFailed("invariants do not come from an integral Weierstrass equation");
}

LevelReport level_from_invariants(const InvariantTriple& t, const Int& p) {
  LevelReport r;
  r.p = p;
  r.v_model = valuation(t.disc, p);
  r.v_min = minimal_discriminant_valuation(t, p);
  if ((r.v_model - r.v_min) % 12 != 0) throw MathError("discriminant valuations differ by a non-multiple of 12");
  r.level = (r.v_model - r.v_min) / 12;
  return r;
}

LevelReport level(const Model5& m, const Int& p, const InvariantOptions& opt) {
  if (!is_integral(m)) throw MathError("level requires an integral model");
  auto t = invariants(m, opt);
  if (t.disc == 0) throw SingularModel("model is singular");
  return level_from_invariants(t, p);
}

}  // namespace minred
