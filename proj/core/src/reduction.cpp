#include "minred/reduction.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "minred/io.hpp"
#include "minred/lll.hpp"
#include "minred/minimise.hpp"
#include "minred/upoly.hpp"

namespace minred {

namespace {

using CQuad = std::array<Complex, 15>;
using CPoly = std::vector<Complex>;
using P3 = std::array<Complex, 3>;

Real tol_residual(int bits) { return pow(Real(2), -bits / 3); }
Real tol_separation(int bits) { return pow(Real(2), -bits / 4); }

int active_bits() { return static_cast<int>((Real::default_precision() - 2) / 0.30103); }

Int round_to_int(const Real& x);

Rat rpow(const Rat& x, int e) {
  Rat r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

Model5 add_models(const Model5& x, const Model5& y) {
  Model5 r = x;
  for (int e = 0; e < 10; ++e)
    for (int k = 0; k < 5; ++k) r.e[e][k] += y.e[e][k];
  return r;
}

CQuad to_cquad(const Quad5<Rat>& q) {
  CQuad c;
  for (int i = 0; i < 15; ++i) c[i] = to_complex(q[i]);
  return c;
}

Complex eval_quad(const CQuad& q, const CPoint& x) {
  Complex s;
  for (int a = 0; a < 5; ++a)
    for (int b = a; b < 5; ++b) s += q[mono_index(a, b, 5)] * x[a] * x[b];
  return s;
}

CQuad product_quad(const CPoint& l, const CPoint& m) {
  CQuad q;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) q[mono_index(a, b, 5)] += l[a] * m[b];
  return q;
}

template <size_t N>
Complex hdot(const std::array<Complex, N>& x, const std::array<Complex, N>& y) {
  Complex s;
  for (size_t i = 0; i < N; ++i) s += conj(x[i]) * y[i];
  return s;
}

// Unit norm, with the coordinate of largest modulus real and positive. Near
// ties go to the lower index so that conjugate points normalise alike.
template <size_t N>
std::array<Complex, N> normalise(std::array<Complex, N> x) {
  Real nrm = 0, big = -1;
  size_t s = 0;
  for (size_t i = 0; i < N; ++i) {
    nrm += norm(x[i]);
    if (norm(x[i]) > big * Real(1.0001)) {
      big = norm(x[i]);
      s = i;
    }
  }
  if (nrm == 0) throw NumericFailure("zero vector in projective space");
  const Complex f = conj(x[s]) / Complex(abs(x[s]) * sqrt(nrm));
  for (auto& c : x) c = c * f;
  return x;
}

// sin of the angle between two points of projective space.
template <size_t N>
Real proj_distance(const std::array<Complex, N>& x, const std::array<Complex, N>& y) {
  const Real c = norm(hdot(x, y)) / (hdot(x, x).re * hdot(y, y).re);
  return c >= 1 ? Real(0) : sqrt(1 - c);
}

template <size_t N>
std::array<Complex, N> conj_vec(const std::array<Complex, N>& x) {
  std::array<Complex, N> y;
  for (size_t i = 0; i < N; ++i) y[i] = conj(x[i]);
  return y;
}

template <size_t N>
std::vector<double> sort_key(const std::array<Complex, N>& x) {
  std::vector<double> k;
  for (const auto& c : x) {
    k.push_back(std::round(c.re.template convert_to<double>() * 1e8) / 1e8);
    k.push_back(std::round(c.im.template convert_to<double>() * 1e8) / 1e8);
  }
  return k;
}

// --- polynomial helpers for the image points ----------------------------

CPoly operator*(const CPoly& a, const CPoly& b) {
  if (a.empty() || b.empty()) return {};
  CPoly c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}
CPoly operator+(CPoly a, const CPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

template <class P>
P det3(const P m[3][3]) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// The 3x4 rank matrix: entry (r, c) = L[r][c] . (x, y, z).
struct RankMatrix {
  std::array<std::array<std::array<Rat, 3>, 4>, 3> L;
};

RankMatrix rank_matrix(const InvariantTriple& inv) {
  RankMatrix m;
  for (auto& row : m.L)
    for (auto& e : row) e.fill(Rat(0));
  const Rat &c4 = inv.c4, &c6 = inv.c6;
  m.L[0][1] = {5, 0, 0};
  m.L[0][2] = {0, 1, 0};
  m.L[0][3] = {6 * c4, 0, 1};
  m.L[1][0] = {1, 0, 0};
  m.L[1][1] = {0, 1, 0};
  m.L[1][2] = {6 * c4, 0, -1};
  m.L[1][3] = {8 * c6, 0, 0};
  m.L[2][0] = {0, 1, 0};
  m.L[2][1] = {0, 0, -1};
  m.L[2][2] = {8 * c6, 0, 0};
  m.L[2][3] = {9 * c4 * c4, 0, 0};
  return m;
}

// Entries in the chart (x, y, z) = T (1, v, w): entry = k0 + kv v + kw w.
struct ChartMatrix {
  std::array<std::array<std::array<Rat, 3>, 4>, 3> K;
};

ChartMatrix in_chart(const RankMatrix& m, const RatMat& T) {
  ChartMatrix c;
  for (int r = 0; r < 3; ++r)
    for (int s = 0; s < 4; ++s)
      for (int t = 0; t < 3; ++t) {
        Rat v = 0;
        for (int u = 0; u < 3; ++u) v += m.L[r][s][u] * T(u, t);
        c.K[r][s][t] = v;
      }
  return c;
}

// Minor obtained by deleting column `drop`, with entries given by `entry`.
template <class P, class F>
P minor_drop(int drop, F entry) {
  P m[3][3];
  for (int r = 0; r < 3; ++r) {
    int t = 0;
    for (int s = 0; s < 4; ++s)
      if (s != drop) m[r][t++] = entry(r, s);
  }
  return det3(m);
}

struct MinorValue {
  Complex f, dv, dw;
};

// Value and gradient of sum_j wts[j] * minor_j at (v, w).
MinorValue combo_with_gradient(const ChartMatrix& c, const std::array<long, 4>& wts, const Complex& v,
                               const Complex& w) {
  MinorValue out;
  for (int drop = 0; drop < 4; ++drop) {
    if (wts[drop] == 0) continue;
    Complex M[3][3], Mv[3][3], Mw[3][3];
    for (int r = 0; r < 3; ++r) {
      int t = 0;
      for (int s = 0; s < 4; ++s) {
        if (s == drop) continue;
        const auto& k = c.K[r][s];
        M[r][t] = to_complex(k[0]) + to_complex(k[1]) * v + to_complex(k[2]) * w;
        Mv[r][t] = to_complex(k[1]);
        Mw[r][t] = to_complex(k[2]);
        ++t;
      }
    }
    // d det = tr(adj(M) dM); adj(M)_{ji} is the (i, j) cofactor.
    Complex d = det3(M), gv, gw;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        const Complex cof = M[i1][j1] * M[i2][j2] - M[i1][j2] * M[i2][j1];
        gv += cof * Mv[i][j];
        gw += cof * Mw[i][j];
      }
    const Complex s(Real(wts[drop]));
    out.f += s * d;
    out.dv += s * gv;
    out.dw += s * gw;
  }
  return out;
}

// Largest 3x3 minor of the rank matrix at p, relative to the row norms.
Real rank_residual(const RankMatrix& m, const P3& p) {
  Complex E[3][4];
  Real rows[3];
  for (int r = 0; r < 3; ++r) {
    rows[r] = 0;
    for (int s = 0; s < 4; ++s) {
      E[r][s] = Complex();
      for (int u = 0; u < 3; ++u) E[r][s] += to_complex(m.L[r][s][u]) * p[u];
      rows[r] += norm(E[r][s]);
    }
    rows[r] = sqrt(rows[r]);
  }
  const Real scale = rows[0] * rows[1] * rows[2];
  if (scale == 0) return Real(0);
  Real worst = 0;
  for (int drop = 0; drop < 4; ++drop) {
    Complex d = minor_drop<Complex>(drop, [&](int r, int s) { return E[r][s]; });
    worst = max(worst, abs(d) / scale);
  }
  return worst;
}

// --- fibres --------------------------------------------------------------

// Value of the 3x5 matrix of quadrics at x.
std::array<std::array<Complex, 5>, 3> eval_syz(const std::array<std::array<CQuad, 5>, 3>& A, const CPoint& x) {
  std::array<std::array<Complex, 5>, 3> v;
  for (int r = 0; r < 3; ++r)
    for (int i = 0; i < 5; ++i) v[r][i] = eval_quad(A[r][i], x);
  return v;
}

Real rank_one_residual(const std::array<std::array<Complex, 5>, 3>& v) {
  Real big = 0;
  for (const auto& row : v)
    for (const auto& c : row) big = max(big, abs(c));
  if (big == 0) return Real(1);
  Real worst = 0;
  for (int r = 0; r < 3; ++r)
    for (int s = r + 1; s < 3; ++s)
      for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
          worst = max(worst, abs(v[r][i] * v[s][j] - v[r][j] * v[s][i]) / (big * big));
  return worst;
}

// Column of largest norm, as a point of P^2.
P3 alpha_image(const std::array<std::array<Complex, 5>, 3>& v) {
  int best = 0;
  Real bn = -1;
  for (int i = 0; i < 5; ++i) {
    Real n = norm(v[0][i]) + norm(v[1][i]) + norm(v[2][i]);
    if (n > bn) {
      bn = n;
      best = i;
    }
  }
  return normalise(P3{v[0][best], v[1][best], v[2][best]});
}

// Gauss-Newton on the quadrics qs in the affine chart of the largest coordinate.
CPoint polish(const std::vector<CQuad>& qs, CPoint x) {
  for (int it = 0; it < 6; ++it) {
    x = normalise(x);
    int s = 0;
    for (int i = 1; i < 5; ++i)
      if (norm(x[i]) > norm(x[s])) s = i;
    const Complex xs = x[s];
    for (auto& c : x) c = c / xs;
    const int m = static_cast<int>(qs.size());
    CMat J(m, 4, Complex()), f(m, 1, Complex());
    for (int k = 0; k < m; ++k) {
      f(k, 0) = eval_quad(qs[k], x);
      int col = 0;
      for (int t = 0; t < 5; ++t) {
        if (t == s) continue;
        Complex d;
        for (int a = 0; a < 5; ++a) {
          const Complex c = qs[k][mono_index(a, t, 5)];
          d += a == t ? c * x[a] * Complex(2) : c * x[a];
        }
        J(k, col++) = d;
      }
    }
    CMat Jh(4, m, Complex());
    for (int k = 0; k < m; ++k)
      for (int t = 0; t < 4; ++t) Jh(t, k) = conj(J(k, t));
    CMat N = c_mul(Jh, J), rhs = c_mul(Jh, f);
    CMat delta;
    try {
      delta = c_mul(c_inverse(N, PrecisionScope::epsilon()), rhs);
    } catch (const NumericFailure&) {
      break;
    }
    int col = 0;
    for (int t = 0; t < 5; ++t)
      if (t != s) x[t] -= delta(col++, 0);
  }
  return normalise(x);
}

std::vector<CPoint> fibre_points(const std::array<std::array<CQuad, 5>, 3>& A, const P3& q, std::mt19937_64& rng,
                                 int bits, std::vector<CQuad>& quadrics) {
  CMat qrow(1, 3, Complex());
  for (int r = 0; r < 3; ++r) qrow(0, r) = q[r];
  const CMat perp = c_null_space(qrow, 2);
  quadrics.clear();
  for (int i = 0; i < 5; ++i)
    for (int s = 0; s < 2; ++s) {
      CQuad w;
      for (int r = 0; r < 3; ++r)
        for (int m = 0; m < 15; ++m) w[m] += perp(r, s) * A[r][i][m];
      quadrics.push_back(w);
    }
  CMat W(10, 15, Complex());
  for (int k = 0; k < 10; ++k) {
    Real n = 0;
    for (const auto& c : quadrics[k]) n += norm(c);
    if (n == 0) throw NumericFailure("zero fibre quadric");
    const Complex inv_n(1 / sqrt(n));
    for (auto& c : quadrics[k]) c = c * inv_n;
    for (int m = 0; m < 15; ++m) W(k, m) = quadrics[k][m];
  }
  Real last = 0;
  const CMat F = c_null_space(W, 5, &last);
  if (last < tol_separation(bits)) throw NumericFailure("fibre quadrics are dependent");
  // Multiplication by l/h on the 5-dimensional quotient by the fibre quadrics;
  // its eigenvalues are l(P)/h(P) over the fibre points P.
  std::uniform_real_distribution<double> pick(-1.0, 1.0);
  for (int attempt = 0; attempt < 6; ++attempt) {
    std::array<Real, 5> l, h;
    for (int i = 0; i < 5; ++i) {
      l[i] = Real(pick(rng));
      h[i] = Real(pick(rng));
    }
    CMat Kl(5, 5, Complex()), Kh(5, 5, Complex());
    for (int j = 0; j < 5; ++j)
      for (int t = 0; t < 5; ++t)
        for (int a = 0; a < 5; ++a) {
          Kl(j, t) += Complex(l[a]) * F(mono_index(a, j, 5), t);
          Kh(j, t) += Complex(h[a]) * F(mono_index(a, j, 5), t);
        }
    CMat M;
    try {
      M = c_mul(c_inverse(Kh, tol_separation(bits)), Kl);
    } catch (const NumericFailure&) {
      continue;
    }
    std::vector<CPoint> pts;
    for (const auto& lam : poly_roots(char_poly(M))) {
      CMat S = M;
      for (int i = 0; i < 5; ++i) S(i, i) -= lam;
      const CMat P = c_mul(Kh, c_null_space(S, 1));
      CPoint x;
      for (int i = 0; i < 5; ++i) x[i] = P(i, 0);
      pts.push_back(polish(quadrics, x));
    }
    bool separated = pts.size() == 5;
    for (size_t i = 0; separated && i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        if (proj_distance(pts[i], pts[j]) < tol_separation(bits)) separated = false;
    if (separated) return pts;
  }
  throw NumericFailure("could not separate the points of a fibre");
}

RatMat random_chart(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(-5, 5);
  for (;;) {
    RatMat T(3, 3, Rat(0));
    for (auto& x : T.a) x = pick(rng);
    if (rat_det(T) != 0) return T;
  }
}

RMat gram_from_quadric(const std::array<Real, 15>& q) {
  RMat G(5, 5, Real(0));
  for (int a = 0; a < 5; ++a)
    for (int b = a; b < 5; ++b) {
      const Real& c = q[mono_index(a, b, 5)];
      if (a == b) {
        G(a, a) = c;
      } else {
        G(a, b) = c / 2;
        G(b, a) = c / 2;
      }
    }
  return G;
}

// Cholesky pivots; all positive iff G is positive definite.
std::vector<Real> cholesky_pivots(const RMat& g) {
  const int n = g.rows;
  RMat L(n, n, Real(0));
  std::vector<Real> piv;
  for (int j = 0; j < n; ++j) {
    Real d = g(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    piv.push_back(d);
    if (d <= 0) return piv;
    L(j, j) = sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      Real s = g(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return piv;
}

RMat normalise_gram(RMat G) {
  if (G(0, 0) < 0)
    for (auto& x : G.a) x = -x;
  const auto piv = cholesky_pivots(G);
  Real det = 1;
  for (const auto& p : piv) {
    if (p <= 0) throw NumericFailure("invariant quadric is not positive definite");
    det *= p;
  }
  const Real s = pow(det, Real(1) / 5);
  for (auto& x : G.a) x /= s;
  return G;
}

Int round_to_int(const Real& x) {
  std::string s = Real(round(x)).str(0, std::ios_base::fixed);
  const auto dot = s.find('.');
  if (dot != std::string::npos) s.resize(dot);
  if (s.empty() || s == "-" || s == "-0") s = "0";
  return Int(s);
}

}  // namespace

HesseParameters hessian_on_hesse(const Rat& a, const Rat& b) {
  // D = a^11 b - 11 a^6 b^6 - a b^11
  const Rat dDa = 11 * rpow(a, 10) * b - 66 * rpow(a, 5) * rpow(b, 6) - rpow(b, 11);
  const Rat dDb = rpow(a, 11) - 66 * rpow(a, 6) * rpow(b, 5) - 11 * a * rpow(b, 10);
  return {-dDb, dDa};
}

HessianHandle HessianHandle::transported(const Transformation& g, const Rat& a, const Rat& b) {
  HessianHandle h;
  h.kind = Kind::TransportedFromHesse;
  h.g = g;
  h.a = a;
  h.b = b;
  return h;
}

HessianHandle HessianHandle::external_model(const Model5& m) {
  HessianHandle h;
  h.kind = Kind::ExternalModel;
  h.external = m;
  return h;
}

HessianHandle HessianHandle::coordinate_hint(const RatMat& m) {
  if (m.rows != 5 || m.cols != 5 || rat_det(m) == 0) throw MathError("coordinate hint must be an invertible 5x5 matrix");
  HessianHandle h;
  h.kind = Kind::Coordinates;
  h.coordinates = m;
  return h;
}

HessianHandle transport_handle(const HessianHandle& h, const Transformation& g) {
  HessianHandle out = h;
  switch (h.kind) {
    case HessianHandle::Kind::None:
      break;
    case HessianHandle::Kind::TransportedFromHesse:
      out.g = compose(g, h.g);
      break;
    case HessianHandle::Kind::ExternalModel: {
      const Rat d = g.determinant();
      out.external = scale_model(apply_transformation(g, h.external), d * d);
      break;
    }
    case HessianHandle::Kind::Coordinates:
      // phi'(x) = A phi(B^T x) A^T, so phi(M u) = phi'(B^-T M u) up to the A side.
      out.coordinates = rat_mul(rat_inverse(transpose(g.B)), h.coordinates);
      break;
  }
  return out;
}

HessianHandle parse_hessian_hint(const std::string& text) {
  LineReader r(text);
  std::string line;
  int ln = 0;
  if (!r.next(line, ln)) throw ParseError("empty hint file", 1, 1);
  std::istringstream head(line);
  std::string tag, kind, extra;
  head >> tag >> kind;
  if (tag != "hessian-hint" || (head >> extra)) r.fail("expected 'hessian-hint <transport|external|coordinates>'", ln);
  if (kind == "transport") {
    Rat ab[2];
    const char* names[2] = {"a", "b"};
    for (int i = 0; i < 2; ++i) {
      if (!r.next(line, ln)) throw ParseError("expected Hesse parameter", static_cast<int>(r.lines.size()) + 1, 1);
      std::istringstream is(line);
      std::string name, eq, val;
      is >> name >> eq >> val;
      if (name != names[i] || eq != "=" || val.empty() || (is >> extra))
        r.fail(std::string("expected '") + names[i] + " = <rational>'", ln);
      try {
        ab[i] = Rat(val);
        ab[i].canonicalize();
      } catch (const std::invalid_argument&) {
        r.fail("bad rational '" + val + "'", ln);
      }
    }
    Transformation g;
    g.A = parse_matrix5(r, "A:");
    g.B = parse_matrix5(r, "B:");
    if (r.next(line, ln)) r.fail("trailing content after hint", ln);
    if (g.determinant() == 0) throw MathError("hint transformation is singular");
    return HessianHandle::transported(g, ab[0], ab[1]);
  }
  if (kind == "external") {
    std::string rest;
    for (size_t i = r.pos; i < r.lines.size(); ++i) rest += r.lines[i] + "\n";
    return HessianHandle::external_model(parse_model(rest).model);
  }
  if (kind == "coordinates") {
    RatMat M = parse_matrix5(r, "M:");
    if (r.next(line, ln)) r.fail("trailing content after hint", ln);
    return HessianHandle::coordinate_hint(M);
  }
  r.fail("unknown hint kind '" + kind + "'", ln);
}

std::string format_hessian_hint(const HessianHandle& h) {
  switch (h.kind) {
    case HessianHandle::Kind::TransportedFromHesse:
      return "hessian-hint transport\na = " + to_string(h.a) + "\nb = " + to_string(h.b) + "\n" +
             format_transformation(h.g);
    case HessianHandle::Kind::ExternalModel:
      return "hessian-hint external\n" + format_model(h.external);
    case HessianHandle::Kind::Coordinates:
      return "hessian-hint coordinates\nM:\n" + format_matrix(h.coordinates);
    case HessianHandle::Kind::None:
      break;
  }
  return "";
}

Model5 hessian(const Model5& phi, const HessianHandle& h) {
  if (h.kind == HessianHandle::Kind::TransportedFromHesse) {
    if (!(apply_transformation(h.g, hesse_model(h.a, h.b)) == phi))
      throw MathError("Hessian handle does not reproduce the model");
    const HesseParameters hp = hessian_on_hesse(h.a, h.b);
    const Rat d = h.g.determinant();
    return scale_model(apply_transformation(h.g, hesse_model(hp.a, hp.b)), d * d);
  }
  if (h.kind == HessianHandle::Kind::ExternalModel) {
    if (is_zero_model(h.external)) throw MathError("external Hessian is zero");
    return h.external;
  }
  throw MathError("handle carries no Hessian");
}

SyzygeticMatrix syzygetic_matrix(const Model5& phi, const Model5& h) {
  SyzygeticMatrix s;
  s.A[0] = pfaffians(phi);
  s.A[2] = pfaffians(h);
  const Pfaffians both = pfaffians(add_models(phi, h));
  for (int i = 0; i < 5; ++i)
    for (int m = 0; m < 15; ++m) s.A[1][i][m] = both[i][m] - s.A[0][i][m] - s.A[2][i][m];
  return s;
}

std::vector<P3> image_points(const InvariantTriple& inv, const NumericOptions& opt) {
  const int bits = active_bits();
  // Weighted rescaling: with c4 = t^4 C4 and c6 = t^6 C6 the points for (C4, C6)
  // map to the original ones by (x, y, z) = (s^2 X, s^12 Y, s^22 Z), s = t^(1/5).
  Real tr = max(pow(abs(to_real(inv.c4)), Real(1) / 4), pow(abs(to_real(inv.c6)), Real(1) / 6));
  Int t = round_to_int(tr);
  if (t < 1) t = 1;
  const Rat T4 = rpow(Rat(t), 4), T6 = rpow(Rat(t), 6);
  InvariantTriple scaled = inv;
  scaled.c4 = inv.c4 / T4;
  scaled.c6 = inv.c6 / T6;
  const Real sw = pow(to_real(Rat(t)), Real(1) / 5);
  const std::array<Real, 3> weight{pow(sw, 2), pow(sw, 12), pow(sw, 22)};
  const RankMatrix rm = rank_matrix(scaled);
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<long> pickw(-3, 3);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const RatMat T = random_chart(rng);
    const ChartMatrix cm = in_chart(rm, T);
    std::array<long, 4> wf{}, wg{};
    for (int j = 0; j < 4; ++j) {
      wf[j] = pickw(rng);
      wg[j] = pickw(rng);
    }
    // Exact resultant in w of the two minor combinations, interpolated in v.
    std::vector<Rat> ts, vals;
    for (int t = 0; t < 10; ++t) {
      const Rat v(t - 4);
      UPoly f, g;
      for (int drop = 0; drop < 4; ++drop) {
        UPoly d = minor_drop<UPoly>(drop, [&](int r, int s) {
          const auto& k = cm.K[r][s];
          return UPoly(std::vector<Rat>{k[0] + k[1] * v, k[2]});
        });
        f = f + Rat(wf[drop]) * d;
        g = g + Rat(wg[drop]) * d;
      }
      RatMat S(6, 6, Rat(0));
      for (int r = 0; r < 3; ++r)
        for (int k = 0; k <= 3; ++k) {
          S(r, r + k) = f.coeff(3 - k);
          S(r + 3, r + k) = g.coeff(3 - k);
        }
      ts.push_back(v);
      vals.push_back(rat_det(S));
    }
    const UPoly R = interpolate(ts, vals);
    if (R.degree() < 6) continue;
    std::vector<Complex> rc;
    for (const auto& c : R.c) rc.push_back(to_complex(c));
    std::vector<P3> found;
    for (const auto& v0 : poly_roots(rc)) {
      // f(v0, w) is a cubic in w: interpolate it from four values.
      CPoly fw;
      {
        const Complex ws[4] = {Complex(0), Complex(1), Complex(-1), Complex(2)};
        Complex ys[4];
        for (int k = 0; k < 4; ++k) ys[k] = combo_with_gradient(cm, wf, v0, ws[k]).f;
        // Newton divided differences.
        Complex d[4] = {ys[0], ys[1], ys[2], ys[3]};
        for (int lvl = 1; lvl < 4; ++lvl)
          for (int k = 3; k >= lvl; --k) d[k] = (d[k] - d[k - 1]) / (ws[k] - ws[k - lvl]);
        fw = CPoly{d[3]};
        for (int k = 2; k >= 0; --k) fw = fw * CPoly{-ws[k], Complex(1)} + CPoly{d[k]};
      }
      for (auto w0 : poly_roots(fw)) {
        Complex v = v0;
        for (int it = 0; it < 8; ++it) {
          const MinorValue F = combo_with_gradient(cm, wf, v, w0);
          const MinorValue G = combo_with_gradient(cm, wg, v, w0);
          const Complex det = F.dv * G.dw - F.dw * G.dv;
          if (norm(det) == 0) break;
          v -= (F.f * G.dw - F.dw * G.f) / det;
          w0 -= (F.dv * G.f - F.f * G.dv) / det;
        }
        P3 p;
        for (int u = 0; u < 3; ++u)
          p[u] = to_complex(T(u, 0)) + to_complex(T(u, 1)) * v + to_complex(T(u, 2)) * w0;
        p = normalise(p);
        if (rank_residual(rm, p) > tol_residual(bits)) continue;
        bool dup = false;
        for (const auto& q : found)
          if (proj_distance(p, q) < tol_separation(bits)) dup = true;
        if (!dup) found.push_back(p);
      }
    }
    if (found.size() == 6) {
      for (auto& p : found) {
        for (int u = 0; u < 3; ++u) p[u] = p[u] * Complex(weight[u]);
        p = normalise(p);
      }
      std::sort(found.begin(), found.end(), [](const P3& x, const P3& y) { return sort_key(x) < sort_key(y); });
      return found;
    }
  }
  throw NumericFailure("could not isolate the 6 image points");
}

PointLocus thirty_points(const SyzygeticMatrix& S, const InvariantTriple& inv, const NumericOptions& opt) {
  const int bits = active_bits();
  std::array<std::array<CQuad, 5>, 3> A;
  // Balance the three rows; alpha then maps into Diag(1/n) times the image.
  std::array<Real, 3> rn{};
  for (int r = 0; r < 3; ++r) {
    rn[r] = 0;
    for (int i = 0; i < 5; ++i)
      for (const auto& c : S.A[r][i]) rn[r] = max(rn[r], abs(to_real(c)));
    if (rn[r] == 0) throw NumericFailure("syzygetic matrix has a zero row");
    for (int i = 0; i < 5; ++i) {
      A[r][i] = to_cquad(S.A[r][i]);
      for (auto& c : A[r][i]) c = c / Complex(rn[r]);
    }
  }
  auto images = image_points(inv, opt);
  for (auto& q : images) {
    for (int r = 0; r < 3; ++r) q[r] = q[r] / Complex(rn[r]);
    q = normalise(q);
  }
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  PointLocus locus;
  std::vector<CQuad> quads;
  for (const auto& q : images) {
    SyzygeticTuple t;
    t.image = q;
    auto pts = fibre_points(A, q, rng, bits, quads);
    if (pts.size() != 5) throw NumericFailure("fibre does not have 5 points");
    std::sort(pts.begin(), pts.end(), [](const CPoint& x, const CPoint& y) { return sort_key(x) < sort_key(y); });
    for (int k = 0; k < 5; ++k) {
      const auto v = eval_syz(A, pts[k]);
      t.points[k] = pts[k];
      t.residuals[k] = rank_one_residual(v);
      if (t.residuals[k] > tol_residual(bits)) throw NumericFailure("point residual above tolerance");
      if (proj_distance(alpha_image(v), q) > tol_separation(bits))
        throw NumericFailure("point maps to the wrong image point");
      locus.max_residual = max(locus.max_residual, t.residuals[k]);
    }
    locus.tuples.push_back(t);
  }
  Real sep = 2;
  for (size_t i = 0; i < locus.tuples.size() * 5; ++i)
    for (size_t j = i + 1; j < locus.tuples.size() * 5; ++j)
      sep = min(sep, proj_distance(locus.tuples[i / 5].points[i % 5], locus.tuples[j / 5].points[j % 5]));
  if (sep < tol_separation(bits)) throw NumericFailure("points of the locus are not separated");
  locus.min_separation = sep;
  // Reality and duals.
  const Real tol = tol_separation(bits);
  for (auto& t : locus.tuples) {
    t.real_points = 0;
    t.conjugation_closed = true;
    for (const auto& p : t.points) {
      const auto c = conj_vec(p);
      if (proj_distance(p, c) < tol) ++t.real_points;
      bool match = false;
      for (const auto& p2 : t.points)
        if (proj_distance(p2, c) < tol) match = true;
      if (!match) t.conjugation_closed = false;
    }
    CMat X(5, 5, Complex());
    for (int k = 0; k < 5; ++k)
      for (int i = 0; i < 5; ++i) X(i, k) = t.points[k][i];
    const CMat Xi = c_inverse(X, tol);
    for (int k = 0; k < 5; ++k)
      for (int i = 0; i < 5; ++i) t.duals[k][i] = Xi(k, i);
  }
  return locus;
}

RealTuples real_tuples(const std::vector<SyzygeticTuple>& tuples) {
  const int bits = active_bits();
  const Real tol = tol_separation(bits);
  std::vector<const SyzygeticTuple*> closed;
  for (const auto& t : tuples)
    if (t.conjugation_closed) closed.push_back(&t);
  if (closed.size() != 2)
    throw NumericFailure("expected 2 real syzygetic tuples, found " + std::to_string(closed.size()));
  const SyzygeticTuple* y = closed[0]->real_points == 5 ? closed[0] : closed[1];
  const SyzygeticTuple* z = y == closed[0] ? closed[1] : closed[0];
  if (y->real_points != 5 || z->real_points != 1) throw NumericFailure("real tuples have unexpected real point counts");

  auto finish = [&](SyzygeticTuple t, const std::array<CPoint, 5>& pts) {
    t.points = pts;
    CMat X(5, 5, Complex());
    for (int k = 0; k < 5; ++k)
      for (int i = 0; i < 5; ++i) X(i, k) = pts[k][i];
    const CMat Xi = c_inverse(X, tol);
    for (int k = 0; k < 5; ++k)
      for (int i = 0; i < 5; ++i) t.duals[k][i] = Xi(k, i);
    return t;
  };
  auto realify = [](CPoint p) {
    p = normalise(p);
    for (auto& c : p) c.im = 0;
    return p;
  };

  RealTuples out;
  std::array<CPoint, 5> yp;
  for (int k = 0; k < 5; ++k) yp[k] = realify(y->points[k]);
  out.Y = finish(*y, yp);

  std::array<CPoint, 5> zp;
  std::vector<CPoint> rest;
  for (const auto& p : z->points) {
    if (proj_distance(p, conj_vec(p)) < tol)
      zp[0] = realify(p);
    else
      rest.push_back(p);
  }
  if (rest.size() != 4) throw NumericFailure("tuple with one real point has a bad conjugate structure");
  zp[1] = rest[0];
  zp[4] = conj_vec(rest[0]);
  int second = -1;
  for (int k = 1; k < 4; ++k)
    if (proj_distance(rest[k], zp[4]) > tol) {
      second = k;
      break;
    }
  if (second < 0) throw NumericFailure("could not pair conjugate points");
  zp[2] = rest[second];
  zp[3] = conj_vec(rest[second]);
  out.Z = finish(*z, zp);
  return out;
}

namespace {

RMat inner_product_impl(const RealTuples& rt, Real* gap) {
  const int bits = active_bits();
  std::vector<std::array<Real, 15>> cols;
  auto push = [&](const CQuad& q) {
    std::array<Real, 15> c;
    Real n = 0, im = 0;
    for (int m = 0; m < 15; ++m) {
      c[m] = q[m].re;
      n += q[m].re * q[m].re;
      im = max(im, abs(q[m].im));
    }
    n = sqrt(n);
    if (n == 0 || im > n * tol_separation(bits)) throw NumericFailure("quadric from real tuple is not real");
    for (auto& x : c) x /= n;
    cols.push_back(c);
  };
  for (int i = 0; i < 5; ++i) push(product_quad(rt.Y.duals[i], rt.Y.duals[i]));
  push(product_quad(rt.Z.duals[0], rt.Z.duals[0]));
  push(product_quad(rt.Z.duals[1], rt.Z.duals[4]));
  push(product_quad(rt.Z.duals[2], rt.Z.duals[3]));
  RMat S(8, 8, Real(0));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int m = 0; m < 15; ++m) S(i, j) += cols[i][m] * cols[j][m];
  std::vector<Real> ev;
  RMat vec;
  symmetric_eigen(S, ev, vec);
  const Real smax = sqrt(abs(ev[7]));
  const Real s0 = sqrt(abs(ev[0])) / smax, s1 = sqrt(abs(ev[1])) / smax;
  if (gap) *gap = s1 == 0 ? Real(0) : s0 / s1;
  if (s0 > tol_residual(bits) || s1 < tol_separation(bits))
    throw NumericFailure("intersection of the two quadric spans is not one-dimensional");
  std::array<Real, 15> q;
  q.fill(Real(0));
  for (int i = 0; i < 5; ++i)
    for (int m = 0; m < 15; ++m) q[m] += vec(i, 0) * cols[i][m];
  return normalise_gram(gram_from_quadric(q));
}

RMat gram_from_coordinates(const RatMat& M) {
  const RatMat Mi = rat_inverse(M);
  const RatMat G = rat_mul(transpose(Mi), Mi);
  RMat R(5, 5, Real(0));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) R(i, j) = to_real(G(i, j));
  return normalise_gram(R);
}

}  // namespace

RMat invariant_inner_product(const RealTuples& rt) { return inner_product_impl(rt, nullptr); }

IntMat lll_reduce_gram(const RMat& g) {
  if (g.rows != 5 || g.cols != 5) throw MathError("Gram matrix must be 5x5");
  const int bits = static_cast<int>((g(0, 0).precision() - 2) / 0.30103);
  Real big = 0;
  for (const auto& x : g.a) big = max(big, abs(x));
  if (big == 0) throw MathError("zero Gram matrix");
  const Real scale = pow(Real(2), bits * 3 / 4) / big;
  RatMat G(5, 5, Rat(0));
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      const Rat v(round_to_int((g(i, j) + g(j, i)) / 2 * scale));
      G(i, j) = v;
      G(j, i) = v;
    }
  return lll_gram(G, Rat(99, 100));
}

GramReport compute_gram(const Model5& phi, const HessianHandle& h, const NumericOptions& opt, int max_bits) {
  GramReport rep;
  if (h.kind == HessianHandle::Kind::Coordinates) {
    PrecisionScope ps(opt.bits);
    rep.gram = gram_from_coordinates(h.coordinates);
    rep.bits = opt.bits;
    return rep;
  }
  // Exact unimodular preconditioning keeps the Hessian small; the Gram matrix
  // is carried back to the input coordinates at the end.
  const StepResult pre = size_reduce(phi);
  const Model5 H = hessian(pre.model, transport_handle(h, pre.g));
  const SyzygeticMatrix S = syzygetic_matrix(pre.model, H);
  const InvariantTriple inv = invariants(pre.model);
  const RatMat Binv = rat_inverse(pre.g.B);
  std::string last = "no precision attempted";
  for (int bits = std::max(opt.bits, 64); bits <= max_bits; bits *= 2) {
    PrecisionScope ps(bits);
    try {
      const PointLocus locus = thirty_points(S, inv, opt);
      const RealTuples rt = real_tuples(locus.tuples);
      int closed = 0;
      for (const auto& t : locus.tuples) closed += t.conjugation_closed ? 1 : 0;
      Real gap;
      const RMat g0 = inner_product_impl(rt, &gap);
      // Q0(x) = Q(B^T x), so G = B^-1 G0 B^-T.
      RMat G(5, 5, Real(0));
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          for (int k = 0; k < 5; ++k)
            for (int l = 0; l < 5; ++l) G(i, j) += to_real(Binv(i, k)) * g0(k, l) * to_real(Binv(j, l));
      rep.gram = normalise_gram(G);
      rep.bits = bits;
      rep.points = locus.points();
      rep.real_tuples = closed;
      rep.max_residual = locus.max_residual;
      rep.min_separation = locus.min_separation;
      rep.intersection_gap = gap;
      return rep;
    } catch (const NumericFailure& e) {
      last = e.what();
    }
  }
  throw NumericFailure("reduction numerics failed up to " + std::to_string(max_bits) + " bits: " + last);
}

ReductionResult reduce(const Model5& phi, const HessianHandle& h, const ReductionOptions& opt) {
  if (!is_integral(phi)) throw MathError("reduce needs an integral model");
  ReductionResult res;
  res.model = phi;
  if (h.kind == HessianHandle::Kind::None) {
    res.warnings.push_back(
        "no Hessian available: general models need an external Hessian or a hint; model returned unreduced");
    return res;
  }
  try {
    res.gram = compute_gram(phi, h, opt.numeric, opt.max_bits);
  } catch (const NumericFailure& e) {
    res.warnings.push_back(std::string("numeric pipeline failed: ") + e.what() + "; model returned unreduced");
    return res;
  }
  IntMat U;
  {
    PrecisionScope ps(res.gram.bits);
    U = lll_reduce_gram(res.gram.gram);
  }
  const Transformation gb{rat_identity(5), transpose(to_rat(U))};
  const Model5 m1 = apply_transformation(gb, phi);
  const StepResult ra = reduce_pfaffian_basis(m1);
  res.model = ra.model;
  res.g = compose(ra.g, gb);
  res.reduced = true;
  return res;
}

}  // namespace minred
