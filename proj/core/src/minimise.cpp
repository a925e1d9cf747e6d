#include "minred/minimise.hpp"

#include <algorithm>

#include "minred/errors.hpp"
#include "minred/lll.hpp"
#include "minred/snf.hpp"

namespace minred {

namespace {

Rat p_power(const Int& p, long e) {
  Int q = ipow(p, static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rat(q) : Rat(1) / Rat(q);
}

RatMat diag_powers(const Int& p, const std::vector<long>& d) {
  RatMat D(static_cast<int>(d.size()), static_cast<int>(d.size()), Rat(0));
  for (size_t i = 0; i < d.size(); ++i) D(static_cast<int>(i), static_cast<int>(i)) = p_power(p, d[i]);
  return D;
}

RatMat scalar5(const Rat& s) {
  RatMat M = rat_identity(5);
  for (int i = 0; i < 5; ++i) M(i, i) = s;
  return M;
}

long v_det(const Transformation& g, const Int& p) { return valuation(g.determinant(), p); }

bool p_integral(const Model5& m, const Int& p) {
  for (const auto& l : m.e)
    for (const auto& c : l)
      if (c != 0 && valuation(c, p) < 0) return false;
  return true;
}

// Requires denominators prime to nothing: the model must have integer coefficients.
IntMat pfaffian_matrix(const Model5& m) {
  auto pf = pfaffians(m);
  IntMat P(15, 5, Int(0));
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 15; ++k) {
      if (pf[j][k].get_den() != 1) throw MathError("Pfaffian matrix needs an integral model");
      P(k, j) = pf[j][k].get_num();
    }
  return P;
}

// U*M with U unimodular and the rows of U*M LLL-reduced. Transformations are
// only defined up to such a left factor, and this keeps their entries small.
RatMat reduce_rows(const RatMat& M) {
  Int den = 1;
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) den = lcm(den, Int(M(i, j).get_den()));
  IntMat Nt(M.cols, M.rows, Int(0));
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) Nt(j, i) = Rat(M(i, j) * den).get_num();
  IntMat U = lll_columns(Nt);
  return rat_mul(transpose(to_rat(U)), M);
}

void require_integral(const Model5& m) {
  if (!is_integral(m)) throw MathError("model must have integer coefficients");
}

StepResult apply_step(const Model5& m, const Transformation& g, const Int& p) {
  StepResult r;
  r.g = g;
  r.model = apply_transformation(g, m);
  r.v_det = v_det(g, p);
  return r;
}

StepResult chain(const StepResult& first, const StepResult& second) {
  StepResult r = second;
  r.g = compose(second.g, first.g);
  r.v_det = first.v_det + second.v_det;
  return r;
}

// Rows of Phi as 25-vectors, one per column.
IntMat row_matrix(const Model5& m) {
  IntMat R(25, 5, Int(0));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      for (int k = 0; k < 5; ++k) {
        Rat c = entry_coeff(RatRing{}, m, i, j, k);
        if (c.get_den() != 1) throw MathError("row matrix needs an integral model");
        R(j * 5 + k, i) = c.get_num();
      }
    }
  return R;
}

// A in GL5(Z) whose first `rows` rows combine the rows of Phi with the highest
// p-divisibility; returns the divisibility of the weakest of them.
RatMat divisible_rows(const Model5& m, const Int& p, int rows, long& e_out) {
  auto cr = p_column_reduce(row_matrix(m), p);
  // d is non-decreasing, so the most divisible combinations are the last columns.
  std::vector<int> order;
  for (int j = 4; j >= 5 - rows; --j) order.push_back(j);
  for (int j = 0; j < 5 - rows; ++j) order.push_back(j);
  e_out = cr.d[5 - rows];
  RatMat A(5, 5, Rat(0));
  for (int r = 0; r < 5; ++r)
    for (int k = 0; k < 5; ++k) A(r, k) = cr.V(k, order[r]);
  return A;
}

}  // namespace

bool is_saturated(const Model5& m, const Int& p) {
  if (!p_integral(m, p)) throw MathError("is_saturated needs a p-integral model");
  if (p >= Int(1) << 62) {
    // Exact rank check via column reduction; scaling by a p-unit keeps the rank mod p.
    Int den = 1;
    for (const auto& l : m.e)
      for (const auto& c : l) den = lcm(den, Int(c.get_den()));
    auto cr = p_column_reduce(pfaffian_matrix(scale_model(m, Rat(den))), p);
    for (long d : cr.d)
      if (d != 0) return false;
    return true;
  }
  FqField F(p.get_ui(), 1);
  auto pf = pfaffians(F, reduce_mod_p(m, F));
  Mat<uint64_t> P(5, 15, 0);
  for (int j = 0; j < 5; ++j)
    for (int k = 0; k < 15; ++k) P(j, k) = pf[j][k];
  return rank_of(F, P) == 5;
}

StepResult saturation_step_one(const Model5& m, const Int& p) {
  require_integral(m);
  auto cr = p_column_reduce(pfaffian_matrix(m), p);
  for (long d : cr.d)
    if (d == kValInf) throw SingularModel("Pfaffians are linearly dependent");
  RatMat A = reduce_rows(rat_mul(diag_powers(p, cr.d), rat_inverse(to_rat(cr.V))));
  Model5 mid = apply_transformation(Transformation{A, rat_identity(5)}, m);
  long v = min_valuation(mid, p);
  Transformation g{A, scalar5(p_power(p, -v))};
  StepResult r = apply_step(m, g, p);
  long sum_d = 0;
  for (long d : cr.d) sum_d += d;
  long e = sum_d - 2 * v;
  if (is_integral(r.model)) r = chain(r, size_reduce(r.model));
  r.e = e;
  return r;
}

StepResult saturate(const Model5& m, const Int& p) {
  if (is_saturated(m, p)) {
    StepResult r;
    r.model = m;
    return r;
  }
  StepResult s1 = saturation_step_one(m, p);
  if (s1.e == 0) return s1;
  long e = 0;
  RatMat A = divisible_rows(s1.model, p, 1, e);
  if (e < s1.e) throw MathError("Step 2 found fewer divisible rows than expected");
  RatMat D = rat_identity(5);
  D(0, 0) = p_power(p, -e);
  StepResult s2 = apply_step(s1.model, Transformation{reduce_rows(rat_mul(D, A)), rat_identity(5)}, p);
  StepResult r = chain(s1, s2);
  r.e = 0;
  return r;
}

StepResult optimise_substitution(const Model5& m, const Int& p) {
  long vmin = min_valuation(m, p);
  if (vmin == kValInf) throw SingularModel("zero model");
  long s = vmin < 0 ? -vmin : 0;
  Model5 ms = scale_model(m, p_power(p, s));
  IntMat C(10, 5, Int(0));
  for (int e = 0; e < 10; ++e)
    for (int k = 0; k < 5; ++k) {
      const Rat& c = ms.e[e][k];
      if (c.get_den() != 1) throw MathError("denominators prime to p are not supported here");
      C(e, k) = c.get_num();
    }
  auto snf = smith_normal_form(C, p);
  std::vector<long> d;
  for (long x : snf.d) {
    if (x == kValInf) throw SingularModel("coefficient vectors do not span");
    d.push_back(-(x - s));
  }
  RatMat B = reduce_rows(rat_mul(diag_powers(p, d), transpose(to_rat(snf.V))));
  return apply_step(m, Transformation{rat_identity(5), B}, p);
}

StepResult desaturation_descent(const Model5& m, const Int& p) {
  StepResult s1 = saturation_step_one(m, p);
  if (s1.e == 0) throw MathError("desaturation_descent needs a non-saturated Step 1 output");
  long emax = 0;
  RatMat A = divisible_rows(s1.model, p, 2, emax);
  if (emax < s1.e) throw MathError("fewer than two rows divisible by p^e");
  std::optional<StepResult> best;
  for (long e = s1.e; e <= emax; ++e) {
    RatMat D = rat_identity(5);
    D(0, 0) = p_power(p, -e);
    D(1, 1) = p_power(p, -e);
    StepResult s2 = apply_step(s1.model, Transformation{reduce_rows(rat_mul(D, A)), rat_identity(5)}, p);
    StepResult s3 = chain(s2, optimise_substitution(s2.model, p));
    if (!best || s3.v_det < best->v_det) best = s3;
  }
  StepResult r = chain(s1, *best);
  r.e = 0;
  return r;
}

StepResult make_saturated(const Model5& m, const Int& p) {
  StepResult acc;
  acc.model = m;
  for (int guard = 0; guard < 1000; ++guard) {
    if (guard > 0 && is_integral(acc.model)) acc = chain(acc, size_reduce(acc.model));
    if (!p_integral(acc.model, p)) {
      acc = chain(acc, optimise_substitution(acc.model, p));
      continue;
    }
    if (!is_saturated(acc.model, p)) {
      StepResult s1 = saturation_step_one(acc.model, p);
      acc = chain(acc, s1.e > 0 ? desaturation_descent(acc.model, p) : s1);
      continue;
    }
    StepResult b = optimise_substitution(acc.model, p);
    if (b.v_det < 0) {
      acc = chain(acc, b);
      continue;
    }
    acc.e = 0;
    return chain(acc, size_reduce(acc.model));
  }
  throw Inconclusive("saturation did not settle");
}

namespace {

Int coefficient_mass(const Model5& m) {
  Int s = 0;
  for (const auto& l : m.e)
    for (const auto& c : l) s += c.get_num() * c.get_num();
  return s;
}

}  // namespace

StepResult size_reduce(const Model5& m) {
  require_integral(m);
  StepResult acc;
  acc.model = m;
  Int mass = coefficient_mass(m);
  for (int round = 0; round < 8; ++round) {
    StepResult next = acc;
    try {
      // A side first: after Step 1 the Pfaffian basis is what blows up.
      IntMat V = lll_columns(pfaffian_matrix(next.model));
      next = chain(next, apply_step(next.model, Transformation{rat_inverse(to_rat(V)), rat_identity(5)}, Int(2)));
      IntMat C(10, 5, Int(0));
      for (int e = 0; e < 10; ++e)
        for (int k = 0; k < 5; ++k) C(e, k) = next.model.e[e][k].get_num();
      IntMat U = lll_columns(C);
      next = chain(next, apply_step(next.model, Transformation{rat_identity(5), transpose(to_rat(U))}, Int(2)));
    } catch (const MathError&) {
      break;  // degenerate lattice: leave the model as it is
    }
    Int nm = coefficient_mass(next.model);
    if (nm >= mass) break;
    mass = nm;
    acc = next;
  }
  acc.v_det = 0;
  acc.e = 0;
  return acc;
}

StepResult reduce_pfaffian_basis(const Model5& m) {
  require_integral(m);
  IntMat V = lll_columns(pfaffian_matrix(m));
  StepResult r = apply_step(m, Transformation{rat_inverse(to_rat(V)), rat_identity(5)}, Int(2));
  r.v_det = 0;
  return r;
}

Transformation singular_substitution(const SingularSpan& span, const Int& p) {
  const int k = span.k();
  if (k < 1 || k > 4) throw MathError("singular span must be cut out by 1 to 4 forms");
  FqField F(p.get_ui(), 1);
  Mat<uint64_t> L(k, 5, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < 5; ++j) L(i, j) = span.forms[i][j];
  Mat<uint64_t> pts = transpose(kernel(F, L));  // m x 5, rows span the points
  std::vector<int> piv;
  int m = rref(F, pts, &piv);
  if (m != 5 - k) throw MathError("inconsistent singular span");
  RatMat B0(5, 5, Rat(0));
  std::vector<bool> is_piv(5, false);
  for (int c : piv) is_piv[c] = true;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < 5; ++j) B0(i, j) = Rat(Int(static_cast<unsigned long>(pts(i, j))));
  int r = m;
  for (int c = 0; c < 5; ++c)
    if (!is_piv[c]) B0(r++, c) = 1;
  RatMat D = rat_identity(5);
  for (int i = m; i < 5; ++i) D(i, i) = Rat(p);
  return Transformation{rat_identity(5), rat_mul(D, B0)};
}

LocalState minimise_step(const LocalState& s, const MinimiseOptions& opt) {
  if (s.level() <= 0) throw MathError("minimise_step called at level 0");
  if (!is_saturated(s.phi, s.p)) throw NotSaturated("minimise_step needs a saturated model");
  if (s.p >= Int(1) << 31) throw Inconclusive("prime too large for the singular locus computation");
  SingularSpan span = singular_span(s.phi, s.p.get_ui(), opt.singular);
  if (span.k() == 0) throw MathError("singular locus spans P^4 at positive level");
  if (span.k() == 5) throw MathError("smooth reduction at positive level");
  Transformation h = singular_substitution(span, s.p);
  StepResult r = apply_step(s.phi, h, s.p);
  r = chain(r, make_saturated(r.model, s.p));
  if (r.v_det > 0) throw MathError("singular step increased the level");
  LocalState out = s;
  out.phi = r.model;
  out.g_acc = compose(r.g, s.g_acc);
  out.v_det_acc = s.v_det_acc + r.v_det;
  out.last_span_forms = span.k();
  return out;
}

LocalMinimisation minimise_local(const Model5& m, const Int& p, const MinimiseOptions& opt) {
  return minimise_local(m, p, invariants(m, opt.invariants), opt);
}

LocalMinimisation minimise_local(const Model5& m, const Int& p, const InvariantTriple& inv, const MinimiseOptions& opt) {
  require_integral(m);
  if (inv.disc == 0) throw SingularModel("singular model; use step mode");
  LocalMinimisation out;
  out.p = p;
  out.level_before = level_from_invariants(inv, p).level;
  LocalState s;
  s.phi = m;
  s.p = p;
  s.level_0 = out.level_before;
  if (s.level() > 0) {
    StepResult r = make_saturated(m, p);
    s.phi = r.model;
    s.g_acc = r.g;
    s.v_det_acc = r.v_det;
  }
  long plateau = s.level();
  int stagnant = 0;
  while (s.level() > 0 && stagnant < opt.max_stagnant) {
    if (out.iterations >= opt.max_iterations) throw Inconclusive("iteration cap reached");
    s = minimise_step(s, opt);
    ++out.iterations;
    ++stagnant;
    out.trace.push_back({s.level(), s.last_span_forms});
    if (s.level() < plateau) {
      out.longest_plateau = std::max(out.longest_plateau, stagnant);
      plateau = s.level();
      stagnant = 0;
    }
  }
  if (s.level() < 0) throw MathError("negative level: bookkeeping error");
  out.model = s.phi;
  out.g = s.g_acc;
  out.level_after = s.level();
  return out;
}

StepModeReport step_mode(const Model5& m, const Int& p, int max_iterations, const MinimiseOptions& opt) {
  require_integral(m);
  StepModeReport rep;
  Model5 cur = m;
  if (!is_saturated(cur, p)) {
    rep.reached_non_saturated = true;
    return rep;
  }
  for (int it = 0; it < max_iterations; ++it) {
    SingularSpan span = singular_span(cur, p.get_ui(), opt.singular);
    if (span.k() == 0 || span.k() == 5) throw MathError("singular span is degenerate in step mode");
    StepResult r = apply_step(cur, singular_substitution(span, p), p);
    StepResult s1 = saturation_step_one(r.model, p);
    StepModeRecord rec;
    rec.span_forms = span.k();
    rec.v_det = r.v_det + s1.v_det;
    rec.e = s1.e;
    rec.model = s1.model;
    rep.steps.push_back(rec);
    cur = s1.model;
    if (s1.e > 0) {
      rep.reached_non_saturated = true;
      break;
    }
  }
  return rep;
}

GlobalMinimisation minimise_global(const Model5& m, const std::vector<Int>& primes, unsigned long factor_budget,
                                   const MinimiseOptions& opt) {
  GlobalMinimisation out;
  Int den = 1;
  for (const auto& l : m.e)
    for (const auto& c : l) den = lcm(den, Int(c.get_den()));
  Transformation g{rat_identity(5), scalar5(Rat(den))};
  Model5 cur = apply_transformation(g, m);
  InvariantTriple inv = invariants(cur, opt.invariants);
  if (inv.disc == 0) throw SingularModel("singular model");
  std::vector<Int> ps = primes;
  if (ps.empty()) {
    Int rest;
    ps = factor_with_budget(inv.disc.get_num(), factor_budget, rest);
    out.unfactored = rest;
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  for (const auto& p : ps) {
    PrimeReport pr;
    pr.p = p;
    auto lr = minimise_local(cur, p, inv, opt);
    pr.level_before = lr.level_before;
    pr.level_after = lr.level_after;
    pr.iterations = lr.iterations;
    out.primes.push_back(pr);
    cur = lr.model;
    g = compose(lr.g, g);
    inv = inv.scaled(lr.g.determinant());
  }
  out.model = cur;
  out.g = g;
  out.invariants = inv;
  return out;
}

}  // namespace minred
