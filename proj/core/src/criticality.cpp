#include "minred/criticality.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "minred/snf.hpp"
#include "minred/upoly.hpp"

namespace minred {

namespace {

// Leading variable t (1-based) of the first-order shape, 0 for entries that
// must vanish mod p.
constexpr int kLead[10] = {1, 2, 3, 4, 3, 4, 5, 5, 0, 0};
constexpr int kE35 = 8;  // pair index of (3,5); (4,5) is 9

long val(const Rat& c, const Int& p) { return c == 0 ? kValInf : valuation(c, p); }

RatMat permutation_matrix(const std::vector<int>& pi) {
  RatMat P(5, 5, Rat(0));
  for (int i = 0; i < 5; ++i) P(i, pi[i]) = 1;
  return P;
}

// A = p^a U and B = p^b V with U, V invertible over Z_(p).
bool scalar_times_unit(const RatMat& M, const Int& p) {
  Int den = 1;
  for (const auto& x : M.a) den = lcm(den, Int(x.get_den()));
  IntMat N(M.rows, M.cols, Int(0));
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) N(i, j) = Rat(M(i, j) * den).get_num();
  auto snf = smith_normal_form(N, p);
  for (long d : snf.d)
    if (d == kValInf || d != snf.d[0]) return false;
  return true;
}

std::vector<std::vector<int>> permutation_search_order() {
  std::vector<std::vector<int>> out;
  for (int a = 0; a < 5; ++a) {
    std::vector<int> pi(5);
    for (int i = 0; i < 5; ++i) pi[i] = (i + a) % 5;
    out.push_back(pi);
  }
  std::vector<int> pi{0, 1, 2, 3, 4};
  do {
    if (std::find(out.begin(), out.end(), pi) == out.end()) out.push_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

}  // namespace

std::vector<PatternViolation> critical_pattern_violations(const Model5& m, const Int& p) {
  if (!is_integral(m)) throw MathError("critical pattern needs an integral model");
  std::vector<PatternViolation> out;
  auto flag = [&](int e, int k, const char* why) {
    out.push_back({kPairs[e][0] + 1, kPairs[e][1] + 1, k + 1, why});
  };
  for (int e = 0; e < 10; ++e) {
    for (int k = 0; k < 5; ++k) {
      long v = val(m.e[e][k], p);
      if (kLead[e] > 0) {
        const int t = kLead[e] - 1;
        if (k < t && v < 1) flag(e, k, "coefficient must vanish mod p");
        if (k == t && v != 0) flag(e, k, "leading coefficient must be a unit");
        continue;
      }
      // Phi_35: p^-1 Phi_35 has shape [1,...]; Phi_45: p^-1 Phi_45 has shape [2,...].
      const int t = e == kE35 ? 0 : 1;
      if (k < t && v < 2) flag(e, k, "coefficient must vanish mod p^2");
      if (k == t && v != 1) flag(e, k, "coefficient must have valuation exactly 1");
      if (k > t && v < 1) flag(e, k, "coefficient must vanish mod p");
    }
  }
  return out;
}

bool is_critical_form(const Model5& m, const Int& p) { return critical_pattern_violations(m, p).empty(); }

InsolubilityCertificate insolubility_certificate(const Model5& m, const Int& p) {
  if (!is_critical_form(m, p)) throw NotCritical("model does not have the critical pattern");
  InsolubilityCertificate cert;
  cert.p = p;
  const Pfaffians pf = pfaffians(m);
  std::array<long, 5> e{};
  for (int step = 0; step < 40; ++step) {
    if (std::all_of(e.begin(), e.end(), [](long x) { return x >= 1; })) return cert;
    // Candidate: a Pfaffian whose normalised reduction is c * y_t^2.
    int best_pf = -1, best_var = -1;
    for (int i = 0; i < 5; ++i) {
      long vmin = kValInf;
      std::array<Rat, 15> c;
      for (int a = 0; a < 5; ++a)
        for (int b = a; b < 5; ++b) {
          const int idx = mono_index(a, b, 5);
          Int scale;
          mpz_pow_ui(scale.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e[a] + e[b]));
          c[idx] = pf[i][idx] * scale;
          if (c[idx] != 0) vmin = std::min(vmin, valuation(c[idx], p));
        }
      if (vmin == kValInf) continue;
      int count = 0, var = -1;
      for (int a = 0; a < 5; ++a)
        for (int b = a; b < 5; ++b) {
          const Rat& x = c[mono_index(a, b, 5)];
          if (x != 0 && valuation(x, p) == vmin) {
            ++count;
            var = a == b ? a : -1;
          }
        }
      if (count != 1 || var < 0) continue;
      if (best_var < 0 || e[var] < e[best_var]) {
        best_pf = i;
        best_var = var;
      }
    }
    if (best_var < 0) throw MathError("insolubility cascade stalled");
    ++e[best_var];
    cert.steps.push_back({best_pf + 1, best_var + 1, e[best_var]});
  }
  throw MathError("insolubility cascade did not finish");
}

std::string InsolubilityCertificate::to_text() const {
  std::ostringstream os;
  for (const auto& s : steps)
    os << "pfaffian " << s.pfaffian << " forces v(x" << s.variable << ") >= " << s.exponent << "\n";
  return os.str();
}

CriticalLevel critical_level_check(const Model5& m, const Int& p, const InvariantOptions& opt) {
  if (!is_critical_form(m, p)) throw NotCritical("model does not have the critical pattern");
  InvariantTriple inv = invariants(m, opt);
  CriticalLevel out;
  out.level = level_from_invariants(inv, p).level;
  out.v_c4 = val(inv.c4, p);
  out.v_c6 = val(inv.c6, p);
  out.v_disc = val(inv.disc, p);
  if (out.level < 1) throw MathError("critical model of level 0");
  if (p != 5) {
    out.level_one_certified = out.v_c4 == 4 || out.v_disc == 12;
    if (!out.level_one_certified || out.level != 1)
      throw MathError("critical model at p != 5 without the level one valuations");
  }
  return out;
}

CycleReport detect_critical_cycle(const Model5& m, const Int& p, int max_steps) {
  if (!is_critical_form(m, p)) throw NotCritical("model does not have the critical pattern");
  CycleReport rep;
  rep.orbit.push_back(m);
  RatMat TA = rat_identity(5), TB = rat_identity(5);
  TA(0, 0) = Rat(p);
  for (int i = 0; i < 5; ++i) TB(i, i) = i < 2 ? Rat(1) / Rat(p) : Rat(1);
  const Transformation T{TA, TB};
  const auto perms = permutation_search_order();
  Transformation acc = Transformation::identity();
  Model5 cur = m;
  for (int k = 1; k <= max_steps; ++k) {
    Model5 mid = apply_transformation(T, cur);
    if (!is_integral(mid)) return rep;
    bool found = false;
    for (const auto& pa : perms) {
      for (const auto& pb : perms) {
        Transformation P{permutation_matrix(pa), permutation_matrix(pb)};
        Model5 cand = apply_transformation(P, mid);
        if (!is_critical_form(cand, p)) continue;
        Transformation step = compose(P, T);
        rep.steps.push_back(step);
        acc = compose(step, acc);
        cur = cand;
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) return rep;
    if (scalar_times_unit(acc.A, p) && scalar_times_unit(acc.B, p)) {
      rep.detected = true;
      rep.period = k;
      return rep;
    }
    rep.orbit.push_back(cur);
  }
  return rep;
}

Model5 random_critical_model(const Int& p, uint64_t seed, long bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> any(-bound, bound);
  auto unit = [&] {
    for (;;) {
      long x = any(rng);
      if (x != 0 && Int(x) % p != 0) return Rat(x);
    }
  };
  const Rat P(p);
  Model5 m;
  for (int e = 0; e < 10; ++e)
    for (int k = 0; k < 5; ++k) {
      Rat c;
      if (kLead[e] > 0) {
        const int t = kLead[e] - 1;
        c = k < t ? Rat(P * any(rng)) : k == t ? unit() : Rat(any(rng));
      } else {
        const int t = e == kE35 ? 0 : 1;
        c = k < t ? Rat(P * P * any(rng)) : k == t ? Rat(P * unit()) : Rat(P * any(rng));
      }
      m.e[e][k] = c;
    }
  return m;
}

Int critical_shape_resultant() {
  UPoly c4(std::vector<Rat>{1, -228, 494, 228, 1});
  UPoly q(std::vector<Rat>{-1, -11, 1});
  Rat r = resultant(c4, q);
  return r.get_num();
}

}  // namespace minred
