#include "minred/groebner.hpp"

#include <algorithm>

#include "minred/errors.hpp"

namespace minred {

using mono::Mono;

int Poly::degree() const {
  int d = -1;
  for (const auto& x : t) d = std::max(d, mono::deg(x.m));
  return d;
}

bool Poly::is_homogeneous() const {
  for (const auto& x : t)
    if (mono::deg(x.m) != mono::deg(t.front().m)) return false;
  return true;
}

namespace {

// a + s * m * b
Poly axpy(const FqField& F, const Poly& a, uint64_t s, Mono m, const Poly& b) {
  Poly r;
  r.t.reserve(a.t.size() + b.t.size());
  size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size()) {
      r.t.push_back(a.t[i++]);
      continue;
    }
    Mono bm = b.t[j].m + m;
    if (i == a.t.size() || mono::greater(bm, a.t[i].m)) {
      r.t.push_back({bm, F.mul(s, b.t[j].c)});
      ++j;
    } else if (a.t[i].m == bm) {
      uint64_t c = F.add(a.t[i].c, F.mul(s, b.t[j].c));
      if (c) r.t.push_back({bm, c});
      ++i;
      ++j;
    } else {
      r.t.push_back(a.t[i++]);
    }
  }
  return r;
}

void sort_terms(const FqField& F, std::vector<Term>& t) {
  std::sort(t.begin(), t.end(), [](const Term& x, const Term& y) { return mono::greater(x.m, y.m); });
  std::vector<Term> out;
  out.reserve(t.size());
  for (const auto& x : t) {
    if (!out.empty() && out.back().m == x.m)
      out.back().c = F.add(out.back().c, x.c);
    else
      out.push_back(x);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& x) { return x.c == 0; }), out.end());
  t.swap(out);
}

}  // namespace

Poly poly_add(const FqField& F, const Poly& a, const Poly& b) { return axpy(F, a, 1, 0, b); }
Poly poly_sub(const FqField& F, const Poly& a, const Poly& b) { return axpy(F, a, F.neg(1), 0, b); }

Poly poly_scale(const FqField& F, const Poly& a, uint64_t c, Mono m) {
  Poly r;
  if (c == 0) return r;
  r.t.reserve(a.t.size());
  for (const auto& x : a.t) r.t.push_back({x.m + m, F.mul(c, x.c)});
  return r;
}

Poly poly_mul(const FqField& F, const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& x : a.t) r = axpy(F, r, x.c, x.m, b);
  return r;
}

Poly poly_monic(const FqField& F, const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(F, a, F.inv(a.lc()));
}

Poly poly_linear(const FqField&, const std::array<uint64_t, 5>& c) {
  Poly r;
  for (int i = 0; i < 5; ++i)
    if (c[i]) r.t.push_back({mono::var(i), c[i]});
  // var(0) > var(1) > ... in grevlex, so the terms are already sorted.
  return r;
}

Poly poly_pow(const FqField& F, const Poly& a, int n) {
  Poly r;
  r.t.push_back({0, 1});
  for (int i = 0; i < n; ++i) r = poly_mul(F, r, a);
  return r;
}

Poly poly_substitute(const FqField& F, const Poly& a, const Mat<uint64_t>& T) {
  std::array<std::vector<Poly>, 5> pw;
  for (int i = 0; i < 5; ++i) {
    std::array<uint64_t, 5> c;
    for (int j = 0; j < 5; ++j) c[j] = T(i, j);
    Poly one;
    one.t.push_back({0, 1});
    pw[i].push_back(one);
    pw[i].push_back(poly_linear(F, c));
  }
  auto power = [&](int i, int e) -> const Poly& {
    while (static_cast<int>(pw[i].size()) <= e) pw[i].push_back(poly_mul(F, pw[i].back(), pw[i][1]));
    return pw[i][e];
  };
  Poly r;
  for (const auto& x : a.t) {
    Poly term;
    term.t.push_back({0, x.c});
    for (int i = 0; i < 5; ++i) {
      int e = mono::exp(x.m, i);
      if (e) term = poly_mul(F, term, power(i, e));
    }
    r = poly_add(F, r, term);
  }
  return r;
}

Poly poly_strip_x5(const Poly& a) {
  if (a.is_zero()) return a;
  int e = 1 << 30;
  for (const auto& x : a.t) e = std::min(e, mono::exp(x.m, 4));
  Poly r = a;
  Mono s = (uint64_t(e) << 48) | (uint64_t(e) << mono::kShift[4]);
  for (auto& x : r.t) x.m -= s;
  return r;
}

Poly poly_dehomogenize_x5(const FqField& F, const Poly& a) {
  Poly r;
  for (const auto& x : a.t) {
    uint64_t e = mono::exp(x.m, 4);
    r.t.push_back({x.m - ((e << 48) | (e << mono::kShift[4])), x.c});
  }
  sort_terms(F, r.t);
  return r;
}

uint64_t poly_eval(const FqField& F, const Poly& a, const std::array<uint64_t, 5>& x) {
  uint64_t s = 0;
  for (const auto& t : a.t) {
    uint64_t v = t.c;
    for (int i = 0; i < 5; ++i) {
      int e = mono::exp(t.m, i);
      if (e) v = F.mul(v, F.pow(x[i], e));
    }
    s = F.add(s, v);
  }
  return s;
}

Poly poly_diff(const FqField& F, const Poly& a, int i) {
  Poly r;
  for (const auto& t : a.t) {
    int e = mono::exp(t.m, i);
    if (!e) continue;
    uint64_t c = F.mul(t.c, F.from_int(e));
    if (!c) continue;
    r.t.push_back({t.m - mono::var(i), c});
  }
  // Dividing by x_i preserves the relative grevlex order of terms of equal degree
  // but not across degrees, so re-sort.
  sort_terms(F, r.t);
  return r;
}

Poly normal_form(const FqField& F, Poly f, const std::vector<Poly>& G) {
  Poly r;
  while (!f.is_zero()) {
    const Term lt = f.t.front();
    const Poly* div = nullptr;
    for (const auto& g : G)
      if (!g.is_zero() && mono::divides(g.lm(), lt.m)) {
        div = &g;
        break;
      }
    if (div) {
      uint64_t s = F.neg(F.div(lt.c, div->lc()));
      f = axpy(F, f, s, mono::quot(lt.m, div->lm()), *div);
      continue;
    }
    // Move the run of irreducible leading terms to r in one go.
    size_t k = 0;
    while (k < f.t.size()) {
      bool red = false;
      for (const auto& g : G)
        if (!g.is_zero() && mono::divides(g.lm(), f.t[k].m)) {
          red = true;
          break;
        }
      if (red) break;
      r.t.push_back(f.t[k++]);
    }
    f.t.erase(f.t.begin(), f.t.begin() + static_cast<long>(k));
  }
  return r;
}

namespace {

struct Pair {
  size_t i, j;
  Mono lcm;
};

// Interreduces a basis whose leading monomials are already known to generate
// the initial ideal: drops redundant elements and tail-reduces the rest.
std::vector<Poly> reduce_basis(const FqField& F, std::vector<Poly> G) {
  std::vector<Poly> keep;
  for (size_t a = 0; a < G.size(); ++a) {
    bool redundant = false;
    for (size_t b = 0; b < G.size() && !redundant; ++b) {
      if (a == b) continue;
      if (mono::divides(G[b].lm(), G[a].lm()) && (G[b].lm() != G[a].lm() || b < a)) redundant = true;
    }
    if (!redundant) keep.push_back(poly_monic(F, G[a]));
  }
  for (size_t a = 0; a < keep.size(); ++a) {
    Poly head;
    head.t.push_back(keep[a].t.front());
    Poly tail;
    tail.t.assign(keep[a].t.begin() + 1, keep[a].t.end());
    std::vector<Poly> others;
    for (size_t b = 0; b < keep.size(); ++b)
      if (b != a) others.push_back(keep[b]);
    keep[a] = poly_add(F, head, normal_form(F, tail, others));
  }
  std::sort(keep.begin(), keep.end(), [](const Poly& x, const Poly& y) { return mono::greater(y.lm(), x.lm()); });
  return keep;
}

}  // namespace

std::vector<Poly> groebner_basis(const FqField& F, std::vector<Poly> gens, const GroebnerOptions& opt) {
  std::vector<Poly> all;          // every basis element ever added
  std::vector<size_t> active;     // indices into all forming the current basis
  std::vector<Pair> pairs;
  std::vector<Poly> cur;

  auto current = [&]() {
    std::vector<Poly> g;
    g.reserve(active.size());
    for (size_t k : active) g.push_back(all[k]);
    return g;
  };

  // Gebauer-Moeller update with the new element h = all.back().
  auto update = [&]() {
    size_t h = all.size() - 1;
    Mono lh = all[h].lm();
    std::vector<Pair> C;
    for (size_t g : active) C.push_back({g, h, mono::lcm(all[g].lm(), lh)});
    std::vector<Pair> D;
    for (size_t a = 0; a < C.size(); ++a) {
      bool keep = mono::coprime(all[C[a].i].lm(), lh);
      if (!keep) {
        keep = true;
        for (size_t b = a + 1; b < C.size() && keep; ++b)
          if (mono::divides(C[b].lcm, C[a].lcm)) keep = false;
        for (size_t b = 0; b < D.size() && keep; ++b)
          if (mono::divides(D[b].lcm, C[a].lcm)) keep = false;
      }
      if (keep) D.push_back(C[a]);
    }
    std::vector<Pair> E;
    for (const auto& d : D)
      if (!mono::coprime(all[d.i].lm(), lh)) E.push_back(d);
    std::vector<Pair> B2;
    for (const auto& p : pairs) {
      bool drop = mono::divides(lh, p.lcm) && mono::lcm(all[p.i].lm(), lh) != p.lcm &&
                  mono::lcm(all[p.j].lm(), lh) != p.lcm;
      if (!drop) B2.push_back(p);
    }
    for (const auto& e : E) B2.push_back(e);
    pairs.swap(B2);
    std::vector<size_t> act2;
    for (size_t g : active)
      if (!mono::divides(lh, all[g].lm())) act2.push_back(g);
    act2.push_back(h);
    active.swap(act2);
    cur = current();
  };

  auto add = [&](Poly h) {
    if (h.is_zero()) return;
    all.push_back(poly_monic(F, h));
    update();
    if (all.size() > opt.max_basis) throw Inconclusive("Groebner basis exceeded size cap");
  };

  std::sort(gens.begin(), gens.end(), [](const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return !a.is_zero() && b.is_zero();
    return mono::greater(b.lm(), a.lm());
  });
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    add(normal_form(F, g, cur));
  }

  while (!pairs.empty()) {
    // Normal strategy: smallest lcm first.
    size_t best = 0;
    for (size_t k = 1; k < pairs.size(); ++k)
      if (mono::greater(pairs[best].lcm, pairs[k].lcm)) best = k;
    Pair pr = pairs[best];
    pairs.erase(pairs.begin() + static_cast<long>(best));
    const Poly& f = all[pr.i];
    const Poly& g = all[pr.j];
    Poly s = axpy(F, poly_scale(F, f, 1, mono::quot(pr.lcm, f.lm())), F.neg(1), mono::quot(pr.lcm, g.lm()), g);
    add(normal_form(F, s, cur));
  }
  return reduce_basis(F, current());
}

int projective_dimension(const std::vector<Poly>& gb) {
  std::vector<Mono> lms;
  for (const auto& g : gb)
    if (!g.is_zero()) {
      if (mono::deg(g.lm()) == 0) return -1;
      lms.push_back(g.lm());
    }
  int best = 0;
  for (int S = 0; S < 32; ++S) {
    int sz = __builtin_popcount(static_cast<unsigned>(S));
    if (sz <= best) continue;
    bool indep = true;
    for (Mono m : lms) {
      bool inside = true;
      for (int i = 0; i < 5; ++i)
        if (mono::exp(m, i) && !(S >> i & 1)) inside = false;
      if (inside) {
        indep = false;
        break;
      }
    }
    if (indep) best = sz;
  }
  return best - 1;
}

std::vector<Poly> saturate_x5(const FqField& F, const std::vector<Poly>& gb) {
  std::vector<Poly> out;
  for (const auto& g : gb) out.push_back(poly_strip_x5(g));
  return reduce_basis(F, out);
}

}  // namespace minred
