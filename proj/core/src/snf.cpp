#include "minred/snf.hpp"

namespace minred {

namespace {

Int strip_p(Int x, const Int& p) {
  if (x == 0) return 0;
  x = abs(x);
  while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) x /= p;
  return x;
}

struct Reducer {
  IntMat M;
  IntMat V;
  RatMat U;
  bool track_u;
  Int p;
  std::vector<int> pivot_row;  // per column
  std::vector<long> d;

  void run() {
    int n = M.rows, m = M.cols;
    std::vector<bool> used(n, false);
    d.assign(m, kValInf);
    pivot_row.assign(m, -1);
    for (int t = 0; t < m; ++t) {
      long best = kValInf;
      int br = -1, bc = -1;
      for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        for (int j = t; j < m; ++j) {
          if (M(i, j) == 0) continue;
          long v = valuation(M(i, j), p);
          if (v < best) {
            best = v;
            br = i;
            bc = j;
          }
        }
      }
      if (br < 0) break;
      M.swap_cols(t, bc);
      V.swap_cols(t, bc);
      // Clear row br in the other columns with unimodular column operations.
      for (int k = t + 1; k < m; ++k) {
        if (M(br, k) == 0) continue;
        Int x = M(br, t), y = M(br, k), g, s, u;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        Int yg = y / g, xg = x / g;
        for (int i = 0; i < n; ++i) {
          Int a = M(i, t), b = M(i, k);
          M(i, t) = s * a + u * b;
          M(i, k) = xg * b - yg * a;
        }
        for (int i = 0; i < V.rows; ++i) {
          Int a = V(i, t), b = V(i, k);
          V(i, t) = s * a + u * b;
          V(i, k) = xg * b - yg * a;
        }
      }
      // Clear column t in the other unused rows with p-unit row multipliers.
      Int piv = M(br, t);
      for (int i = 0; i < n; ++i) {
        if (i == br || used[i] || M(i, t) == 0) continue;
        Int g = gcd(piv, M(i, t));
        Int a = piv / g, b = M(i, t) / g;
        for (int j = 0; j < m; ++j) M(i, j) = a * M(i, j) - b * M(br, j);
        if (track_u)
          for (int j = 0; j < U.cols; ++j) U(i, j) = Rat(a) * U(i, j) - Rat(b) * U(br, j);
        Int c = 0;
        for (int j = 0; j < m; ++j) c = gcd(c, M(i, j));
        c = strip_p(c, p);
        if (c > 1) {
          for (int j = 0; j < m; ++j) M(i, j) /= c;
          if (track_u)
            for (int j = 0; j < U.cols; ++j) U(i, j) /= c;
        }
      }
      used[br] = true;
      pivot_row[t] = br;
      d[t] = best;
    }
  }
};

}  // namespace

ColumnReduction p_column_reduce(const IntMat& M, const Int& p) {
  Reducer r{M, int_identity(M.cols), RatMat(), false, p, {}, {}};
  r.run();
  return {r.V, r.d};
}

SmithForm smith_normal_form(const IntMat& M, const Int& p) {
  Reducer r{M, int_identity(M.cols), rat_identity(M.rows), true, p, {}, {}};
  r.run();
  int n = M.rows, m = M.cols;
  RatMat U(n, n, Rat(0));
  std::vector<bool> placed(n, false);
  int next = 0;
  for (int t = 0; t < m && next < n; ++t) {
    int pr = r.pivot_row[t];
    if (pr < 0) break;
    Rat scale = rpow(p, r.d[t]) / Rat(r.M(pr, t));
    for (int j = 0; j < n; ++j) U(next, j) = scale * r.U(pr, j);
    placed[pr] = true;
    ++next;
  }
  for (int i = 0; i < n; ++i) {
    if (placed[i]) continue;
    for (int j = 0; j < n; ++j) U(next, j) = r.U(i, j);
    ++next;
  }
  IntMat D(n, m, Int(0));
  for (int t = 0; t < std::min(n, m); ++t)
    if (r.d[t] != kValInf) D(t, t) = ipow(p, static_cast<unsigned long>(r.d[t]));
  return {U, D, r.V, r.d};
}

}  // namespace minred
