#include "minred/lll.hpp"

#include "minred/errors.hpp"

namespace minred {

namespace {

Int round_rat(const Rat& x) {
  // floor(x + 1/2)
  Rat y = x + Rat(1, 2);
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return q;
}

}  // namespace

IntMat lll_gram(const RatMat& G0, const Rat& delta) {
  const int n = G0.rows;
  RatMat G = G0;
  IntMat U = int_identity(n);
  if (n <= 1) return U;
  RatMat mu(n, n, Rat(0));
  std::vector<Rat> B(n, Rat(0));
  int kmax = 0;
  B[0] = G(0, 0);
  if (B[0] <= 0) throw MathError("Gram matrix is not positive definite");

  auto gram_schmidt_row = [&](int k) {
    for (int j = 0; j < k; ++j) {
      Rat s = G(k, j);
      for (int i = 0; i < j; ++i) s -= mu(j, i) * mu(k, i) * B[i];
      mu(k, j) = s / B[j];
    }
    Rat s = G(k, k);
    for (int j = 0; j < k; ++j) s -= mu(k, j) * mu(k, j) * B[j];
    if (s <= 0) throw MathError("Gram matrix is not positive definite");
    B[k] = s;
  };
  // b_k -= q b_l
  auto red = [&](int k, int l) {
    Int q = round_rat(mu(k, l));
    if (q == 0) return;
    Rat rq(q);
    for (int i = 0; i < n; ++i) U(i, k) -= q * U(i, l);
    Rat gkk = G(k, k) - 2 * rq * G(l, k) + rq * rq * G(l, l);
    for (int i = 0; i < n; ++i)
      if (i != k) G(k, i) -= rq * G(l, i);
    G(k, k) = gkk;
    for (int i = 0; i < n; ++i) G(i, k) = G(k, i);
    mu(k, l) -= rq;
    for (int i = 0; i < l; ++i) mu(k, i) -= rq * mu(l, i);
  };
  auto swap = [&](int k) {
    U.swap_cols(k, k - 1);
    G.swap_rows(k, k - 1);
    G.swap_cols(k, k - 1);
    for (int j = 0; j < k - 1; ++j) std::swap(mu(k, j), mu(k - 1, j));
    Rat m = mu(k, k - 1);
    Rat Bn = B[k] + m * m * B[k - 1];
    mu(k, k - 1) = m * B[k - 1] / Bn;
    B[k] = B[k - 1] * B[k] / Bn;
    B[k - 1] = Bn;
    for (int i = k + 1; i <= kmax; ++i) {
      Rat t = mu(i, k);
      mu(i, k) = mu(i, k - 1) - m * t;
      mu(i, k - 1) = t + mu(k, k - 1) * mu(i, k);
    }
  };

  int k = 1;
  long guard = 0;
  while (k < n) {
    if (++guard > 10000000) throw Inconclusive("LLL did not terminate");
    if (k > kmax) {
      kmax = k;
      gram_schmidt_row(k);
    }
    red(k, k - 1);
    if (B[k] < (delta - mu(k, k - 1) * mu(k, k - 1)) * B[k - 1]) {
      swap(k);
      k = std::max(k - 1, 1);
    } else {
      for (int l = k - 2; l >= 0; --l) red(k, l);
      ++k;
    }
  }
  return U;
}

IntMat lll_columns(const IntMat& M, const Rat& delta) {
  RatMat G(M.cols, M.cols, Rat(0));
  for (int a = 0; a < M.cols; ++a)
    for (int b = a; b < M.cols; ++b) {
      Int s = 0;
      for (int i = 0; i < M.rows; ++i) s += M(i, a) * M(i, b);
      G(a, b) = G(b, a) = Rat(s);
    }
  return lll_gram(G, delta);
}

}  // namespace minred
