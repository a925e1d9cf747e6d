#include "minred/generators.hpp"

#include <algorithm>

namespace minred {

namespace {

Int max_abs(const IntMat& m) {
  Int b = 0;
  for (const auto& x : m.a) b = std::max(b, Int(abs(x)));
  return b;
}

}  // namespace

IntMat random_unimodular(std::mt19937_64& rng, long bound) {
  IntMat U = int_identity(5);
  if (bound <= 0) return U;
  std::uniform_int_distribution<int> idx(0, 4);
  std::uniform_int_distribution<long> mult(-3, 3);
  // Random row operations while the entries stay within the bound.
  for (int step = 0; step < 400; ++step) {
    const int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    const long k = mult(rng);
    if (k == 0) continue;
    IntMat V = U;
    for (int c = 0; c < 5; ++c) V(i, c) += k * V(j, c);
    if (max_abs(V) <= bound) U = V;
  }
  // Random signed permutation.
  std::vector<int> perm{0, 1, 2, 3, 4};
  std::shuffle(perm.begin(), perm.end(), rng);
  IntMat P(5, 5, Int(0));
  for (int i = 0; i < 5; ++i) {
    P(i, perm[i]) = (rng() & 1) ? 1 : -1;
  }
  return int_mul(P, U);
}

Model5 random_integral_model(uint64_t seed, long bound) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> c(-bound, bound);
  Model5 m;
  for (auto& l : m.e)
    for (auto& x : l) x = c(rng);
  return m;
}

Scramble scramble(const Model5& m, uint64_t seed, long bound, const std::optional<Inflation>& inflate) {
  std::mt19937_64 rng(seed);
  auto pair = [&] {
    IntMat U = random_unimodular(rng, bound);
    IntMat V = random_unimodular(rng, bound);
    return Transformation{to_rat(U), to_rat(V)};
  };
  Transformation g = pair();
  if (inflate && inflate->k > 0) {
    // Split k = 2 sum(a) + sum(b) at random.
    std::array<long, 5> a{}, b{};
    long left = inflate->k;
    std::uniform_int_distribution<int> idx(0, 4);
    while (left > 0) {
      if (left >= 2 && (rng() % 3 == 0)) {
        ++a[idx(rng)];
        left -= 2;
      } else {
        ++b[idx(rng)];
        left -= 1;
      }
    }
    Transformation d{rat_identity(5), rat_identity(5)};
    for (int i = 0; i < 5; ++i) {
      Int pa, pb;
      mpz_pow_ui(pa.get_mpz_t(), inflate->p.get_mpz_t(), static_cast<unsigned long>(a[i]));
      mpz_pow_ui(pb.get_mpz_t(), inflate->p.get_mpz_t(), static_cast<unsigned long>(b[i]));
      d.A(i, i) = Rat(pa);
      d.B(i, i) = Rat(pb);
    }
    g = compose(pair(), compose(d, g));
  }
  return {apply_transformation(g, m), g};
}

Model5 make_model(const WeierstrassCoefficients& w) { return deg4_to_deg5(weierstrass_to_deg4(w)); }

}  // namespace minred
