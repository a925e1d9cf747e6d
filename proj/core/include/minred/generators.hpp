#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "minred/models.hpp"

namespace minred {

// Seeded fixture generators for tests, benchmarks and the CLI.

// det = +-1, entries bounded by `bound` in absolute value. bound 0 gives the
// identity.
IntMat random_unimodular(std::mt19937_64& rng, long bound);

// Entries uniform in [-bound, bound].
Model5 random_integral_model(uint64_t seed, long bound);

struct Inflation {
  Int p;
  long k = 0;  // level increase v_p(det g)
};

struct Scramble {
  Model5 model;
  Transformation g = Transformation::identity();  // model = g * input
};

// [U, V] with U, V unimodular of entries <= bound. With an inflation, a
// diagonal pair [Diag(p^a), Diag(p^b)] with 2 sum(a) + sum(b) = k is inserted
// between two such scrambles, so the result stays integral and its level at p
// rises by exactly k.
Scramble scramble(const Model5& m, uint64_t seed, long bound, const std::optional<Inflation>& inflate = {});

// Integral degree 5 model of (E, 5.O) for a Weierstrass equation, via the
// degree 4 model.
Model5 make_model(const WeierstrassCoefficients& w);

}  // namespace minred
