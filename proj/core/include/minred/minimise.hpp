#pragma once

#include <optional>
#include <string>
#include <vector>

#include "minred/invariants.hpp"
#include "minred/models.hpp"
#include "minred/singular.hpp"

namespace minred {

// Local minimisation at a prime p. All transformations produced here have
// entries in Z[1/p] with determinants that are powers of p up to sign, so
// other primes are never affected.

// Five Pfaffians independent mod p. Requires a p-integral model.
bool is_saturated(const Model5& m, const Int& p);

struct StepResult {
  Model5 model;
  Transformation g = Transformation::identity();
  long v_det = 0;  // v_p(det g); the level changes by exactly this amount
  long e = 0;      // v_p of the Pfaffian content after Step 1 (0 iff saturated)
};

// Step 1: rewrite the Pfaffians over a basis independent mod p via [A, mu I],
// rescaled to a primitive integral model. Throws SingularModel when the
// Pfaffians are linearly dependent over Q.
StepResult saturation_step_one(const Model5& m, const Int& p);

// Step 1 followed by Step 2 (divide one row and column by p^e). The result has
// the least level among integral models [A, mu I]-equivalent to the input.
StepResult saturate(const Model5& m, const Int& p);

// Step 1 followed by the modified Step 2 (two rows and columns) and the
// cheapest [I, B] restoring integrality. Throws MathError when the Step 1
// output is already saturated.
StepResult desaturation_descent(const Model5& m, const Int& p);

// [I, B] of least v_p(det B) making the model p-integral. For integral input
// this never increases the level and lowers it when the coefficient vectors
// span a proper sublattice at p.
StepResult optimise_substitution(const Model5& m, const Int& p);

// Repeats Step 1, desaturation_descent and optimise_substitution until the
// model is saturated, p-integral and no substitution lowers the level.
StepResult make_saturated(const Model5& m, const Int& p);

// Unimodular size reduction: LLL on the coefficient lattice (B side) and on
// the Pfaffian lattice (A side), alternated while the coefficients shrink.
// det g = +-1, so levels at every prime are unchanged. Integral input only.
StepResult size_reduce(const Model5& m);

// A side only: a unimodular A making the Pfaffian quadrics an LLL-reduced
// basis of the lattice they span in Z^15. The coordinates are untouched.
StepResult reduce_pfaffian_basis(const Model5& m);

// Unimodular B0 with B0 l == 0 mod p in the first m coordinates for every l in
// the span, and the transformation [I, Diag(I_m, p I_k) B0] built from it.
Transformation singular_substitution(const SingularSpan& span, const Int& p);

struct LocalState {
  Model5 phi;
  Int p;
  Transformation g_acc = Transformation::identity();
  long v_det_acc = 0;
  long level_0 = 0;
  int last_span_forms = 0;  // forms cutting out the singular span in the latest step
  long level() const { return level_0 + v_det_acc; }
};

struct MinimiseOptions {
  int max_stagnant = 6;
  int max_iterations = 400;
  SingularOptions singular;
  InvariantOptions invariants;
};

// One iteration of the singular-locus procedure followed by re-saturation.
// Requires a saturated state of positive level; the level never increases.
LocalState minimise_step(const LocalState& s, const MinimiseOptions& opt = {});

struct IterationRecord {
  long level_after = 0;
  int span_forms = 0;  // number of independent forms cutting out the singular span
};

struct LocalMinimisation {
  Int p;
  Model5 model;
  Transformation g = Transformation::identity();
  long level_before = 0;
  long level_after = 0;
  int iterations = 0;
  int longest_plateau = 0;  // most iterations spent at one level before it dropped
  std::vector<IterationRecord> trace;
};

// Minimises at p. Stops when the level reaches 0 or after max_stagnant
// consecutive iterations without a decrease (the model is then minimal).
// The level is read from the invariants once and tracked through det g.
LocalMinimisation minimise_local(const Model5& m, const Int& p, const MinimiseOptions& opt = {});
LocalMinimisation minimise_local(const Model5& m, const Int& p, const InvariantTriple& inv,
                                 const MinimiseOptions& opt = {});

// Singular-model mode: iterate the singular-locus procedure with Step 1 only,
// without level bookkeeping, until Step 1 reports a non-saturated model.
struct StepModeRecord {
  int span_forms = 0;
  long v_det = 0;
  long e = 0;
  Model5 model;
};
struct StepModeReport {
  std::vector<StepModeRecord> steps;
  bool reached_non_saturated = false;
  int iterations() const { return static_cast<int>(steps.size()); }
};
StepModeReport step_mode(const Model5& m, const Int& p, int max_iterations, const MinimiseOptions& opt = {});

struct PrimeReport {
  Int p;
  long level_before = 0;
  long level_after = 0;
  int iterations = 0;
};

struct GlobalMinimisation {
  Model5 model;
  Transformation g = Transformation::identity();
  InvariantTriple invariants;
  std::vector<PrimeReport> primes;
  Int unfactored = 1;  // cofactor of the discriminant left after the factor budget
};

// Clears denominators, then minimises at each prime in `primes`, or, when
// the list is empty, at each prime found in the discriminant within the
// trial-division budget. Primes are processed in ascending order.
GlobalMinimisation minimise_global(const Model5& m, const std::vector<Int>& primes = {},
                                   unsigned long factor_budget = 1000000, const MinimiseOptions& opt = {});

}  // namespace minred
