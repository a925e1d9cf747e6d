#pragma once

#include <vector>

#include "minred/arith.hpp"

namespace minred {

// Exact rational linear programming over x >= 0 (dense two-phase simplex,
// Bland's rule).

enum class Sense { LE, GE, EQ };

struct LinearConstraint {
  std::vector<Rat> a;
  Sense sense = Sense::LE;
  Rat b;
};

struct LPProblem {
  int n = 0;                    // number of variables, all constrained >= 0
  std::vector<Rat> objective;   // maximised
  std::vector<LinearConstraint> constraints;
};

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rat value;
  std::vector<Rat> x;          // witness (Optimal only)
  std::vector<int> basis;      // basic column per row; columns >= n are slacks
  int pivots = 0;
};

LPResult simplex_maximize(const LPProblem& lp);

// Phase 1 once, then phase 2 for each objective from the same feasible basis.
// Returns one result per objective (all Infeasible when the region is empty).
std::vector<LPResult> simplex_maximize_many(int n, const std::vector<LinearConstraint>& constraints,
                                            const std::vector<std::vector<Rat>>& objectives);

bool satisfies(const LinearConstraint& c, const std::vector<Rat>& x);

}  // namespace minred
