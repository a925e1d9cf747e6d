#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minred/invariants.hpp"
#include "minred/models.hpp"

namespace minred {

// Critical models: a literal, coordinate-dependent pattern on the reduction
// mod p. Entry (i, j) of the reduction must look like [t, ..., 5] with the
// x_t coefficient a unit and earlier coefficients zero:
//   (1,2): t=1  (1,3): t=2  (1,4): t=3  (1,5): t=4
//   (2,3): t=3  (2,4): t=4  (2,5): t=5  (3,4): t=5
// while Phi_35 and Phi_45 vanish mod p and p^-1 Phi_35, p^-1 Phi_45 reduce to
// shapes with t = 1 and t = 2 respectively.

struct PatternViolation {
  int i = 0, j = 0, k = 0;  // 1-based entry and variable
  std::string reason;
};

// Empty when the model is critical at p. Requires an integral model.
std::vector<PatternViolation> critical_pattern_violations(const Model5& m, const Int& p);
bool is_critical_form(const Model5& m, const Int& p);

// One step of the divisibility cascade: the reduction of Pfaffian `pfaffian`
// (1-based), after substituting the divisibilities found so far, is a unit
// times y_var^2, which forces v_p(x_var) >= exponent.
struct CascadeStep {
  int pfaffian = 0;
  int variable = 0;
  long exponent = 0;
};

struct InsolubilityCertificate {
  Int p;
  std::vector<CascadeStep> steps;
  std::string to_text() const;
};

// Throws NotCritical when the pattern fails, MathError if the cascade stalls.
InsolubilityCertificate insolubility_certificate(const Model5& m, const Int& p);

struct CriticalLevel {
  long level = 0;
  long v_c4 = 0, v_c6 = 0, v_disc = 0;
  bool level_one_certified = false;  // v(c4) = 4 or v(disc) = 12 with p != 5
};

// Throws NotCritical when the pattern fails, MathError when the level is 0 or
// when p != 5 and neither valuation criterion holds.
CriticalLevel critical_level_check(const Model5& m, const Int& p, const InvariantOptions& opt = {});

struct CycleReport {
  bool detected = false;
  int period = 0;
  std::vector<Model5> orbit;            // critical models visited, starting with the input
  std::vector<Transformation> steps;    // transformation from orbit[k] to orbit[k+1]
};

// Applies [Diag(p,1,1,1,1), p^-1 Diag(1,1,p,p,p)] followed by a pair of
// permutation matrices restoring the critical pattern, until the accumulated
// transformation is a scalar multiple of an element of GL5(Z_(p))^2 (the
// class has recurred). NoCycle (detected = false) if the pattern cannot be
// restored or max_steps is reached.
CycleReport detect_critical_cycle(const Model5& m, const Int& p, int max_steps = 12);

// A random model matching the critical pattern, entries bounded by `bound`
// (times p where the pattern needs it).
Model5 random_critical_model(const Int& p, uint64_t seed, long bound = 9);

// Resultant of c4(l, 1) and (l^2 - 11 l - 1) for the reduced critical shape,
// c4(l, m) = l^4 + 228 l^3 m + 494 l^2 m^2 - 228 l m^3 + m^4.
Int critical_shape_resultant();

}  // namespace minred
