#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "minred/models.hpp"

namespace minred {

struct InvariantTriple {
  Rat c4, c6, disc;
  bool satisfies_syzygy() const { return c4 * c4 * c4 - c6 * c6 == 1728 * disc; }
  bool operator==(const InvariantTriple& o) const { return c4 == o.c4 && c6 == o.c6 && disc == o.disc; }
  // (d^4 c4, d^6 c6, d^12 disc).
  InvariantTriple scaled(const Rat& d) const;
};

InvariantTriple make_triple(const Rat& c4, const Rat& c6);

InvariantTriple hesse_invariants(const Rat& a, const Rat& b);

InvariantTriple qi_invariants(const QI& qi);

struct InvariantOptions {
  uint64_t seed = 0x5eed5eedULL;
  int max_retries = 20;
};

// c4, c6, disc of a degree 5 model over Q, found from a point on a random
// hyperplane section over an etale algebra. A model whose Pfaffians do not
// cut out a curve of degree 5 raises SingularModel.
InvariantTriple invariants(const Model5& m, const InvariantOptions& opt = {});

// Integral Weierstrass coefficients with the given c4, c6 (u = 1 lift).
// Throws KrausConditionFailed when none exist.
WeierstrassCoefficients kraus_lift(const Int& c4, const Int& c6);
bool kraus_lift_exists(const Int& c4, const Int& c6);

struct JacobianResult {
  WeierstrassCoefficients w;
  bool fallback = false;  // y^2 = x^3 - 27 c4 x - 54 c6 was used
};
JacobianResult jacobian(const Model5& m, const InvariantOptions& opt = {});
JacobianResult jacobian_from_invariants(const InvariantTriple& t);

// v_p of the minimal discriminant of the curve with these invariants.
long minimal_discriminant_valuation(const InvariantTriple& t, const Int& p);

struct LevelReport {
  Int p;
  long v_model = 0;
  long v_min = 0;
  long level = 0;
};
LevelReport level_from_invariants(const InvariantTriple& t, const Int& p);
LevelReport level(const Model5& m, const Int& p, const InvariantOptions& opt = {});

}  // namespace minred
