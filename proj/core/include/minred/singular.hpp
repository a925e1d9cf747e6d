#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "minred/groebner.hpp"
#include "minred/models.hpp"

namespace minred {

// Linear forms over F_p (coefficients in [0, p)) vanishing on the singular
// locus of the reduction of a model, as an RREF basis.
struct SingularSpan {
  std::vector<std::array<uint64_t, 5>> forms;
  int sing_dimension = -1;  // projective dimension of the singular locus, -1 if empty
  int k() const { return static_cast<int>(forms.size()); }
};

struct SingularOptions {
  uint64_t min_field_size = 4096;  // the working field GF(p^k) has at least this many elements
  int max_power = 12;              // l^N must lie in the ideal for some N <= max_power
  uint64_t seed = 0x51a9ULL;
  int max_sections = 12;
};

// Ideal of the singular locus: the Pfaffians and the 3x3 minors of their Jacobian.
std::vector<Poly> singular_ideal(const FqField& F, const Model5T<uint64_t>& m);

// p must be a prime below 2^31 and the model p-integral. Throws Inconclusive
// when the span is not F_p-rational or fails the power check.
SingularSpan singular_span(const Model5& m, uint64_t p, const SingularOptions& opt = {});

// Span over F_{p^e} of the singular points enumerated in P^4(F_{p^e}), as forms.
// Exhaustive, so only for small p^e.
SingularSpan singular_span_bruteforce(const Model5& m, uint64_t p, int e);

}  // namespace minred
