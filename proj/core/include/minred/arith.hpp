#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

namespace minred {

using Int = mpz_class;
using Rat = mpq_class;

// Valuation of zero.
inline constexpr long kValInf = LONG_MAX;

bool is_prime(const Int& n);

// A prime p, checked at construction.
class PAdicContext {
 public:
  explicit PAdicContext(const Int& p);
  const Int& p() const { return p_; }

 private:
  Int p_;
};

long valuation(const Int& x, const Int& p);
long valuation(const Rat& x, const Int& p);
inline long valuation(const Rat& x, const PAdicContext& ctx) { return valuation(x, ctx.p()); }

// p^k for k >= 0.
Int ipow(const Int& p, unsigned long k);
// p^k as a rational, any sign of k.
Rat rpow(const Int& p, long k);

// Exact division helpers.
Int floor_div(const Int& a, const Int& b);
Int mod_nonneg(const Int& a, const Int& m);

// Trial division up to `budget`, then Miller-Rabin on the cofactor.
// Returns the prime factors found; `rest` receives any composite part left over.
std::vector<Int> factor_with_budget(Int n, unsigned long budget, Int& rest);

std::string to_string(const Rat& x);
Rat parse_rat(const std::string& s);

}  // namespace minred
