#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "minred/lp.hpp"
#include "minred/models.hpp"

namespace minred {

// A weight (r, s): both non-decreasing, 2*sum(r) = 1 + sum(s).
struct Weight {
  std::array<long, 5> r{};
  std::array<long, 5> s{};
  bool operator==(const Weight&) const = default;
};

// Throws MathError unless r, s are non-decreasing and balanced.
Weight make_weight(const std::array<long, 5>& r, const std::array<long, 5>& s);
bool is_valid_weight(const Weight& w);
Weight shift(const Weight& w, long lambda);  // (r + lambda, s + 2 lambda)
std::string format_weight(const Weight& w);

// r_i + r_j <= s_k + m, indices 0-based with i < j.
struct StandardInequality {
  int i = 0, j = 1, k = 0;
  long m = 0;
  bool operator==(const StandardInequality&) const = default;
  auto operator<=>(const StandardInequality&) const = default;
};

// True when x implies y for every (r, s) with r and s non-decreasing.
bool implies(const StandardInequality& x, const StandardInequality& y);
std::string format_inequality(const StandardInequality& q);  // 1-based

bool is_weight_for(const Model5& m, const Int& p, const Weight& w);
bool dominates(const Weight& w, const Weight& w2);

// Standard inequalities, one of which holds iff (r, s) does not dominate w,
// with implied ones removed.
std::vector<StandardInequality> non_domination_disjunction(const Weight& w);

// The LP over (r1..r5, s1..s5) >= 0 with both sequences non-decreasing and
// the given standard inequalities; maximises sum(2 r_i - s_i).
LPProblem weight_lp(const std::vector<StandardInequality>& ineqs);

struct BranchRecord {
  int nu = 0;        // table row being processed (1-based)
  int index = 0;     // branch index within this row, in merge order
  std::vector<StandardInequality> constraints;
  std::string status;  // "closed", "open" or "implied"
  std::optional<Rat> optimum;  // nullopt = unbounded or not computed
  std::vector<int> basis;
  std::vector<StandardInequality> tightened;
};

struct VerificationCertificate {
  bool pass = false;
  std::vector<int> disjunction_sizes;  // per table row
  std::vector<int> remaining;          // open cases after each row
  std::vector<BranchRecord> branches;
  std::vector<std::vector<StandardInequality>> surviving;
  std::optional<Weight> witness;       // a weight dominating no table entry (FAIL only)
  std::string to_text() const;
};

struct VerifyOptions {
  int jobs = 1;
  int witness_bound = 6;  // search box for the FAIL witness: 0 = r1 <= r5 <= bound
};

// Certifies that every weight satisfying side_conditions dominates some table
// entry. Failure is reported as pass = false with the surviving cases and,
// when the box search finds one, a concrete undominated weight.
VerificationCertificate verify_domination_table(const std::vector<Weight>& table,
                                                const std::vector<StandardInequality>& side_conditions,
                                                const VerifyOptions& opt = {});

const std::vector<Weight>& seven_weight_table();
const std::vector<Weight>& twenty_nine_weight_table();
const std::vector<int>& twenty_nine_lambda();  // published branch widths
std::vector<StandardInequality> seven_weight_side_conditions();  // r1+r4 <= s1, r2+r3 <= s1

// Searches the box r1 = 0 <= ... <= r5 <= bound for a weight satisfying all
// inequalities that dominates no table entry.
std::optional<Weight> find_undominated_weight(const std::vector<Weight>& table,
                                              const std::vector<StandardInequality>& ineqs, int bound);

}  // namespace minred
