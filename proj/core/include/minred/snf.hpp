#pragma once

#include <vector>

#include "minred/arith.hpp"
#include "minred/matrix.hpp"

namespace minred {

// Column reduction over Z localized at p. V is in GL_m(Z) (det +-1), and the
// columns of M*V, divided by p^d[j], are linearly independent mod p (columns
// with d[j] == kValInf are zero). d is non-decreasing.
struct ColumnReduction {
  IntMat V;
  std::vector<long> d;
};
ColumnReduction p_column_reduce(const IntMat& M, const Int& p);

// Smith normal form over Z_(p): U*M*V == D exactly, U in GL_n(Z_(p)) (rational
// entries with p-unit denominators and unit determinant), V in GL_m(Z), D
// diagonal with entries p^d[0] | p^d[1] | ... (zero where d == kValInf).
struct SmithForm {
  RatMat U;
  IntMat D;
  IntMat V;
  std::vector<long> d;
};
SmithForm smith_normal_form(const IntMat& M, const Int& p);

}  // namespace minred
