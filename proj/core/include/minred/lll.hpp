#pragma once

#include "minred/matrix.hpp"

namespace minred {

// Exact LLL on a positive definite Gram matrix G (n x n, rational).
// Returns a unimodular U such that the basis b'_j = sum_i U(i, j) b_i is
// LLL-reduced with parameter delta; the new Gram matrix is U^T G U.
IntMat lll_gram(const RatMat& G, const Rat& delta = Rat(99, 100));

// LLL on the columns of an integer matrix of full column rank.
// Returns U with M*U reduced.
IntMat lll_columns(const IntMat& M, const Rat& delta = Rat(99, 100));

}  // namespace minred
