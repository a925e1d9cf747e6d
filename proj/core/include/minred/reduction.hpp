#pragma once

#include <array>
#include <string>
#include <vector>

#include "minred/invariants.hpp"
#include "minred/models.hpp"
#include "minred/numeric.hpp"

namespace minred {

// Reduction over Q: find the Heisenberg-invariant inner product from the two
// real syzygetic 5-tuples and LLL-reduce coordinates against it.

struct HesseParameters {
  Rat a, b;
  bool operator==(const HesseParameters& o) const { return a == o.a && b == o.b; }
};

// D = ab(a^10 - 11 a^5 b^5 - b^10); returns (-dD/db, dD/da).
HesseParameters hessian_on_hesse(const Rat& a, const Rat& b);

// Where the Hessian comes from. The general Hessian algorithm is not part of
// this library, so reduce() needs one of these.
struct HessianHandle {
  enum class Kind { None, TransportedFromHesse, ExternalModel, Coordinates };
  Kind kind = Kind::None;
  // TransportedFromHesse: the model equals g * Hesse(a, b) exactly.
  Transformation g = Transformation::identity();
  Rat a = 0, b = 0;
  // ExternalModel: H(model), normalised like the transported Hessian.
  Model5 external{};
  // Coordinates: model(M x) is known to be nearly reduced; the invariant
  // form is taken to be |M^-1 x|^2 and the numeric pipeline is skipped.
  RatMat coordinates;

  static HessianHandle none() { return {}; }
  static HessianHandle transported(const Transformation& g, const Rat& a, const Rat& b);
  static HessianHandle external_model(const Model5& h);
  static HessianHandle coordinate_hint(const RatMat& m);
};

// The handle for g_applied * model, given a handle for model.
HessianHandle transport_handle(const HessianHandle& h, const Transformation& g_applied);

// Hint file:
//   hessian-hint transport      then "a = ..", "b = ..", "A:" and "B:" matrices
//   hessian-hint external       then a model in the models text format
//   hessian-hint coordinates    then an "M:" matrix
HessianHandle parse_hessian_hint(const std::string& text);
std::string format_hessian_hint(const HessianHandle& h);

// Exact Hessian for the handle; H(g Phi) = (det g)^2 g H(Phi). Throws
// MathError when a transported handle does not reproduce phi, or for
// handles that carry no Hessian.
Model5 hessian(const Model5& phi, const HessianHandle& h);

// A[r][i] with Pf(l Phi + m H)_i = l^2 A[0][i] + l m A[1][i] + m^2 A[2][i].
struct SyzygeticMatrix {
  std::array<Pfaffians, 3> A;
};
SyzygeticMatrix syzygetic_matrix(const Model5& phi, const Model5& h);

using CPoint = std::array<Complex, 5>;

struct SyzygeticTuple {
  std::array<Complex, 3> image;       // alpha of each point, unit norm
  std::array<CPoint, 5> points;       // unit norm
  std::array<CPoint, 5> duals;        // duals[i](points[j]) = delta_ij up to scale
  std::array<Real, 5> residuals;      // rank-one residual of A at each point
  int real_points = 0;
  bool conjugation_closed = false;
};

struct NumericOptions {
  int bits = 128;
  uint64_t seed = 0x7265647563650001ULL;
};

struct PointLocus {
  std::vector<SyzygeticTuple> tuples;  // 6 fibres, canonical order
  Real max_residual = 0;
  Real min_separation = 0;             // least projective distance between points
  int points() const { return static_cast<int>(tuples.size()) * 5; }
};

// The 6 image points in P^2 from the rank condition on the 3x4 matrix in
// (x : y : z) with entries built from c4 and c6.
std::vector<std::array<Complex, 3>> image_points(const InvariantTriple& inv, const NumericOptions& opt);

// The 30 points of {rank A <= 1}, grouped into fibres over the image points.
// Throws NumericFailure on residual, separation or count failures.
PointLocus thirty_points(const SyzygeticMatrix& A, const InvariantTriple& inv, const NumericOptions& opt);

struct RealTuples {
  SyzygeticTuple Y;  // 5 real points, real duals
  SyzygeticTuple Z;  // 1 real point; z0 real, z4 = conj z1, z3 = conj z2
};
RealTuples real_tuples(const std::vector<SyzygeticTuple>& tuples);

// Symmetric, positive definite, determinant 1; Q(x) = x^T G x.
RMat invariant_inner_product(const RealTuples& rt);

// Unimodular U with U^T G U LLL-reduced (delta = 0.99).
IntMat lll_reduce_gram(const RMat& g);

struct GramReport {
  RMat gram;
  int bits = 0;
  int points = 0;
  int real_tuples = 0;
  Real max_residual = 0;
  Real min_separation = 0;
  Real intersection_gap = 0;  // smallest singular value over the next one
};

// Numeric pipeline up to the Gram matrix, doubling the precision on failure
// from opt.bits up to max_bits.
GramReport compute_gram(const Model5& phi, const HessianHandle& h, const NumericOptions& opt = {},
                        int max_bits = 1024);

struct ReductionOptions {
  NumericOptions numeric;
  int max_bits = 1024;
};

struct ReductionResult {
  Model5 model;
  Transformation g = Transformation::identity();  // model = g * input
  bool reduced = false;
  std::vector<std::string> warnings;
  GramReport gram;  // empty gram when the pipeline did not run
};

// Integral input. On success the output is integral with |det A| = |det B| = 1.
// Without a usable handle, or when the numerics fail at every precision, the
// input is returned unchanged with a warning.
ReductionResult reduce(const Model5& phi, const HessianHandle& h, const ReductionOptions& opt = {});

}  // namespace minred
