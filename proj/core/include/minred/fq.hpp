#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "minred/arith.hpp"

namespace minred {

// GF(p^k). Elements are integers in [0, q) whose base-p digits are the
// coefficients of a polynomial modulo a fixed primitive polynomial (the first
// primitive monic polynomial in lexicographic coefficient order).
// k = 1 uses plain modular arithmetic; k > 1 uses log/Zech tables.
class FqField {
 public:
  using T = uint64_t;

  static constexpr int kMaxDegreeDefault = 12;
  static constexpr uint64_t kMaxTableSize = uint64_t(1) << 22;

  FqField(uint64_t p, int k, int max_degree = kMaxDegreeDefault);

  uint64_t p() const { return p_; }
  int degree() const { return k_; }
  uint64_t order() const { return q_; }
  const std::vector<uint64_t>& modulus() const { return modulus_; }

  T zero() const { return 0; }
  T one() const { return 1; }
  T from_int(int64_t a) const;
  T from_mpz(const Int& a) const;
  bool is_zero(T a) const { return a == 0; }
  bool is_unit(T a) const { return a != 0; }

  T add(T a, T b) const;
  T sub(T a, T b) const { return add(a, neg(b)); }
  T neg(T a) const;
  T mul(T a, T b) const;
  T inv(T a) const;
  T div(T a, T b) const { return mul(a, inv(b)); }
  T pow(T a, uint64_t e) const;
  // x -> x^p.
  T frobenius(T a) const { return pow(a, p_); }
  // Inverse of x -> x^(p^j).
  T frobenius_inverse(T a, int j) const;
  bool in_prime_field(T a) const { return a < p_; }
  // Primitive element used for the tables (the class of x), or a generator for k = 1.
  T generator() const { return gen_; }

  // Digits in base p (polynomial coefficients, low first).
  std::vector<uint64_t> digits(T a) const;

 private:
  uint64_t p_;
  int k_;
  uint64_t q_;
  std::vector<uint64_t> modulus_;  // monic, low-degree first, size k+1
  std::vector<uint32_t> exp_;      // exp_[i] = g^i, i in [0, q-1)
  std::vector<uint32_t> log_;      // log_[a] for a != 0
  std::vector<int64_t> zech_;      // log(1 + g^n), -1 if zero
  T gen_ = 0;

  uint64_t mulmod(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  T add_digits(T a, T b) const;
};

using FqPtr = std::shared_ptr<const FqField>;

// Smallest extension degree k with p^k >= min_size, clamped to [1, max_degree].
int extension_degree_for(uint64_t p, uint64_t min_size, int max_degree = FqField::kMaxDegreeDefault);

}  // namespace minred
