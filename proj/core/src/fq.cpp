#include "minred/fq.hpp"

#include <stdexcept>

#include "minred/errors.hpp"

namespace minred {

namespace {

uint64_t checked_power(uint64_t p, int k) {
  unsigned __int128 q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > (static_cast<unsigned __int128>(1) << 62)) throw MathError("field too large");
  }
  return static_cast<uint64_t>(q);
}

}  // namespace

int extension_degree_for(uint64_t p, uint64_t min_size, int max_degree) {
  int k = 1;
  unsigned __int128 q = p;
  while (q < min_size && k < max_degree) {
    q *= p;
    ++k;
  }
  return k;
}

FqField::FqField(uint64_t p, int k, int max_degree) : p_(p), k_(k) {
  if (k < 1 || k > max_degree) throw MathError("extension degree out of range");
  if (p >= (uint64_t(1) << 62) || !is_prime(Int(static_cast<unsigned long>(p))))
    throw MathError("field characteristic must be a prime below 2^62");
  q_ = checked_power(p, k);
  if (k == 1) {
    modulus_ = {0, 1};
    // Smallest primitive root; only used as a convenience generator.
    std::vector<uint64_t> fac;
    uint64_t m = p - 1;
    for (uint64_t d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        fac.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) fac.push_back(m);
    for (uint64_t g = 1; g < p; ++g) {
      bool ok = true;
      for (uint64_t f : fac)
        if (pow(g, (p - 1) / f) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        gen_ = g;
        break;
      }
    }
    return;
  }
  if (q_ > kMaxTableSize) throw MathError("extension field exceeds table size");
  exp_.assign(q_ - 1, 0);
  bool found = false;
  for (uint64_t low = 1; low < q_ && !found; ++low) {
    if (low % p == 0) continue;  // constant term must be nonzero
    std::vector<uint64_t> c(k);
    uint64_t t = low;
    for (int i = 0; i < k; ++i) {
      c[i] = t % p;
      t /= p;
    }
    std::vector<uint64_t> d(k, 0);
    d[0] = 1;
    bool primitive = true;
    for (uint64_t i = 0; i + 1 < q_; ++i) {
      uint64_t enc = 0;
      for (int j = k - 1; j >= 0; --j) enc = enc * p + d[j];
      if (i > 0 && enc == 1) {
        primitive = false;
        break;
      }
      exp_[i] = static_cast<uint32_t>(enc);
      uint64_t top = d[k - 1];
      for (int j = k - 1; j > 0; --j) d[j] = d[j - 1];
      d[0] = 0;
      if (top != 0)
        for (int j = 0; j < k; ++j) d[j] = (d[j] + (p - c[j]) * top) % p;
    }
    if (!primitive) continue;
    uint64_t enc = 0;
    for (int j = k - 1; j >= 0; --j) enc = enc * p + d[j];
    if (enc != 1) continue;
    modulus_.assign(c.begin(), c.end());
    modulus_.push_back(1);
    found = true;
  }
  if (!found) throw MathError("no primitive polynomial found");
  gen_ = p;  // the class of x
  log_.assign(q_, 0);
  for (uint64_t i = 0; i + 1 < q_; ++i) log_[exp_[i]] = static_cast<uint32_t>(i);
  zech_.assign(q_ - 1, -1);
  for (uint64_t n = 0; n + 1 < q_; ++n) {
    T z = add_digits(1, exp_[n]);
    zech_[n] = z == 0 ? -1 : static_cast<int64_t>(log_[z]);
  }
}

FqField::T FqField::add_digits(T a, T b) const {
  T r = 0, scale = 1;
  for (int i = 0; i < k_; ++i) {
    uint64_t s = (a % p_ + b % p_) % p_;
    r += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

FqField::T FqField::from_int(int64_t a) const {
  int64_t m = static_cast<int64_t>(p_);
  int64_t r = a % m;
  if (r < 0) r += m;
  return static_cast<T>(r);
}

FqField::T FqField::from_mpz(const Int& a) const {
  Int m = Int(static_cast<unsigned long>(p_));
  Int r = mod_nonneg(a, m);
  return static_cast<T>(r.get_ui());
}

FqField::T FqField::add(T a, T b) const {
  if (k_ == 1) {
    T s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (a == 0) return b;
  if (b == 0) return a;
  uint64_t n1 = q_ - 1;
  uint64_t la = log_[a], lb = log_[b];
  uint64_t n = (lb + n1 - la) % n1;
  int64_t z = zech_[n];
  if (z < 0) return 0;
  return exp_[(la + static_cast<uint64_t>(z)) % n1];
}

FqField::T FqField::neg(T a) const {
  if (a == 0) return 0;
  if (k_ == 1) return p_ - a;
  if (p_ == 2) return a;
  uint64_t n1 = q_ - 1;
  return exp_[(log_[a] + n1 / 2) % n1];
}

FqField::T FqField::mul(T a, T b) const {
  if (k_ == 1) return mulmod(a, b);
  if (a == 0 || b == 0) return 0;
  uint64_t n1 = q_ - 1;
  return exp_[(static_cast<uint64_t>(log_[a]) + log_[b]) % n1];
}

FqField::T FqField::inv(T a) const {
  if (a == 0) throw MathError("division by zero in finite field");
  if (k_ == 1) return pow(a, p_ - 2);
  uint64_t n1 = q_ - 1;
  return exp_[(n1 - log_[a]) % n1];
}

FqField::T FqField::pow(T a, uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (k_ > 1) {
    uint64_t n1 = q_ - 1;
    unsigned __int128 x = static_cast<unsigned __int128>(log_[a]) * (e % n1);
    return exp_[static_cast<uint64_t>(x % n1)];
  }
  T r = 1, b = a;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

FqField::T FqField::frobenius_inverse(T a, int j) const {
  int t = ((-j) % k_ + k_) % k_;
  T r = a;
  for (int i = 0; i < t; ++i) r = pow(r, p_);
  return r;
}

std::vector<uint64_t> FqField::digits(T a) const {
  std::vector<uint64_t> d(k_);
  for (int i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

}  // namespace minred
