#include "minred/upoly.hpp"

#include <sstream>

namespace minred {

Rat UPoly::eval(const Rat& t) const {
  Rat r = 0;
  for (int i = degree(); i >= 0; --i) r = r * t + c[i];
  return r;
}

std::string UPoly::str(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c[i].get_str() << ")";
    if (i > 0) os << "*" << var << "^" << i;
  }
  return os.str();
}

bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return UPoly(std::move(r));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] != 0)
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return UPoly(std::move(r));
}

UPoly operator*(const Rat& s, const UPoly& a) {
  std::vector<Rat> r = a.c;
  for (auto& x : r) x *= s;
  return UPoly(std::move(r));
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  r = a;
  int db = b.degree();
  if (a.degree() < db) {
    q = UPoly();
    return;
  }
  std::vector<Rat> qc(a.degree() - db + 1, Rat(0));
  Rat lb_inv = 1 / b.lead();
  while (!r.is_zero() && r.degree() >= db) {
    int s = r.degree() - db;
    Rat f = r.lead() * lb_inv;
    qc[s] = f;
    for (int i = 0; i <= db; ++i) r.c[s + i] -= f * b.c[i];
    r.trim();
  }
  q = UPoly(std::move(qc));
}

UPoly operator%(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  return r;
}

UPoly monic(const UPoly& a) {
  if (a.is_zero()) return a;
  return (1 / a.lead()) * a;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

UPoly xgcd_inverse_part(const UPoly& a, const UPoly& b, UPoly& s) {
  // Invariant: r0 = s0*a mod b, r1 = s1*a mod b.
  UPoly r0 = a % b, r1 = b, s0 = UPoly::constant(1), s1;
  std::swap(r0, r1);
  std::swap(s0, s1);
  // now r0 = b (s0 = 0), r1 = a mod b (s1 = 1)
  while (!r1.is_zero()) {
    UPoly q, r;
    divmod(r0, r1, q, r);
    UPoly sn = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(sn);
  }
  if (r0.is_zero()) {
    s = UPoly();
    return r0;
  }
  Rat li = 1 / r0.lead();
  s = li * s0;
  return li * r0;
}

UPoly derivative(const UPoly& a) {
  if (a.degree() < 1) return UPoly();
  std::vector<Rat> r(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = a.c[i] * static_cast<long>(i);
  return UPoly(std::move(r));
}

bool is_squarefree(const UPoly& a) {
  if (a.degree() < 1) return true;
  return gcd(a, derivative(a)).degree() == 0;
}

UPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  size_t n = xs.size();
  std::vector<Rat> dd = ys;
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UPoly r = UPoly::constant(dd[n - 1]);
  for (size_t k = n - 1; k-- > 0;) {
    r = r * UPoly(std::vector<Rat>{-xs[k], Rat(1)}) + UPoly::constant(dd[k]);
  }
  return r;
}

Rat resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  int m = a.degree(), n = b.degree();
  if (n == 0) {
    Rat r = 1;
    for (int i = 0; i < m; ++i) r *= b.lead();
    return r;
  }
  if (m == 0) {
    Rat r = 1;
    for (int i = 0; i < n; ++i) r *= a.lead();
    return r;
  }
  UPoly r = a % b;
  if (r.is_zero()) return 0;
  Rat sign = ((m % 2) && (n % 2)) ? -1 : 1;
  Rat f = 1;
  for (int i = 0; i < m - r.degree(); ++i) f *= b.lead();
  return sign * f * resultant(b, r);
}

namespace {

Int denominator_lcm(const std::vector<Rat>& v) {
  Int d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

}  // namespace

QAlg::QAlg(const UPoly& f) : f_(monic(f)), n_(f.degree()) {
  if (n_ < 1) throw MathError("quotient algebra modulus must have positive degree");
  if (!is_squarefree(f_)) throw MathError("quotient algebra modulus must be squarefree");
  f_den_ = denominator_lcm(f_.c);
  for (const auto& c : f_.c) f_int_.push_back(Int(c * f_den_));
}

QAlg::T QAlg::gen() const {
  if (n_ == 1) return from_rat(-f_.c[0]);
  T r = zero();
  r[1] = 1;
  return r;
}

QAlg::T QAlg::add(const T& a, const T& b) const {
  T r(n_);
  for (int i = 0; i < n_; ++i) r[i] = a[i] + b[i];
  return r;
}

QAlg::T QAlg::sub(const T& a, const T& b) const {
  T r(n_);
  for (int i = 0; i < n_; ++i) r[i] = a[i] - b[i];
  return r;
}

QAlg::T QAlg::neg(const T& a) const {
  T r(n_);
  for (int i = 0; i < n_; ++i) r[i] = -a[i];
  return r;
}

QAlg::T QAlg::mul(const T& a, const T& b) const {
  // Integer arithmetic over a common denominator; mpq canonicalisation per
  // term dominated the cost.
  const Int da = denominator_lcm(a), db = denominator_lcm(b);
  std::vector<Int> ai(n_), bi(n_);
  for (int i = 0; i < n_; ++i) {
    ai[i] = a[i].get_num() * (da / a[i].get_den());
    bi[i] = b[i].get_num() * (db / b[i].get_den());
  }
  std::vector<Int> prod(2 * n_ - 1, Int(0));
  for (int i = 0; i < n_; ++i) {
    if (ai[i] == 0) continue;
    for (int j = 0; j < n_; ++j)
      if (bi[j] != 0) mpz_addmul(prod[i + j].get_mpz_t(), ai[i].get_mpz_t(), bi[j].get_mpz_t());
  }
  Int den = da * db;
  // Reduce by f: t^n = -sum f_i t^i, scaling by f_den_ to stay integral.
  for (int d = 2 * n_ - 2; d >= n_; --d) {
    if (prod[d] == 0) continue;
    const Int c = prod[d];
    prod[d] = 0;
    if (f_den_ != 1) {
      for (int i = 0; i < d; ++i) prod[i] *= f_den_;
      den *= f_den_;
    }
    for (int i = 0; i < n_; ++i) mpz_submul(prod[d - n_ + i].get_mpz_t(), c.get_mpz_t(), f_int_[i].get_mpz_t());
  }
  T r(n_);
  for (int i = 0; i < n_; ++i) {
    r[i] = Rat(prod[i], den);
    r[i].canonicalize();
  }
  return r;
}

QAlg::T QAlg::inv(const T& a) const {
  UPoly pa = to_poly(a);
  if (pa.is_zero()) throw MathError("division by zero in quotient algebra");
  UPoly s;
  UPoly g = xgcd_inverse_part(pa, f_, s);
  if (g.degree() > 0) throw ZeroDivisor(g);
  return from_poly(s);
}

bool QAlg::is_zero(const T& a) const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

bool QAlg::is_unit(const T& a) const {
  UPoly pa = to_poly(a);
  if (pa.is_zero()) return false;
  return gcd(pa, f_).degree() == 0;
}

bool QAlg::is_constant(const T& a, Rat& out) const {
  for (int i = 1; i < n_; ++i)
    if (a[i] != 0) return false;
  out = a[0];
  return true;
}

UPoly QAlg::to_poly(const T& a) const { return UPoly(a); }

QAlg::T QAlg::from_poly(const UPoly& p) const {
  UPoly r = p % f_;
  T out = zero();
  for (int i = 0; i <= r.degree(); ++i) out[i] = r.c[i];
  return out;
}

}  // namespace minred
