#include "minred/arith.hpp"

#include <algorithm>
#include <stdexcept>

#include "minred/errors.hpp"

namespace minred {

namespace {

bool miller_rabin_round(const Int& n, const Int& d, unsigned long s, unsigned long base) {
  Int a = base;
  if (a % n == 0) return true;
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Int nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == nm1) return true;
  }
  return false;
}

Int pollard_brent(const Int& n, unsigned long c, unsigned long max_iter) {
  if (n % 2 == 0) return 2;
  Int y = 2, x, q = 1, g = 1, ys;
  unsigned long r = 1, m = 64, iter = 0;
  auto f = [&](const Int& v) -> Int { return (v * v + c) % n; };
  while (g == 1 && iter < max_iter) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = f(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = f(y);
        Int diff = x - y;
        q = (q * abs(diff)) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      iter += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      Int diff = x - ys;
      Int a = abs(diff);
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void split_into(const Int& n, std::vector<Int>& primes, Int& rest, unsigned long budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  // Perfect powers show up as discriminants of inflated models.
  for (unsigned long k = 64; k >= 2; --k) {
    Int root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
      split_into(root, primes, rest, budget);
      return;
    }
  }
  for (unsigned long c = 1; c <= 8; ++c) {
    Int g = pollard_brent(n, c, budget);
    if (g != 1 && g != n) {
      split_into(g, primes, rest, budget);
      split_into(n / g, primes, rest, budget);
      return;
    }
  }
  rest *= n;
}

}  // namespace

bool is_prime(const Int& n) {
  if (n < 2) return false;
  static const unsigned long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long q : small) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  // Deterministic for n < 3.3e24 with these bases.
  static const Int bound("3317044064679887385961981");
  if (n < bound) {
    Int d = n - 1;
    unsigned long s = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++s;
    }
    for (unsigned long q : small)
      if (!miller_rabin_round(n, d, s, q)) return false;
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

PAdicContext::PAdicContext(const Int& p) : p_(p) {
  if (!is_prime(p)) throw MathError("not a prime: " + p.get_str());
}

long valuation(const Int& x, const Int& p) {
  if (x == 0) return kValInf;
  Int y = x;
  long v = 0;
  Int q, r;
  for (;;) {
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    y = q;
    ++v;
  }
  return v;
}

long valuation(const Rat& x, const Int& p) {
  if (x == 0) return kValInf;
  return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

Int ipow(const Int& p, unsigned long k) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), k);
  return r;
}

Rat rpow(const Int& p, long k) {
  if (k >= 0) return Rat(ipow(p, static_cast<unsigned long>(k)));
  Rat r(Int(1), ipow(p, static_cast<unsigned long>(-k)));
  r.canonicalize();
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

std::vector<Int> factor_with_budget(Int n, unsigned long budget, Int& rest) {
  std::vector<Int> primes;
  rest = 1;
  n = abs(n);
  if (n == 0) throw MathError("cannot factor zero");
  for (unsigned long q = 2; q <= budget && Int(q) * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q == 0) {
      primes.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  split_into(n, primes, rest, budget);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

std::string to_string(const Rat& x) { return x.get_str(); }

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  size_t slash = s.find('/');
  auto check_int = [](const std::string& t) {
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!check_int(s)) throw std::invalid_argument("bad integer: " + s);
    std::string t = s[0] == '+' ? s.substr(1) : s;
    return Rat(Int(t));
  }
  std::string a = s.substr(0, slash), b = s.substr(slash + 1);
  if (!check_int(a) || !check_int(b) || b[0] == '-' || b[0] == '+')
    throw std::invalid_argument("bad fraction: " + s);
  Int den(b);
  if (den == 0) throw std::invalid_argument("zero denominator: " + s);
  Rat r(Int(a[0] == '+' ? a.substr(1) : a), den);
  r.canonicalize();
  return r;
}

}  // namespace minred
