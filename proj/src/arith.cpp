#include "zm/arith.hpp"

#include <algorithm>
#include <map>

namespace zm {

GcdResult ext_gcd(const Integer& a, const Integer& b) {
  GcdResult r;
  mpz_gcdext(r.g.get_mpz_t(), r.x.get_mpz_t(), r.y.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

std::vector<Integer> combine_to_one(const std::vector<Integer>& ds) {
  if (ds.empty()) fail(ErrorKind::NotCoprime, "empty list has gcd 0");
  std::vector<Integer> coef(ds.size(), 0);
  Integer g = ds[0];
  coef[0] = 1;
  if (g < 0) {
    g = -g;
    coef[0] = -1;
  }
  for (std::size_t k = 1; k < ds.size(); ++k) {
    GcdResult r = ext_gcd(g, ds[k]);
    for (std::size_t i = 0; i < k; ++i) coef[i] *= r.x;
    coef[k] = r.y;
    g = r.g;
  }
  if (g != 1) fail(ErrorKind::NotCoprime, "gcd is " + g.get_str());
  return coef;
}

static const unsigned long kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

static bool miller_rabin(const Integer& n, unsigned long base) {
  Integer d = n - 1;
  unsigned long s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  Integer x;
  Integer b = base;
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return true;
  }
  return false;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned long p : kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  static const Integer kDeterministicBound("3317044064679887385961981");
  if (n < kDeterministicBound) {
    for (unsigned long p : kSmallPrimes)
      if (!miller_rabin(n, p)) return false;
    return true;
  }
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

void require_prime(const Integer& p) {
  if (!is_prime(p)) fail(ErrorKind::NotPrime, p.get_str() + " is not prime");
}

Valuation vp(const Integer& a, const Integer& p) {
  if (a == 0) return Valuation::inf();
  Integer t = a;
  long v = 0;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return Valuation::of(v);
}

Valuation vp(const Rational& a, const Integer& p) {
  require_prime(p);
  if (a == 0) return Valuation::inf();
  Valuation n = vp(Integer(a.get_num()), p);
  Valuation d = vp(Integer(a.get_den()), p);
  return Valuation::of(n.value - d.value);
}

Integer strip_prime(const Integer& a, const Integer& p) {
  if (a == 0) return 0;
  Integer t = a;
  while (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t()))
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
  return t;
}

namespace {

struct Budget {
  std::uint64_t left;
  void spend(std::uint64_t k) {
    if (k > left) fail(ErrorKind::ResourceLimit, "factoring budget exhausted");
    left -= k;
  }
};

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
Integer pollard_brent(const Integer& n, Budget& budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const Integer& v) -> Integer { return (v * v + c) % n; };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        budget.spend(lim);
        for (unsigned long i = 0; i < lim; ++i) {
          y = f(y);
          Integer d = x - y;
          q = (q * abs(d)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer d = x - ys;
        d = abs(d);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        budget.spend(1);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const Integer& n, std::map<Integer, unsigned long>& out, Budget& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += 1;
    return;
  }
  Integer d = pollard_brent(n, budget);
  split(d, out, budget);
  Integer rest = n / d;
  split(rest, out, budget);
}

}  // namespace

Factorization factorize(const Integer& n) {
  if (n == 0) fail(ErrorKind::Zero, "cannot factorize 0");
  Integer m = abs(n);
  std::map<Integer, unsigned long> out;
  const unsigned long kTrial = 1000000;
  for (unsigned long p = 2; p <= kTrial; p += (p == 2 ? 1 : 2)) {
    if (m == 1) break;
    Integer pp = p;
    if (pp * pp > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      out[pp] += 1;
    }
  }
  if (m > 1) {
    Budget budget{limits().factor_budget};
    split(m, out, budget);
  }
  return Factorization(out.begin(), out.end());
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

LocalRational::LocalRational(const Rational& v, const Integer& p) : value_(v), prime_(p) {
  if (p != 0 && mpz_divisible_p(value_.get_den_mpz_t(), p.get_mpz_t()))
    fail(ErrorKind::DomainMismatch,
         "denominator of " + value_.get_str() + " is divisible by " + p.get_str());
}

Integer LocalRational::join(const LocalRational& o) const {
  if (prime_ == 0) return o.prime_;
  if (o.prime_ != 0 && o.prime_ != prime_)
    fail(ErrorKind::DomainMismatch, "Z_(p) elements with different primes");
  return prime_;
}

bool LocalRational::is_unit() const {
  if (value_ == 0) return false;
  if (prime_ == 0) return true;
  return !mpz_divisible_p(value_.get_num_mpz_t(), prime_.get_mpz_t());
}

LocalRational LocalRational::inverse() const {
  if (!is_unit()) fail(ErrorKind::DomainMismatch, "not a unit in Z_(p)");
  return LocalRational(Rational(1) / value_, prime_);
}

LocalRational LocalRational::operator+(const LocalRational& o) const {
  return LocalRational(value_ + o.value_, join(o));
}
LocalRational LocalRational::operator-(const LocalRational& o) const {
  return LocalRational(value_ - o.value_, join(o));
}
LocalRational LocalRational::operator*(const LocalRational& o) const {
  return LocalRational(value_ * o.value_, join(o));
}
LocalRational LocalRational::operator-() const { return LocalRational(-value_, prime_); }

bool LocalRational::divides(const LocalRational& a) const {
  if (value_ == 0) return a.value_ == 0;
  Integer p = join(a);
  Rational q = a.value_ / value_;
  return p == 0 || !mpz_divisible_p(q.get_den_mpz_t(), p.get_mpz_t());
}

LocalRational LocalRational::exact_div(const LocalRational& a) const {
  if (!divides(a)) fail(ErrorKind::DomainMismatch, "inexact division in Z_(p)");
  if (a.value_ == 0) return LocalRational(Rational(0), join(a));
  return LocalRational(a.value_ / value_, join(a));
}

std::string to_string(const Integer& a) { return a.get_str(); }
std::string to_string(const Rational& a) { return a.get_str(); }

}  // namespace zm
