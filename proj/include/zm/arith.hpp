#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "zm/errors.hpp"

namespace zm {

using Integer = mpz_class;
using Rational = mpq_class;

// p-adic valuation value; vp(0) is +infinity and compares above every finite value.
struct Valuation {
  bool infinite = false;
  long value = 0;

  static Valuation inf() { return {true, 0}; }
  static Valuation of(long v) { return {false, v}; }

  bool operator==(const Valuation& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
  std::strong_ordering operator<=>(const Valuation& o) const {
    if (infinite || o.infinite) {
      if (infinite && o.infinite) return std::strong_ordering::equal;
      return infinite ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return value <=> o.value;
  }
  Valuation operator+(const Valuation& o) const {
    if (infinite || o.infinite) return inf();
    return of(value + o.value);
  }
  std::string str() const { return infinite ? "inf" : std::to_string(value); }
};

struct GcdResult {
  Integer g, x, y;
};

GcdResult ext_gcd(const Integer& a, const Integer& b);

// Coefficients a with sum a_k * ds_k = 1.
std::vector<Integer> combine_to_one(const std::vector<Integer>& ds);

bool is_prime(const Integer& n);
void require_prime(const Integer& p);

Valuation vp(const Integer& a, const Integer& p);
Valuation vp(const Rational& a, const Integer& p);

// Removes every factor p from |a| and returns what remains (sign kept).
Integer strip_prime(const Integer& a, const Integer& p);

using Factorization = std::vector<std::pair<Integer, unsigned long>>;
Factorization factorize(const Integer& n);

Integer binomial(unsigned long n, unsigned long k);
Integer ipow(const Integer& b, unsigned long e);

// Element of Z_(p): a rational whose reduced denominator is prime to p.
class LocalRational {
 public:
  LocalRational() = default;
  LocalRational(long v) : value_(v) {}
  LocalRational(const Rational& v, const Integer& p);

  const Rational& value() const { return value_; }
  const Integer& prime() const { return prime_; }
  bool is_zero() const { return value_ == 0; }
  bool is_unit() const;
  LocalRational inverse() const;

  LocalRational operator+(const LocalRational& o) const;
  LocalRational operator-(const LocalRational& o) const;
  LocalRational operator*(const LocalRational& o) const;
  LocalRational operator-() const;
  LocalRational& operator+=(const LocalRational& o) { return *this = *this + o; }
  LocalRational& operator-=(const LocalRational& o) { return *this = *this - o; }
  LocalRational& operator*=(const LocalRational& o) { return *this = *this * o; }
  bool operator==(const LocalRational& o) const { return value_ == o.value_; }
  // Exact quotient when it stays in Z_(p).
  bool divides(const LocalRational& a) const;
  LocalRational exact_div(const LocalRational& a) const;

 private:
  Integer join(const LocalRational& o) const;
  Rational value_ = 0;
  Integer prime_ = 0;  // 0 marks a prime-agnostic literal such as 0 or 1
};

std::string to_string(const Integer& a);
std::string to_string(const Rational& a);

}  // namespace zm
