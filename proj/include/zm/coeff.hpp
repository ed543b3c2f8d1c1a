#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zm/arith.hpp"

namespace zm {

// Modulus for F_p and F_p(T) values on the current thread. Values themselves
// carry only residues, so a guard must be active while they are used.
std::uint64_t fp_modulus();

class FpScope {
 public:
  explicit FpScope(std::uint64_t p);
  ~FpScope();
  FpScope(const FpScope&) = delete;
  FpScope& operator=(const FpScope&) = delete;

 private:
  std::uint64_t saved_;
};

struct Fp {
  std::uint64_t v = 0;

  Fp() = default;
  Fp(long x);
  static Fp from(const Integer& x);
  static Fp raw(std::uint64_t r) { Fp f; f.v = r; return f; }

  Fp operator+(Fp o) const;
  Fp operator-(Fp o) const;
  Fp operator*(Fp o) const;
  Fp operator-() const;
  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }
  Fp inverse() const;
  bool operator==(const Fp& o) const { return v == o.v; }
};

// Dense univariate polynomial over F_p, lowest degree first, no trailing zeros.
struct UPoly {
  std::vector<std::uint64_t> c;

  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  void trim();
  bool operator==(const UPoly& o) const { return c == o.c; }
};

UPoly up_add(const UPoly& a, const UPoly& b);
UPoly up_sub(const UPoly& a, const UPoly& b);
UPoly up_mul(const UPoly& a, const UPoly& b);
UPoly up_scale(const UPoly& a, std::uint64_t s);
void up_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly up_gcd(UPoly a, UPoly b);
UPoly up_monic(const UPoly& a);
UPoly up_const(std::uint64_t v);
UPoly up_from_index(std::uint64_t k);

// Element of F_p(T) as num/den with den monic and gcd(num, den) = 1.
class FpT {
 public:
  FpT() : den_(up_const(1)) {}
  FpT(long x);
  FpT(const UPoly& num, const UPoly& den);
  static FpT from_poly(const UPoly& num) { return FpT(num, up_const(1)); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  FpT operator+(const FpT& o) const;
  FpT operator-(const FpT& o) const;
  FpT operator*(const FpT& o) const;
  FpT operator-() const;
  FpT& operator+=(const FpT& o) { return *this = *this + o; }
  FpT& operator-=(const FpT& o) { return *this = *this - o; }
  FpT& operator*=(const FpT& o) { return *this = *this * o; }
  FpT inverse() const;
  bool operator==(const FpT& o) const { return num_ == o.num_ && den_ == o.den_; }

 private:
  void normalize();
  UPoly num_, den_;
};

std::string to_string(const Fp& a);
std::string to_string(const FpT& a);
std::string to_string(const LocalRational& a);

// Uniform coefficient interface used by the polynomial and matrix templates.
template <class C>
struct Coeff;

template <>
struct Coeff<Integer> {
  static constexpr bool is_field = false;
  static constexpr const char* tag = "Z";
  static bool is_zero(const Integer& a) { return a == 0; }
  static bool is_unit(const Integer& a) { return a == 1 || a == -1; }
  static bool divides(const Integer& b, const Integer& a) {
    return b == 0 ? a == 0 : mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()) != 0;
  }
  static Integer div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  static Integer from(const Integer& x) { return x; }
  static std::string str(const Integer& a) { return a.get_str(); }
  static bool negative(const Integer& a) { return a < 0; }
};

template <>
struct Coeff<Rational> {
  static constexpr bool is_field = true;
  static constexpr const char* tag = "Q";
  static bool is_zero(const Rational& a) { return a == 0; }
  static bool is_unit(const Rational& a) { return a != 0; }
  static bool divides(const Rational& b, const Rational& a) { return b != 0 || a == 0; }
  static Rational div(const Rational& a, const Rational& b) { return a / b; }
  static Rational from(const Integer& x) { return Rational(x); }
  static std::string str(const Rational& a) { return a.get_str(); }
  static bool negative(const Rational& a) { return a < 0; }
};

template <>
struct Coeff<Fp> {
  static constexpr bool is_field = true;
  static constexpr const char* tag = "Fp";
  static bool is_zero(const Fp& a) { return a.v == 0; }
  static bool is_unit(const Fp& a) { return a.v != 0; }
  static bool divides(const Fp& b, const Fp& a) { return b.v != 0 || a.v == 0; }
  static Fp div(const Fp& a, const Fp& b) { return a * b.inverse(); }
  static Fp from(const Integer& x) { return Fp::from(x); }
  static std::string str(const Fp& a) { return to_string(a); }
  static bool negative(const Fp&) { return false; }
};

template <>
struct Coeff<FpT> {
  static constexpr bool is_field = true;
  static constexpr const char* tag = "FpT";
  static bool is_zero(const FpT& a) { return a.is_zero(); }
  static bool is_unit(const FpT& a) { return !a.is_zero(); }
  static bool divides(const FpT& b, const FpT& a) { return !b.is_zero() || a.is_zero(); }
  static FpT div(const FpT& a, const FpT& b) { return a * b.inverse(); }
  static FpT from(const Integer& x) { return FpT(Fp::from(x).v); }
  static std::string str(const FpT& a) { return to_string(a); }
  static bool negative(const FpT&) { return false; }
};

template <>
struct Coeff<LocalRational> {
  static constexpr bool is_field = false;
  static constexpr const char* tag = "Zp";
  static bool is_zero(const LocalRational& a) { return a.is_zero(); }
  static bool is_unit(const LocalRational& a) { return a.is_unit(); }
  static bool divides(const LocalRational& b, const LocalRational& a) { return b.divides(a); }
  static LocalRational div(const LocalRational& a, const LocalRational& b) {
    return b.exact_div(a);
  }
  static LocalRational from(const Integer& x) { return LocalRational(Rational(x), 0); }
  static std::string str(const LocalRational& a) { return to_string(a); }
  static bool negative(const LocalRational& a) { return a.value() < 0; }
};

}  // namespace zm
