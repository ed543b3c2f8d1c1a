#include "zm/coeff.hpp"

namespace zm {

namespace {
thread_local std::uint64_t g_modulus = 0;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t modp() {
  if (g_modulus == 0) fail(ErrorKind::DomainMismatch, "no F_p modulus in scope");
  return g_modulus;
}
}  // namespace

std::uint64_t fp_modulus() { return g_modulus; }

FpScope::FpScope(std::uint64_t p) : saved_(g_modulus) {
  if (!is_prime(Integer(static_cast<unsigned long>(p))))
    fail(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  g_modulus = p;
}
FpScope::~FpScope() { g_modulus = saved_; }

Fp::Fp(long x) {
  std::uint64_t p = modp();
  long r = x % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  v = static_cast<std::uint64_t>(r);
}

Fp Fp::from(const Integer& x) {
  std::uint64_t p = modp();
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return raw(r.get_ui());
}

Fp Fp::operator+(Fp o) const {
  std::uint64_t p = modp();
  std::uint64_t s = v + o.v;
  if (s >= p || s < v) s -= p;
  return raw(s);
}
Fp Fp::operator-(Fp o) const {
  std::uint64_t p = modp();
  return raw(v >= o.v ? v - o.v : v + (p - o.v));
}
Fp Fp::operator*(Fp o) const { return raw(mulmod(v, o.v, modp())); }
Fp Fp::operator-() const { return raw(v == 0 ? 0 : modp() - v); }
Fp Fp::inverse() const {
  if (v == 0) fail(ErrorKind::DomainMismatch, "division by zero in F_p");
  std::uint64_t p = modp();
  return raw(powmod(v, p - 2, p));
}

void UPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

UPoly up_const(std::uint64_t v) {
  UPoly r;
  if (v % modp()) r.c.push_back(v % modp());
  return r;
}

UPoly up_from_index(std::uint64_t k) {
  std::uint64_t p = modp();
  UPoly r;
  while (k) {
    r.c.push_back(k % p);
    k /= p;
  }
  r.trim();
  return r;
}

UPoly up_add(const UPoly& a, const UPoly& b) {
  std::uint64_t p = modp();
  UPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0;
    std::uint64_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = (Fp::raw(x) + Fp::raw(y)).v;
  }
  (void)p;
  r.trim();
  return r;
}

UPoly up_sub(const UPoly& a, const UPoly& b) {
  UPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0;
    std::uint64_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = (Fp::raw(x) - Fp::raw(y)).v;
  }
  r.trim();
  return r;
}

UPoly up_mul(const UPoly& a, const UPoly& b) {
  UPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  std::uint64_t p = modp();
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = (r.c[i + j] + mulmod(a.c[i], b.c[j], p)) % p;
  }
  r.trim();
  return r;
}

UPoly up_scale(const UPoly& a, std::uint64_t s) {
  UPoly r = a;
  for (auto& x : r.c) x = mulmod(x, s, modp());
  r.trim();
  return r;
}

void up_divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) fail(ErrorKind::DomainMismatch, "division by zero polynomial");
  std::uint64_t p = modp();
  r = a;
  q.c.clear();
  if (a.degree() < b.degree()) return;
  q.c.assign(a.c.size() - b.c.size() + 1, 0);
  std::uint64_t inv = Fp::raw(b.c.back()).inverse().v;
  for (long i = a.degree() - b.degree(); i >= 0; --i) {
    std::uint64_t lead = r.c[i + b.degree()];
    if (!lead) continue;
    std::uint64_t f = mulmod(lead, inv, p);
    q.c[i] = f;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = (Fp::raw(r.c[i + j]) - Fp::raw(mulmod(f, b.c[j], p))).v;
  }
  q.trim();
  r.trim();
}

UPoly up_monic(const UPoly& a) {
  if (a.is_zero()) return a;
  return up_scale(a, Fp::raw(a.c.back()).inverse().v);
}

UPoly up_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly q, r;
    up_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return up_monic(a);
}

FpT::FpT(long x) : num_(up_const(Fp(x).v)), den_(up_const(1)) {}

FpT::FpT(const UPoly& num, const UPoly& den) : num_(num), den_(den) {
  if (den_.is_zero()) fail(ErrorKind::DomainMismatch, "zero denominator in F_p(T)");
  normalize();
}

void FpT::normalize() {
  if (num_.is_zero()) {
    den_ = up_const(1);
    return;
  }
  UPoly g = up_gcd(num_, den_);
  if (g.degree() > 0) {
    UPoly q, r;
    up_divmod(num_, g, q, r);
    num_ = q;
    up_divmod(den_, g, q, r);
    den_ = q;
  }
  std::uint64_t inv = Fp::raw(den_.c.back()).inverse().v;
  num_ = up_scale(num_, inv);
  den_ = up_scale(den_, inv);
}

FpT FpT::operator+(const FpT& o) const {
  if (den_ == o.den_) return FpT(up_add(num_, o.num_), den_);
  return FpT(up_add(up_mul(num_, o.den_), up_mul(o.num_, den_)), up_mul(den_, o.den_));
}
FpT FpT::operator-(const FpT& o) const {
  if (den_ == o.den_) return FpT(up_sub(num_, o.num_), den_);
  return FpT(up_sub(up_mul(num_, o.den_), up_mul(o.num_, den_)), up_mul(den_, o.den_));
}
FpT FpT::operator*(const FpT& o) const {
  return FpT(up_mul(num_, o.num_), up_mul(den_, o.den_));
}
FpT FpT::operator-() const {
  FpT r = *this;
  r.num_ = up_sub(UPoly{}, num_);
  return r;
}
FpT FpT::inverse() const {
  if (num_.is_zero()) fail(ErrorKind::DomainMismatch, "division by zero in F_p(T)");
  return FpT(den_, num_);
}

std::string to_string(const Fp& a) { return std::to_string(a.v); }

static std::string up_str(const UPoly& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (long i = a.degree(); i >= 0; --i) {
    std::uint64_t c = a.c[i];
    if (!c) continue;
    if (!s.empty()) s += " + ";
    if (i == 0) {
      s += std::to_string(c);
      continue;
    }
    if (c != 1) s += std::to_string(c) + "*";
    s += "T";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

std::string to_string(const FpT& a) {
  if (a.den().degree() == 0) return up_str(a.num());
  return "(" + up_str(a.num()) + ")/(" + up_str(a.den()) + ")";
}

std::string to_string(const LocalRational& a) { return a.value().get_str(); }

}  // namespace zm
