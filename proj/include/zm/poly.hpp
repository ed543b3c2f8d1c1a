#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zm/coeff.hpp"

namespace zm {

constexpr unsigned kMaxVars = 8;
constexpr long kNegInf = std::numeric_limits<long>::min();

// Exponent vector; variables beyond the ambient count stay zero.
struct Monomial {
  std::array<std::uint32_t, kMaxVars> e{};
  std::uint64_t tot = 0;

  std::uint32_t operator[](unsigned i) const { return e[i]; }
  void set(unsigned i, std::uint32_t v) {
    tot = tot - e[i] + v;
    e[i] = v;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (unsigned i = 0; i < kMaxVars; ++i) r.e[i] = e[i] + o.e[i];
    r.tot = tot + o.tot;
    return r;
  }
  bool divides(const Monomial& o) const {
    for (unsigned i = 0; i < kMaxVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (unsigned i = 0; i < kMaxVars; ++i) r.e[i] = e[i] - o.e[i];
    r.tot = tot - o.tot;
    return r;
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
  static Monomial var(unsigned i, std::uint32_t k = 1) {
    Monomial m;
    m.set(i, k);
    return m;
  }
};

// Graded lexicographic order with X1 > X2 > ... > XN.
inline bool mono_greater(const Monomial& a, const Monomial& b) {
  if (a.tot != b.tot) return a.tot > b.tot;
  return a.e > b.e;
}

template <class C>
class Poly {
 public:
  using Term = std::pair<Monomial, C>;

  Poly() = default;
  explicit Poly(unsigned nvars) : n_(nvars) { check_vars(nvars); }
  Poly(unsigned nvars, const C& c) : n_(nvars) {
    check_vars(nvars);
    if (!Coeff<C>::is_zero(c)) t_.push_back({Monomial{}, c});
  }
  static Poly monomial(unsigned nvars, const Monomial& m, const C& c) {
    Poly p(nvars);
    if (!Coeff<C>::is_zero(c)) p.t_.push_back({m, c});
    return p;
  }
  static Poly var(unsigned nvars, unsigned i) {
    return monomial(nvars, Monomial::var(i), C(1));
  }
  // Builds from arbitrary terms; sorts and merges duplicates.
  static Poly from_terms(unsigned nvars, std::vector<Term> terms) {
    Poly p(nvars);
    p.t_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  unsigned nvars() const { return n_; }
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.tot == 0); }
  std::size_t size() const { return t_.size(); }
  long degree() const { return t_.empty() ? kNegInf : static_cast<long>(t_[0].first.tot); }
  long degree_in(unsigned i) const {
    if (t_.empty()) return kNegInf;
    long d = 0;
    for (const auto& t : t_) d = std::max<long>(d, t.first[i]);
    return d;
  }
  const C& lc() const { return t_.front().second; }
  const Monomial& lm() const { return t_.front().first; }
  C constant_term() const {
    if (!t_.empty() && t_.back().first.tot == 0) return t_.back().second;
    return C(0);
  }
  C coeff(const Monomial& m) const {
    for (const auto& t : t_)
      if (t.first == m) return t.second;
    return C(0);
  }

  bool operator==(const Poly& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (!(t_[i].first == o.t_[i].first) || !(t_[i].second == o.t_[i].second)) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator+(const Poly& o) const { return merge(o, false); }
  Poly operator-(const Poly& o) const { return merge(o, true); }
  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }

  Poly operator*(const Poly& o) const {
    Poly r(std::max(n_, o.n_));
    if (t_.empty() || o.t_.empty()) return r;
    if (o.t_.size() == 1) return mul_term(o.t_[0].first, o.t_[0].second);
    if (t_.size() == 1) return o.mul_term(t_[0].first, t_[0].second);
    if (static_cast<std::uint64_t>(t_.size()) * o.t_.size() > limits().poly_terms * 8)
      fail(ErrorKind::ResourceLimit, "polynomial product too large");
    std::vector<Term> acc;
    acc.reserve(t_.size() * o.t_.size());
    for (const auto& a : t_)
      for (const auto& b : o.t_) acc.push_back({a.first * b.first, a.second * b.second});
    r.t_ = std::move(acc);
    r.canonicalize();
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scale(const C& c) const {
    Poly r(n_);
    if (Coeff<C>::is_zero(c)) return r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) {
      C v = t.second * c;
      if (!Coeff<C>::is_zero(v)) r.t_.push_back({t.first, std::move(v)});
    }
    return r;
  }
  Poly mul_term(const Monomial& m, const C& c) const {
    Poly r(n_);
    if (Coeff<C>::is_zero(c)) return r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) {
      C v = t.second * c;
      if (!Coeff<C>::is_zero(v)) r.t_.push_back({t.first * m, std::move(v)});
    }
    return r;
  }

  // Exact coefficientwise division by a scalar; false if some coefficient is not divisible.
  bool try_div_scalar(const C& c, Poly& out) const {
    Poly r(n_);
    r.t_.reserve(t_.size());
    for (const auto& t : t_) {
      if (!Coeff<C>::divides(c, t.second)) return false;
      r.t_.push_back({t.first, Coeff<C>::div(t.second, c)});
    }
    out = std::move(r);
    return true;
  }

  Poly with_nvars(unsigned n) const {
    check_vars(n);
    Poly r = *this;
    r.n_ = n;
    return r;
  }

  template <class F>
  auto map(F&& f) const {
    using D = std::decay_t<decltype(f(std::declval<const C&>()))>;
    std::vector<typename Poly<D>::Term> out;
    out.reserve(t_.size());
    for (const auto& t : t_) {
      D v = f(t.second);
      if (!Coeff<D>::is_zero(v)) out.push_back({t.first, std::move(v)});
    }
    return Poly<D>::from_sorted(n_, std::move(out));
  }

  // Terms already sorted descending with no duplicates and no zeros.
  static Poly from_sorted(unsigned nvars, std::vector<Term> terms) {
    Poly p(nvars);
    p.t_ = std::move(terms);
    return p;
  }

  void canonicalize() {
    std::sort(t_.begin(), t_.end(),
              [](const Term& a, const Term& b) { return mono_greater(a.first, b.first); });
    std::vector<Term> out;
    out.reserve(t_.size());
    for (auto& t : t_) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
      } else {
        if (!out.empty() && Coeff<C>::is_zero(out.back().second)) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && Coeff<C>::is_zero(out.back().second)) out.pop_back();
    t_ = std::move(out);
  }

 private:
  static void check_vars(unsigned n) {
    if (n > kMaxVars) fail(ErrorKind::ResourceLimit, "at most 8 variables are supported");
  }
  Poly merge(const Poly& o, bool sub) const {
    Poly r(std::max(n_, o.n_));
    r.t_.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() || j < o.t_.size()) {
      if (j == o.t_.size() || (i < t_.size() && mono_greater(t_[i].first, o.t_[j].first))) {
        r.t_.push_back(t_[i++]);
      } else if (i == t_.size() || mono_greater(o.t_[j].first, t_[i].first)) {
        r.t_.push_back({o.t_[j].first, sub ? C(-o.t_[j].second) : o.t_[j].second});
        ++j;
      } else {
        C v = sub ? C(t_[i].second - o.t_[j].second) : C(t_[i].second + o.t_[j].second);
        if (!Coeff<C>::is_zero(v)) r.t_.push_back({t_[i].first, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  unsigned n_ = 0;
  std::vector<Term> t_;
};

template <class C>
using PolyVec = std::vector<Poly<C>>;

using ZPoly = Poly<Integer>;
using QPoly = Poly<Rational>;
using ZVec = PolyVec<Integer>;

struct Degrees {
  long total = kNegInf;
  std::vector<long> per_variable;
};

template <class C>
Degrees degrees(const Poly<C>& f) {
  Degrees d;
  d.total = f.degree();
  for (unsigned i = 0; i < f.nvars(); ++i) d.per_variable.push_back(f.degree_in(i));
  return d;
}

template <class C>
long vec_degree(const PolyVec<C>& v) {
  long d = kNegInf;
  for (const auto& p : v) d = std::max(d, p.degree());
  return d;
}

template <class C>
Poly<C> pow(const Poly<C>& f, unsigned long k) {
  Poly<C> r(f.nvars(), C(1));
  Poly<C> b = f;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

// Ring homomorphism X_i -> images[i].
template <class C>
Poly<C> substitute(const Poly<C>& f, const PolyVec<C>& images, unsigned out_vars) {
  Poly<C> r(out_vars);
  if (f.is_zero()) return r;
  const unsigned n = f.nvars();
  std::vector<std::vector<Poly<C>>> powers(n);
  std::vector<typename Poly<C>::Term> acc;
  for (const auto& t : f.terms()) {
    Poly<C> m(out_vars, t.second);
    for (unsigned i = 0; i < n; ++i) {
      std::uint32_t k = t.first[i];
      if (!k) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly<C>(out_vars, C(1)));
      while (pw.size() <= k) pw.push_back(pw.back() * images[i]);
      m = m * pw[k];
    }
    for (const auto& mt : m.terms()) acc.push_back(mt);
  }
  return Poly<C>::from_terms(out_vars, std::move(acc));
}

// f = sum_i f_i X_N^i with f_i in the first N-1 variables.
template <class C>
PolyVec<C> split_xn(const Poly<C>& f) {
  const unsigned n = f.nvars();
  if (n == 0) fail(ErrorKind::NoVariables, "split_xn needs N >= 1");
  PolyVec<C> out;
  if (f.is_zero()) return out;
  long d = f.degree_in(n - 1);
  std::vector<std::vector<typename Poly<C>::Term>> parts(d + 1);
  for (const auto& t : f.terms()) {
    Monomial m = t.first;
    std::uint32_t k = m[n - 1];
    m.set(n - 1, 0);
    parts[k].push_back({m, t.second});
  }
  for (auto& p : parts) out.push_back(Poly<C>::from_terms(n - 1, std::move(p)));
  return out;
}

template <class C>
Poly<C> join_xn(const PolyVec<C>& parts, unsigned n) {
  std::vector<typename Poly<C>::Term> acc;
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (const auto& t : parts[k].terms()) {
      Monomial m = t.first;
      m.set(n - 1, static_cast<std::uint32_t>(k));
      acc.push_back({m, t.second});
    }
  return Poly<C>::from_terms(n, std::move(acc));
}

// Coefficient of X_N^k as a polynomial in X_1..X_{N-1} (kept in N variables).
template <class C>
Poly<C> xn_coeff(const Poly<C>& f, unsigned k) {
  const unsigned n = f.nvars();
  std::vector<typename Poly<C>::Term> acc;
  for (const auto& t : f.terms())
    if (t.first[n - 1] == k) {
      Monomial m = t.first;
      m.set(n - 1, 0);
      acc.push_back({m, t.second});
    }
  return Poly<C>::from_terms(n, std::move(acc));
}

// Exact multivariate division a = q*b; returns false if b does not divide a.
template <class C>
bool try_divide(const Poly<C>& a, const Poly<C>& b, Poly<C>& q) {
  if (b.is_zero()) fail(ErrorKind::DomainMismatch, "division by zero polynomial");
  const unsigned n = std::max(a.nvars(), b.nvars());
  if (b.size() == 1) {
    const Monomial& m = b.lm();
    std::vector<typename Poly<C>::Term> out;
    out.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!m.divides(t.first) || !Coeff<C>::divides(b.lc(), t.second)) return false;
      out.push_back({t.first / m, Coeff<C>::div(t.second, b.lc())});
    }
    q = Poly<C>::from_sorted(n, std::move(out));
    return true;
  }
  Poly<C> r = a;
  std::vector<typename Poly<C>::Term> qt;
  while (!r.is_zero()) {
    const Monomial& m = r.lm();
    if (!b.lm().divides(m) || !Coeff<C>::divides(b.lc(), r.lc())) return false;
    Monomial qm = m / b.lm();
    C qc = Coeff<C>::div(r.lc(), b.lc());
    r = r - b.mul_term(qm, qc);
    qt.push_back({qm, qc});
  }
  q = Poly<C>::from_sorted(n, std::move(qt));
  return true;
}

template <class C>
Poly<C> exact_divide(const Poly<C>& a, const Poly<C>& b) {
  Poly<C> q;
  if (!try_divide(a, b, q)) fail(ErrorKind::Internal, "inexact polynomial division");
  return q;
}

// Division in X_N by g whose X_N-leading coefficient is a unit constant.
template <class C>
void divmod_xn_unit(const Poly<C>& f, const Poly<C>& g, Poly<C>& q, Poly<C>& r) {
  const unsigned n = g.nvars();
  const long e = g.degree_in(n - 1);
  Poly<C> lead = xn_coeff(g, static_cast<unsigned>(e));
  if (!lead.is_constant() || lead.is_zero() || !Coeff<C>::is_unit(lead.lc()))
    fail(ErrorKind::NonConstantLeading, "X_N-leading coefficient is not a unit constant");
  const C u = lead.lc();
  q = Poly<C>(n);
  r = f;
  while (!r.is_zero()) {
    long dr = r.degree_in(n - 1);
    if (dr < e) break;
    Poly<C> top = xn_coeff(r, static_cast<unsigned>(dr));
    Poly<C> t;
    top.try_div_scalar(u, t);
    t = t.mul_term(Monomial::var(n - 1, static_cast<std::uint32_t>(dr - e)), C(1));
    q = q + t;
    r = r - t * g;
  }
}

// Forward: X_i -> X_i + c_i X_N (i < N); inverse subtracts.
template <class C>
Poly<C> linear_change(const Poly<C>& f, const std::vector<C>& c, bool inverse) {
  const unsigned n = f.nvars();
  if (n == 0) fail(ErrorKind::NoVariables, "linear_change needs N >= 1");
  bool identity = true;
  for (const auto& ci : c)
    if (!Coeff<C>::is_zero(ci)) identity = false;
  if (identity) return f;
  PolyVec<C> img;
  Poly<C> xn = Poly<C>::var(n, n - 1);
  for (unsigned i = 0; i + 1 < n; ++i) {
    C ci = i < c.size() ? c[i] : C(0);
    if (inverse) ci = -ci;
    img.push_back(Poly<C>::var(n, i) + xn.scale(ci));
  }
  img.push_back(xn);
  return substitute(f, img, n);
}

// Forward: X_i -> X_i + X_N^{e^{N-i}} for 1 <= i < N (1-based i).
template <class C>
Poly<C> translate_te(const Poly<C>& f, std::uint64_t e, bool inverse) {
  const unsigned n = f.nvars();
  if (n == 0) fail(ErrorKind::NoVariables, "translate_te needs N >= 1");
  if (e < 2) fail(ErrorKind::DomainMismatch, "translate_te needs e > 1");
  if (n == 1 || f.is_zero()) return f;
  long df = std::max<long>(f.degree(), 0);
  std::uint64_t top = 1;
  for (unsigned k = 0; k + 1 < n; ++k) {
    if (top > limits().te_exponent_cap / e) fail(ErrorKind::ExponentBlowup, "e^(N-1) too large");
    top *= e;
  }
  if (df > 0 && top > limits().te_exponent_cap / static_cast<std::uint64_t>(df))
    fail(ErrorKind::ExponentBlowup, "e^(N-1)*deg f exceeds the exponent cap");
  PolyVec<C> img;
  for (unsigned i = 0; i + 1 < n; ++i) {
    std::uint64_t ex = 1;
    for (unsigned k = 0; k + 1 < n - i; ++k) ex *= e;
    Poly<C> shift = Poly<C>::monomial(n, Monomial::var(n - 1, static_cast<std::uint32_t>(ex)),
                                      inverse ? C(-1) : C(1));
    img.push_back(Poly<C>::var(n, i) + shift);
  }
  img.push_back(Poly<C>::var(n, n - 1));
  return substitute(f, img, n);
}

template <class C>
std::string format_poly(const Poly<C>& f) {
  if (f.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : f.terms()) {
    C c = t.second;
    bool neg = Coeff<C>::negative(c);
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string cs = Coeff<C>::str(c);
    bool one = (cs == "1");
    bool has_vars = t.first.tot > 0;
    if (cs.find_first_of("+ /") != std::string::npos && has_vars) cs = "(" + cs + ")";
    if (!has_vars) {
      s += cs;
      continue;
    }
    if (!one) s += cs + "*";
    bool firstv = true;
    for (unsigned i = 0; i < f.nvars(); ++i) {
      std::uint32_t k = t.first[i];
      if (!k) continue;
      if (!firstv) s += "*";
      firstv = false;
      s += "X" + std::to_string(i + 1);
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

ZPoly parse_polynomial(const std::string& text, unsigned nvars);

// Reduce an integer polynomial into another coefficient domain.
template <class D>
Poly<D> convert(const ZPoly& f) {
  return f.map([](const Integer& c) { return Coeff<D>::from(c); });
}

struct PseudoDivision {
  unsigned long k = 0;
  ZPoly q, r;
};
PseudoDivision pseudo_div_xn(const ZPoly& f, const ZPoly& g);

struct ContentPrimitive {
  Integer content;
  ZPoly primitive;
};
ContentPrimitive content_primitive(const ZPoly& f);

// Height of a finite set of rationals as the exact pair (s, M):
// s is the lcm of reduced denominators and M the max absolute value, so that
// h = log s + log^+ M.
struct Height {
  Integer den_lcm = 1;
  Rational max_abs = 0;
  double log_value() const;
};
Height height_q(const std::vector<Rational>& s);
Height height_q(const QPoly& f);
Height height_q(const ZPoly& f);

std::optional<long> regular_xn_degree(const ZPoly& f, const Integer& p);

ZPoly reduce_mod(const ZPoly& f, const Integer& p);  // coefficients into [0, p)
Integer poly_content(const ZPoly& f);                  // gcd of coefficients (0 for 0)
Valuation poly_valuation(const ZPoly& f, const Integer& p);
// Clears denominators: returns L > 0 and the integer polynomial L*f.
std::pair<Integer, ZPoly> clear_denominators(const QPoly& f);
Integer vec_denominator(const PolyVec<Rational>& v);
ZVec clear_vec(const PolyVec<Rational>& v, const Integer& L);
QPoly to_q(const ZPoly& f);

}  // namespace zm
