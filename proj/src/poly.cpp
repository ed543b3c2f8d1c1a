#include "zm/poly.hpp"

#include <cctype>
#include <cmath>

namespace zm {

namespace {

class Parser {
 public:
  Parser(const std::string& s, unsigned n) : s_(s), n_(n) {}

  ZPoly parse() {
    ZPoly r = expr();
    skip();
    if (pos_ != s_.size()) error("end of input");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& expected) {
    fail(ErrorKind::ParseError, "at position " + std::to_string(pos_) + ": expected " + expected);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Integer number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("integer");
    return Integer(s_.substr(start, pos_ - start));
  }
  ZPoly expr() {
    ZPoly r = term();
    for (;;) {
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }
  ZPoly term() {
    ZPoly r = unary();
    while (eat('*')) r = r * unary();
    return r;
  }
  ZPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  ZPoly power() {
    ZPoly b = atom();
    if (eat('^')) {
      Integer k = number();
      if (k > 100000) error("exponent at most 100000");
      b = pow(b, k.get_ui());
    }
    return b;
  }
  ZPoly atom() {
    skip();
    if (pos_ >= s_.size()) error("integer, variable or '('");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ZPoly r = expr();
      if (!eat(')')) error("')'");
      return r;
    }
    if (c == 'X' || c == 'x') {
      ++pos_;
      std::size_t at = pos_;
      Integer i = number();
      if (i < 1 || i > n_) {
        pos_ = at;
        error("variable index in 1.." + std::to_string(n_) + " (unknown variable X" +
              i.get_str() + ")");
      }
      return ZPoly::var(n_, static_cast<unsigned>(i.get_ui() - 1));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ZPoly(n_, number());
    error("integer, variable or '('");
  }

  const std::string& s_;
  unsigned n_;
  std::size_t pos_ = 0;
};

}  // namespace

ZPoly parse_polynomial(const std::string& text, unsigned nvars) {
  if (nvars > kMaxVars) fail(ErrorKind::ParseError, "at most 8 variables are supported");
  return Parser(text, nvars).parse();
}

PseudoDivision pseudo_div_xn(const ZPoly& f, const ZPoly& g) {
  if (g.is_zero()) fail(ErrorKind::Zero, "pseudo division by zero");
  const unsigned n = std::max(f.nvars(), g.nvars());
  if (n == 0) fail(ErrorKind::NoVariables, "pseudo_div_xn needs N >= 1");
  ZPoly gg = g.with_nvars(n);
  const long e = gg.degree_in(n - 1);
  ZPoly lead = xn_coeff(gg, static_cast<unsigned>(e));
  if (!lead.is_constant()) fail(ErrorKind::NonConstantLeading, "X_N-leading coefficient of g");
  const Integer c = lead.lc();
  PseudoDivision out;
  out.q = ZPoly(n);
  out.r = f.with_nvars(n);
  while (!out.r.is_zero()) {
    long dr = out.r.degree_in(n - 1);
    if (dr < e) break;
    ZPoly top = xn_coeff(out.r, static_cast<unsigned>(dr))
                    .mul_term(Monomial::var(n - 1, static_cast<std::uint32_t>(dr - e)), 1);
    if (c != 1) {
      out.q = out.q.scale(c);
      out.r = out.r.scale(c);
      ++out.k;
    }
    out.q = out.q + top;
    out.r = out.r - top * gg;
  }
  return out;
}

Integer poly_content(const ZPoly& f) {
  Integer g = 0;
  for (const auto& t : f.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
  return g;
}

ContentPrimitive content_primitive(const ZPoly& f) {
  if (f.is_zero()) fail(ErrorKind::Zero, "content of the zero polynomial");
  ContentPrimitive cp;
  cp.content = poly_content(f);
  f.try_div_scalar(cp.content, cp.primitive);
  return cp;
}

double Height::log_value() const {
  auto lg = [](const Integer& z) {
    if (z <= 0) return 0.0;
    long ex = 0;
    double m = mpz_get_d_2exp(&ex, z.get_mpz_t());
    return std::log(m) + static_cast<double>(ex) * std::log(2.0);
  };
  double h = lg(den_lcm);
  if (max_abs > 1) h += lg(Integer(max_abs.get_num())) - lg(Integer(max_abs.get_den()));
  return h;
}

Height height_q(const std::vector<Rational>& s) {
  Height h;
  for (const auto& a : s) {
    if (a == 0) continue;
    mpz_lcm(h.den_lcm.get_mpz_t(), h.den_lcm.get_mpz_t(), a.get_den_mpz_t());
    Rational m = abs(a);
    if (m > h.max_abs) h.max_abs = m;
  }
  return h;
}

Height height_q(const QPoly& f) {
  std::vector<Rational> s;
  for (const auto& t : f.terms()) s.push_back(t.second);
  return height_q(s);
}

Height height_q(const ZPoly& f) {
  std::vector<Rational> s;
  for (const auto& t : f.terms()) s.push_back(Rational(t.second));
  return height_q(s);
}

ZPoly reduce_mod(const ZPoly& f, const Integer& p) {
  return f.map([&](const Integer& c) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    return r;
  });
}

Valuation poly_valuation(const ZPoly& f, const Integer& p) {
  Valuation v = Valuation::inf();
  for (const auto& t : f.terms()) v = std::min(v, vp(t.second, p));
  return v;
}

std::optional<long> regular_xn_degree(const ZPoly& f, const Integer& p) {
  require_prime(p);
  if (f.nvars() == 0) fail(ErrorKind::NoVariables, "regular_xn_degree needs N >= 1");
  ZPoly r = reduce_mod(f, p);
  if (r.is_zero()) return std::nullopt;
  const unsigned n = r.nvars();
  long s = r.degree_in(n - 1);
  ZPoly lead = xn_coeff(r, static_cast<unsigned>(s));
  if (!lead.is_constant()) return std::nullopt;
  return s;
}

std::pair<Integer, ZPoly> clear_denominators(const QPoly& f) {
  Integer L = 1;
  for (const auto& t : f.terms())
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), t.second.get_den_mpz_t());
  ZPoly z = f.map([&](const Rational& c) {
    Integer v = c.get_num();
    v *= L;
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_den_mpz_t());
    return v;
  });
  return {L, z};
}

Integer vec_denominator(const PolyVec<Rational>& v) {
  Integer L = 1;
  for (const auto& f : v)
    for (const auto& t : f.terms())
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), t.second.get_den_mpz_t());
  return L;
}

ZVec clear_vec(const PolyVec<Rational>& v, const Integer& L) {
  ZVec out;
  for (const auto& f : v)
    out.push_back(f.map([&](const Rational& c) {
      Integer x = c.get_num();
      x *= L;
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_den_mpz_t());
      return x;
    }));
  return out;
}

QPoly to_q(const ZPoly& f) { return convert<Rational>(f); }

}  // namespace zm
