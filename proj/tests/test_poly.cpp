#include <cmath>
#include <random>

#include "doctest.h"
#include "zm/poly.hpp"

using namespace zm;

namespace {
ZPoly P(const std::string& s, unsigned n = 2) { return parse_polynomial(s, n); }

ZPoly random_poly(std::mt19937_64& rng, unsigned n, int deg, int coef, int terms) {
  std::vector<ZPoly::Term> t;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    int budget = static_cast<int>(rng() % (deg + 1));
    for (unsigned i = 0; i < n && budget > 0; ++i) {
      int e = static_cast<int>(rng() % (budget + 1));
      m.set(i, e);
      budget -= e;
    }
    t.push_back({m, Integer(static_cast<long>(rng() % (2 * coef + 1)) - coef)});
  }
  return ZPoly::from_terms(n, t);
}
}  // namespace

TEST_CASE("parse and format") {
  ZPoly f = P("3*X1^2*X2 - 4*X2 + 7");
  CHECK(format_poly(f) == "3*X1^2*X2 - 4*X2 + 7");
  CHECK(P("(1-2*X1)*(1+2*X1)") == P("1 - 4*X1^2"));
  CHECK_THROWS_AS(P("X3"), Error);
  CHECK_THROWS_AS(P("3*"), Error);
  CHECK(format_poly(P("0")) == "0");
  CHECK(format_poly(P("-X1 + X2^2")) == "X2^2 - X1");

  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    ZPoly g = random_poly(rng, 3, 4, 9, 6);
    CHECK(parse_polynomial(format_poly(g), 3) == g);
  }
}

TEST_CASE("degrees") {
  auto d = degrees(P("3*X1^2*X2 - 4*X2"));
  CHECK(d.total == 3);
  CHECK(d.per_variable == std::vector<long>{2, 1});
  auto z = degrees(P("0"));
  CHECK(z.total == kNegInf);
  CHECK(z.per_variable == std::vector<long>{kNegInf, kNegInf});
  auto c = degrees(P("7"));
  CHECK(c.total == 0);
  CHECK(c.per_variable == std::vector<long>{0, 0});
}

TEST_CASE("ring axioms over several domains") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    ZPoly a = random_poly(rng, 2, 3, 5, 4), b = random_poly(rng, 2, 3, 5, 4),
          c = random_poly(rng, 2, 3, 5, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == ZPoly(2));
    QPoly qa = to_q(a), qb = to_q(b), qc = to_q(c);
    CHECK(qa * (qb + qc) == qa * qb + qa * qc);
    {
      FpScope s(5);
      auto fa = convert<Fp>(a), fb = convert<Fp>(b), fc = convert<Fp>(c);
      CHECK((fa * fb) * fc == fa * (fb * fc));
      CHECK(fa * (fb + fc) == fa * fb + fa * fc);
      auto ta = convert<FpT>(a), tb = convert<FpT>(b), tc = convert<FpT>(c);
      CHECK(ta * (tb + tc) == ta * tb + ta * tc);
    }
    auto la = a.map([](const Integer& x) { return LocalRational(Rational(x), 3); });
    auto lb = b.map([](const Integer& x) { return LocalRational(Rational(x), 3); });
    CHECK((la * lb) == (a * b).map([](const Integer& x) { return LocalRational(Rational(x), 3); }));
  }
}

TEST_CASE("split_xn") {
  auto s = split_xn(P("X1*X2^2 + X1^2"));
  REQUIRE(s.size() == 3);
  CHECK(s[0] == parse_polynomial("X1^2", 1));
  CHECK(s[1].is_zero());
  CHECK(s[2] == parse_polynomial("X1", 1));
  CHECK(split_xn(P("0")).empty());
  ZPoly f = P("2*X2^3 + X2^2 + X1");
  auto t = split_xn(f);
  REQUIRE(t.size() == 4);
  CHECK(t[0] == parse_polynomial("X1", 1));
  CHECK(t[1].is_zero());
  CHECK(t[2] == parse_polynomial("1", 1));
  CHECK(t[3] == parse_polynomial("2", 1));
  CHECK(join_xn(t, 2) == f);
  CHECK_THROWS_AS(split_xn(ZPoly(0, 3)), Error);

  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    ZPoly g = random_poly(rng, 3, 5, 5, 6);
    auto parts = split_xn(g);
    CHECK(join_xn(parts, 3) == g);
    for (auto& p : parts) CHECK(p.degree() <= g.degree());
  }
}

TEST_CASE("translate_te") {
  CHECK(translate_te(P("X1"), 2, false) == P("X1 + X2^2"));
  CHECK(translate_te(P("X2"), 5, false) == P("X2"));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    ZPoly f = random_poly(rng, 3, 3, 4, 4), g = random_poly(rng, 3, 3, 4, 4);
    std::uint64_t e = 2 + rng() % 3;
    CHECK(translate_te(translate_te(f, e, false), e, true) == f);
    CHECK(translate_te(f * g, e, false) == translate_te(f, e, false) * translate_te(g, e, false));
  }
  Limits saved = limits();
  limits().te_exponent_cap = 10;
  CHECK_THROWS_AS(translate_te(P("X1^5", 3), 4, false), Error);
  limits() = saved;
}

TEST_CASE("regular_xn_degree") {
  CHECK(regular_xn_degree(P("2*X2^3 + X2^2 + X1"), 2) == 2l);
  CHECK(!regular_xn_degree(P("2*X2"), 2).has_value());
  auto s = regular_xn_degree(translate_te(P("X1"), 2, false), 2);
  REQUIRE(s.has_value());
  CHECK(*s == 2);
  CHECK(*s < 4);

  // T_e makes every f with f mod p != 0 and deg(f mod p) < e regular of degree < e^N.
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    unsigned n = 1 + rng() % 3;
    Integer p = std::vector<int>{2, 3, 5}[rng() % 3];
    std::uint64_t e = 2 + rng() % 3;
    ZPoly f = random_poly(rng, n, static_cast<int>(e) - 1, 6, 4);
    ZPoly fr = reduce_mod(f, p);
    if (fr.is_zero() || fr.degree() >= static_cast<long>(e)) continue;
    auto r = regular_xn_degree(translate_te(f, e, false), p);
    REQUIRE(r.has_value());
    CHECK(static_cast<double>(*r) < std::pow(static_cast<double>(e), n));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("pseudo_div_xn") {
  auto d = pseudo_div_xn(P("X2^2"), P("2*X2 - X1"));
  CHECK(d.k == 2);
  CHECK(d.q == P("2*X2 + X1"));
  CHECK(d.r == P("X1^2"));
  auto s = pseudo_div_xn(P("X1"), P("2*X2"));
  CHECK(s.k == 0);
  CHECK(s.q.is_zero());
  CHECK(s.r == P("X1"));
  auto m = pseudo_div_xn(P("X2^3 + X1"), P("X2 + X1"));
  CHECK(m.k == 0);
  CHECK(m.q * P("X2 + X1") + m.r == P("X2^3 + X1"));
  CHECK_THROWS_AS(pseudo_div_xn(P("X2^2"), P("X1*X2")), Error);

  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    ZPoly f = random_poly(rng, 2, 4, 5, 5);
    ZPoly g = random_poly(rng, 1, 2, 3, 2).with_nvars(2) +
              ZPoly::monomial(2, Monomial::var(1, 1 + rng() % 2), Integer(1 + rng() % 3));
    auto r = pseudo_div_xn(f, g);
    long e = g.degree_in(1);
    Integer c = xn_coeff(g, e).lc();
    CHECK(ZPoly(2, ipow(c, r.k)) * f == r.q * g + r.r);
    CHECK(r.r.degree_in(1) < e);
    CHECK(static_cast<long>(r.k) <= std::max(0l, f.degree_in(1) - e + 1));
  }
}

TEST_CASE("content_primitive") {
  auto a = content_primitive(P("6*X1 + 4"));
  CHECK(a.content == 2);
  CHECK(a.primitive == P("3*X1 + 2"));
  auto b = content_primitive(P("-3"));
  CHECK(b.content == 3);
  CHECK(b.primitive == P("-1"));
  auto c = content_primitive(P("5*X1*X2"));
  CHECK(c.content == 5);
  CHECK(c.primitive == P("X1*X2"));
  CHECK_THROWS_AS(content_primitive(P("0")), Error);
}

TEST_CASE("heights over Q") {
  CHECK(height_q({Rational(2)}).log_value() == doctest::Approx(std::log(2.0)));
  CHECK(height_q({Rational(1)}).log_value() == doctest::Approx(0.0));
  CHECK(height_q({Rational(1, 2)}).log_value() == doctest::Approx(std::log(2.0)));
  Height h = height_q({Rational(1, 2), Rational(3)});
  CHECK(h.den_lcm == 2);
  CHECK(h.max_abs == 3);
  CHECK(h.log_value() == doctest::Approx(std::log(6.0)));
  CHECK(height_q(std::vector<Rational>{}).log_value() == 0.0);

  // h(r/s) = max(log|r|, log|s|) on singletons, h(a) = h(1/a), and the
  // product / sum inequalities.
  std::mt19937_64 rng(10);
  for (int i = 0; i < 300; ++i) {
    Rational a(static_cast<long>(rng() % 1999) - 999, static_cast<long>(rng() % 97) + 1);
    a.canonicalize();
    if (a == 0) continue;
    double direct = std::max(std::log(std::abs(a.get_num().get_d())), std::log(a.get_den().get_d()));
    CHECK(height_q({a}).log_value() == doctest::Approx(direct));
    CHECK(height_q({Rational(1 / a)}).log_value() == doctest::Approx(height_q({a}).log_value()));
    Rational b(static_cast<long>(rng() % 1999) - 999, static_cast<long>(rng() % 97) + 1);
    b.canonicalize();
    if (b == 0) continue;
    double ha = height_q({a}).log_value(), hb = height_q({b}).log_value();
    CHECK(height_q({Rational(a * b)}).log_value() <= ha + hb + 1e-9);
    CHECK(height_q({Rational(a + b)}).log_value() <=
          height_q({a, b}).log_value() + std::log(2.0) + 1e-9);
  }
}

TEST_CASE("linear_change") {
  std::vector<Integer> c{1};
  CHECK(linear_change(P("X1*X2"), c, false) == P("X1*X2 + X2^2"));
  ZPoly g = linear_change(P("X1^2"), c, false);
  CHECK(g == P("X1^2 + 2*X1*X2 + X2^2"));
  CHECK(xn_coeff(g, 2) == P("1"));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    ZPoly f = random_poly(rng, 3, 4, 5, 5);
    std::vector<Integer> cc{Integer(static_cast<long>(rng() % 5) - 2),
                            Integer(static_cast<long>(rng() % 5) - 2)};
    CHECK(linear_change(linear_change(f, cc, false), cc, true) == f);
  }
}
