#include "doctest.h"
#include "support.hpp"
#include "zm/global_solver.hpp"
#include "zm/oracle.hpp"

using namespace zt;

namespace {

std::vector<ZPoly> Ps(std::initializer_list<const char*> xs, unsigned n = 1) {
  std::vector<ZPoly> out;
  for (auto x : xs) out.push_back(P(x, n));
  return out;
}

ZVec unit(const char* s, unsigned n) { return ZVec{P(s, n)}; }

// Equality of submodules of Z[X]^m by inclusion both ways, once through the
// solver and once through the oracle at degree <= B.
void check_same_module(const std::vector<ZVec>& a, const std::vector<ZVec>& b, unsigned N, long B) {
  for (const auto& v : a) {
    CHECK(in_module(b, v, N));
    CHECK(solve_bounded_z(ZMatrix::from_columns(b, v.size(), N), v, B).has_value());
  }
  for (const auto& v : b) {
    CHECK(in_module(a, v, N));
    CHECK(solve_bounded_z(ZMatrix::from_columns(a, v.size(), N), v, B).has_value());
  }
}

}  // namespace

TEST_CASE("member_z examples") {
  auto c = member_z(P("1", 1), Ps({"1 - 2*X1", "8*X1"}));
  REQUIRE(c.has_value());
  CHECK(verify(*c));

  auto r = member_z_report(P("X1", 1), Ps({"2*X1", "X1^2"}));
  CHECK(!r.certificate);
  CHECK(r.witness.text() == "mod-p obstruction p=2");
  CHECK(solve_field_q(M({{"2*X1", "X1^2"}}, 1), V({"X1"}, 1)).has_value());
  CHECK(!member_bounded_z(P("X1", 1), Ps({"2*X1", "X1^2"}), 4));

  auto t = member_z(P("X1^2 + 3", 2), Ps({"X1^2 + 3", "X2"}, 2));
  REQUIRE(t.has_value());
  CHECK(verify(*t));

  auto m3 = member_z_report(P("2", 1), Ps({"6", "2*X1 + 4"}));
  CHECK(!m3.certificate);
  CHECK(m3.witness.kind == "mod-p");
  CHECK(m3.witness.p == 3);
  CHECK(!member_bounded_z(P("2", 1), Ps({"6", "2*X1 + 4"}), 3));

  CHECK(member_z(P("0", 1), Ps({"2"})).has_value());
  CHECK(member_z_report(P("1", 1), Ps({"0", "0"})).witness.kind == "zero-generators");
}

TEST_CASE("solve_linear_z examples") {
  auto a = solve_linear_z(M({{"1", "0"}, {"0", "2"}}, 1), V({"X1", "4*X1"}, 1));
  REQUIRE(a.has_value());
  CHECK(a->cofactors == V({"X1", "2*X1"}, 1));
  CHECK(!solve_linear_z(M({{"2"}}, 1), V({"X1"}, 1)));
  CHECK(!solve_bounded_z(M({{"2"}}, 1), V({"X1"}, 1), 2));
  auto c = solve_linear_z_report(M({{"1"}, {"1"}}, 1), V({"1", "2"}, 1));
  CHECK(!c.certificate);
  CHECK(c.witness.kind == "Q-rank");
}

TEST_CASE("power_cofactors") {
  CHECK(power_cofactors(Ps({"1"}), Ps({"1 - 2*X1"}), 2) == Ps({"1 + 2*X1"}));
  CHECK(power_cofactors(Ps({"1"}), Ps({"1 - 3*X1"}), 2) == Ps({"1 + 3*X1"}));
  CHECK(power_cofactors(Ps({"X1", "2"}), Ps({"X1", "1"}), 1) == Ps({"X1", "2"}));
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    std::vector<ZPoly> rs{random_poly(rng, 2, 2, 3, 2), random_poly(rng, 2, 2, 3, 2)};
    std::vector<ZPoly> fs{random_poly(rng, 2, 2, 3, 2), random_poly(rng, 2, 2, 3, 2)};
    unsigned long e = 1 + rng() % 4;
    auto s = power_cofactors(rs, fs, e);
    ZPoly q = ZPoly(2, Integer(1)) - rs[0] * fs[0] - rs[1] * fs[1];
    CHECK(ZPoly(2, Integer(1)) - pow(q, e) == s[0] * fs[0] + s[1] * fs[1]);
  }
}

TEST_CASE("bezout_local and bezout_z") {
  auto a = bezout_local(Ps({"1 - 2*X1", "8*X1"}), Integer(2));
  REQUIRE(a.has_value());
  CHECK(a->denominator == 1);
  CHECK(a->cofactors == Ps({"1 + 2*X1 + 4*X1^2", "X1^2"}));
  CHECK(!bezout_local(Ps({"2", "X1"}), Integer(2)));
  auto c = bezout_local(Ps({"3", "X1"}), Integer(2));
  REQUIRE(c.has_value());
  CHECK(c->denominator == 3);
  CHECK(verify(*c, Ps({"3", "X1"})));

  auto z = bezout_z(Ps({"3", "X1 + 1", "X1 - 1"}));
  REQUIRE(z.has_value());
  CHECK(verify(*z));
  CHECK(!bezout_z(Ps({"2", "X1"})));
  CHECK(!member_bounded_z(P("1", 1), Ps({"2", "X1"}), 3));
  auto w = bezout_z(Ps({"1 - 2*X1", "8*X1"}));
  REQUIRE(w.has_value());
  CHECK(verify(*w));

  // Presence agrees with member_z(1, fs).
  std::mt19937_64 rng(43);
  for (int i = 0; i < 40; ++i) {
    std::vector<ZPoly> fs{random_poly(rng, 1, 2, 4, 2), random_poly(rng, 1, 2, 4, 2)};
    if (rng() % 2) fs.push_back(ZPoly(1, Integer(1 + static_cast<long>(rng() % 5))));
    auto b = bezout_z(fs);
    auto m = member_z(P("1", 1), fs);
    CHECK(b.has_value() == m.has_value());
    if (b) CHECK(verify(*b));
  }
}

TEST_CASE("syzygy_z examples") {
  auto a = syzygy_z(M({{"X1", "X2"}}));
  CHECK(in_module(a.generators, V({"X2", "-X1"}), 2));
  for (const auto& y : syzygy_bounded_z(M({{"X1", "X2"}}), 3)) CHECK(in_module(a.generators, y, 2));

  auto b = syzygy_z(M({{"2", "X1"}}, 1));
  CHECK(in_module(b.generators, V({"X1", "-2"}, 1), 1));
  for (const auto& g : b.generators) CHECK(is_zero_vec(M({{"2", "X1"}}, 1).apply(g)));
  for (const auto& y : syzygy_bounded_z(M({{"2", "X1"}}, 1), 3)) CHECK(in_module(b.generators, y, 1));

  auto z = syzygy_z(ZMatrix(1, 2, 2));
  CHECK(z.generators.size() == 2);

  // [2X1, X1^2]: the field generator is (X1, -2); delta carries the prime 2.
  ZMatrix A = M({{"2*X1", "X1^2"}}, 1);
  auto c = syzygy_z(A);
  CHECK(c.delta % 2 == 0);
  for (const auto& y : syzygy_bounded_z(A, 3)) {
    CHECK(in_module(c.generators, y, 1));
    ZVec dy;
    for (const auto& f : y) dy.push_back(f * ZPoly(1, c.delta));
    CHECK(in_module(c.field.generators, dy, 1));
  }
  CHECK(denominator_delta(M({{"X1", "X2"}}), syzygy_field_q(M({{"X1", "X2"}}))) == 1);
  CHECK(denominator_delta(M({{"1", "X1"}}, 1), syzygy_field_q(M({{"1", "X1"}}, 1))) == 1);
}

TEST_CASE("module operations") {
  auto i1 = module_intersect({unit("2", 1)}, {unit("X1", 1)}, 1, 1);
  check_same_module(i1, {unit("2*X1", 1)}, 1, 3);
  auto i2 = module_intersect({unit("X1", 2)}, {unit("X2", 2)}, 1, 2);
  check_same_module(i2, {unit("X1*X2", 2)}, 2, 3);
  auto i3 = module_intersect({unit("X1 + 2", 1), unit("3", 1)}, {unit("X1 + 2", 1), unit("3", 1)}, 1, 1);
  check_same_module(i3, {unit("X1 + 2", 1), unit("3", 1)}, 1, 3);

  auto asv = [](const std::vector<ZPoly>& g) {
    std::vector<ZVec> out;
    for (const auto& f : g) out.push_back(ZVec{f});
    return out;
  };
  check_same_module(asv(module_colon({unit("2*X1", 1)}, {unit("X1", 1)}, 1, 1)), {unit("2", 1)}, 1, 3);
  check_same_module(asv(module_colon({unit("X1", 1)}, {unit("X1", 1)}, 1, 1)), {unit("1", 1)}, 1, 3);
  check_same_module(asv(module_colon({unit("4", 1)}, {unit("2", 1)}, 1, 1)), {unit("2", 1)}, 1, 3);

  check_same_module(module_saturate({unit("2*X1", 1), unit("X1^2", 1)}, 1, 1), {unit("X1", 1)}, 1, 3);
  check_same_module(module_saturate({unit("X1", 1)}, 1, 1), {unit("X1", 1)}, 1, 3);
  check_same_module(module_saturate({unit("2", 1)}, 1, 1), {unit("1", 1)}, 1, 3);
}
