#include <chrono>
#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "zm/local_solver.hpp"
#include "zm/oracle.hpp"

using namespace zt;

namespace {

bool solves(const ZMatrix& A, const ZVec& y) { return is_zero_vec(A.apply(y)); }

// y in the Q[X]-span of gens with a denominator prime to p, checked by exact
// rational solve and then clearing the denominator.
bool in_local_span_q(const std::vector<ZVec>& gens, const ZVec& y, const Integer& p, unsigned N) {
  if (gens.empty()) return is_zero_vec(y);
  ZMatrix G = ZMatrix::from_columns(gens, y.size(), N);
  auto h = solve_field_q(G, y);
  if (!h) return false;
  return !mpz_divisible_p(vec_denominator(*h).get_mpz_t(), p.get_mpz_t());
}

}  // namespace

TEST_CASE("syzygy_local examples") {
  auto a = syzygy_local(M({{"2", "X1"}}, 1), Integer(2));
  for (const auto& g : a.generators) CHECK(solves(M({{"2", "X1"}}, 1), g));
  CHECK(in_local_span_q(a.generators, V({"X1", "-2"}, 1), Integer(2), 1));
  CHECK(a.bound_ok);

  for (int p : {2, 3, 5, 7}) {
    auto z = syzygy_local(M({{std::to_string(p).c_str()}}, 1), Integer(p));
    CHECK(z.generators.empty());
  }

  auto c = syzygy_local(M({{"1", "X1"}}, 1), Integer(3));
  REQUIRE(!c.trace.empty());
  CHECK(c.trace[0].mu == 0);
  CHECK(in_local_span_q(c.generators, V({"X1", "-1"}, 1), Integer(3), 1));

  auto z = syzygy_local(ZMatrix(1, 2, 2), Integer(2));
  CHECK(z.generators.size() == 2);
}

TEST_CASE("combine_generators") {
  ZMatrix A = M({{"2", "X1"}}, 1);
  auto d = combine_generators(A, {V({"X1", "-2"}, 1)}, {V({"X1", "-2"}, 1)});
  REQUIRE(d.size() == 1);
  CHECK(d[0] == V({"X1", "-2"}, 1));
  CHECK(combine_generators(A, {}, {V({"X1", "-2"}, 1)}).size() == 1);
  CHECK(combine_generators(A, {V({"X1", "-2"}, 1)}, {}).size() == 1);
  CHECK_THROWS_AS(combine_generators(A, {V({"X1", "-1"}, 1)}, {}), Error);
}

TEST_CASE("oracle examples") {
  CHECK(member_bounded_z(P("X1", 1), {P("2*X1", 1), P("X1^2", 1)}, 4) == std::nullopt);
  auto m = member_bounded_z(P("1", 1), {P("1 - 2*X1", 1), P("8*X1", 1)}, 2);
  REQUIRE(m.has_value());
  CHECK((*m)[0] * P("1 - 2*X1", 1) + (*m)[1] * P("8*X1", 1) == P("1", 1));
  CHECK(member_bounded_z(P("1", 1), {P("1 - 2*X1", 1), P("8*X1", 1)}, 1) == std::nullopt);
  CHECK(member_bounded_z(P("2", 1), {P("6", 1), P("2*X1 + 4", 1)}, 3) == std::nullopt);
  CHECK(solve_bounded_z(M({{"2"}}, 1), V({"X1"}, 1), 2) == std::nullopt);

  // Kernel of [X1, X2] at degree <= 3: each vector is a multiple of (X2, -X1).
  auto K = syzygy_bounded_z(M({{"X1", "X2"}}), 3);
  CHECK(K.size() == 6);  // monomials of degree <= 2 times (X2, -X1)
  for (const auto& y : K) {
    ZPoly q;
    REQUIRE(try_divide(y[0], P("X2"), q));
    CHECK(y[1] == -q * P("X1"));
  }
  // Kernel of [2, X1]: constant-term parity.
  for (const auto& y : syzygy_bounded_z(M({{"2", "X1"}}, 1), 3)) {
    ZPoly q;
    REQUIRE(try_divide(y[1], P("-2", 1), q));
    CHECK(y[0] == q * P("X1", 1));
  }

  Limits saved = limits();
  limits().oracle_cells = 100;
  CHECK_THROWS_AS(syzygy_bounded_z(M({{"X1", "X2"}}), 6), Error);
  limits() = saved;
}

TEST_CASE("syzygy_local random runs keep their certificates") {
  std::mt19937_64 rng(31);
  auto t0 = std::chrono::steady_clock::now();
  int runs = 0;
  for (int i = 0; i < 30; ++i) {
    unsigned N = 1 + rng() % 2;
    std::size_t m = 1 + rng() % 2, n = m + 1 + rng() % 2;
    ZMatrix A = random_matrix(rng, m, n, N, 2, 4, 2);
    if (A.is_zero()) continue;
    Integer p = std::vector<int>{2, 3, 5}[rng() % 3];
    for (LocalMode mode : {LocalMode::Adaptive, LocalMode::Literal}) {
      if (mode == LocalMode::Literal && N == 2 && A.degree() > 1) continue;
      auto L = syzygy_local(A, p, mode);
      for (const auto& lv : L.trace) {
        CHECK(lv.regular_ok);
        CHECK(lv.valuation_ok);
        if (lv.transform != "none")
          CHECK(static_cast<double>(lv.s) < std::pow(static_cast<double>(lv.e), lv.nu));
      }
      for (const auto& g : L.generators) CHECK(solves(A, g));
      CHECK(L.bound_ok);
      ++runs;
    }
  }
  CHECK(runs > 20);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("local runs: " << runs << " in " << secs << " s");
}
