#include "doctest.h"
#include "support.hpp"
#include "zm/bounds.hpp"

using namespace zt;

TEST_CASE("bound formulas") {
  CHECK(beta(1, 2, 1) == 16);
  CHECK(beta(2, 1, 1) == 16);
  CHECK(beta(2, 3, 2) == Integer(12) * 12 * 12 * 12);
  CHECK(flat_bound(1, 2, 1) == 16);
  CHECK(flat_bound(2, 1, 1) == 65536);
  CHECK(mono_count(2, 2) == 6);
  CHECK(mono_count(3, 0) == 1);
  CHECK(mono_count(3, -1) == 0);
  CHECK_THROWS(beta(7, 1, 1));
  CHECK_THROWS(flat_bound(5, 1, 1));
}

TEST_CASE("within_beta and within_flat") {
  CHECK(within_beta(16, 1, 2, 1));
  CHECK(!within_beta(17, 1, 2, 1));
  CHECK(within_beta(kNegInf, 1, 2, 1));
  CHECK(within_beta(1000000, 9, 1, 1));
  CHECK(within_flat(65536, 2, 1, 1));
  CHECK(!within_flat(65537, 2, 1, 1));
  CHECK(within_flat(1000000, 6, 1, 1));
}

TEST_CASE("audit records observed values") {
  ZVec field{P("X1^3 + 2", 1)};
  ZVec local{P("5*X1^20", 1)};
  auto r = audit(1, 2, 1, 2, 0, {audit_item(Provenance::Field, field), audit_item(Provenance::Local, local)});
  CHECK(r.observed_field_degree == 3);
  CHECK(r.observed_local_degree == 20);
  CHECK(r.pass_field);
  CHECK(!r.pass_local);
  CHECK(!r.pass);
  auto j = to_json(r);
  CHECK(j.contains("beta"));
  CHECK(j.contains("flat"));
  CHECK(!j.contains("gamma"));
  auto big = audit(8, 2, 1, 2, 0, {});
  CHECK(big.beta == 0);
  CHECK(to_json(big)["beta"].is_null());
}
