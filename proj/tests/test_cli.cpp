#include "doctest.h"
#include "support.hpp"
#include "zm/cli.hpp"

using nlohmann::json;
using zm::cli::Flags;
using zm::cli::run;

namespace {

json without_timing(json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST_CASE("cli member and verify") {
  json problem = {{"N", 1}, {"ring", "Z"}, {"generators", {"1 - 2*X1", "8*X1"}}, {"target", "1"}};
  auto o = run("member", problem, Flags{});
  CHECK(o.exit_code == 0);
  CHECK(o.json["verdict"] == "member");
  REQUIRE(o.json.contains("certificate"));
  auto v = run("verify", problem, Flags{}, &o.json["certificate"]);
  CHECK(v.json["verified"] == true);

  json bad = o.json["certificate"];
  bad["cofactors"][0] = "2";
  CHECK(run("verify", problem, Flags{}, &bad).json["verified"] == false);

  CHECK(without_timing(run("member", problem, Flags{}).json) == without_timing(o.json));
}

TEST_CASE("cli witnesses and zero target") {
  json problem = {{"N", 1}, {"generators", {"2*X1", "X1^2"}}, {"target", "X1"}};
  auto o = run("member", problem, Flags{});
  CHECK(o.exit_code == 0);
  CHECK(o.json["verdict"] == "not-member");
  CHECK(o.json["witness"] == "mod-p obstruction p=2");

  json zero = {{"N", 1}, {"generators", {"2*X1", "X1^2"}}, {"target", "0"}};
  auto z = run("member", zero, Flags{});
  REQUIRE(z.json.contains("certificate"));
  CHECK(z.json["certificate"]["cofactors"] == json({"0", "0"}));
  CHECK(run("verify", zero, Flags{}, &z.json["certificate"]).json["verified"] == true);

  Flags q;
  q.ring = "Q";
  CHECK(run("member", problem, q).json["verdict"] == "member");
}

TEST_CASE("cli input errors") {
  CHECK(run("member", json{{"generators", {"X1"}}}, Flags{}).exit_code == 2);
  CHECK(run("member", json{{"N", 1}, {"generators", {"X1 +* 2"}}, {"target", "1"}}, Flags{}).exit_code == 2);
  CHECK(run("nonsense", json{{"N", 1}}, Flags{}).exit_code == 2);
  Flags f;
  f.ring = "Fp(4)";
  CHECK(run("member", json{{"N", 1}, {"generators", {"X1"}}, {"target", "1"}}, f).exit_code == 2);
}

TEST_CASE("cli bounds and syzygy") {
  auto b = run("bounds", json{{"N", 2}, {"d", 1}, {"m", 1}}, Flags{});
  CHECK(b.json["beta"] == "16");
  CHECK(b.json["flat"] == "65536");
  auto s = run("syzygy", json{{"N", 2}, {"generators", {"X1", "X2"}}}, Flags{});
  CHECK(s.exit_code == 0);
  CHECK(!s.json["generators"].empty());
}
