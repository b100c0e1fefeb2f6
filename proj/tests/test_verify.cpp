#include "conelab/verify.hpp"

#include "doctest.h"

using namespace conelab;

namespace {

VerifyOptions quick() {
  VerifyOptions o;
  o.samples = 60;
  return o;
}

const CheckResult* find(const VerificationReport& r, const std::string& fam, const std::string& id) {
  for (const auto& c : r.results)
    if (c.family == fam && c.id == id) return &c;
  return nullptr;
}

} // namespace

TEST_CASE("report for small families") {
  VerificationReport r = run_all({"cubic", "dcover"}, quick());
  CHECK(r.ok());
  CHECK(r.failed == 0);
  CHECK(r.passed + r.failed + r.delegated == r.results.size());
  const CheckResult* nef = find(r, "cubic", "nef-fixture");
  REQUIRE(nef);
  CHECK(nef->summary == "nef-fixture: 8 rays match the printed generator list");
  CHECK(find(r, "dcover", "nef-fixture")->summary.find("4 rays") != std::string::npos);
}

TEST_CASE("reports are deterministic and round-trip") {
  std::string a = report_to_string(run_all({"cubic", "wps"}, quick()), false);
  std::string b = report_to_string(run_all({"cubic", "wps"}, quick()), false);
  CHECK(a == b);
  Json j = Json::parse(a);
  CHECK(j.dump(2) + "\n" == a);
  CHECK(j["schema_version"] == 1);
  CHECK(j["summary"]["total"] == j["results"].size());
  CHECK_FALSE(j.contains("duration_seconds"));
  Json t = report_to_json(run_all({"wps"}, quick()), true);
  CHECK(t.contains("duration_seconds"));
}

TEST_CASE("seed changes only the randomized inputs") {
  VerifyOptions o = quick();
  o.seed = 99;
  VerificationReport r = run_all({"cubic"}, o);
  CHECK(r.ok());
}

TEST_CASE("delegated status only for the covering of delegated families") {
  VerificationReport r = run_all({"flag123"}, quick());
  for (const auto& c : r.results) {
    if (c.id == "covering")
      CHECK(c.status == Status::delegated);
    else
      CHECK(c.status == Status::pass);
  }
}

TEST_CASE("unknown families fail with a witness") {
  VerificationReport r = run_all({"nosuch"}, quick());
  CHECK_FALSE(r.ok());
  REQUIRE(r.results.size() == 1);
  CHECK(r.results[0].status == Status::fail);
  CHECK_FALSE(r.results[0].witness.is_null());
}

TEST_CASE("kernel property suite on a small sample") {
  KernelPropertyReport k = kernel_property_check(5, 30);
  CHECK(k.pass());
  CHECK(k.cones == 30);
  CHECK(k.deterministic == 30);
}
