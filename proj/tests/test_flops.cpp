#include "conelab/flops.hpp"

#include "doctest.h"

#include <algorithm>

using namespace conelab;

namespace {

std::vector<std::string> ledger_strings(const MarkedModel& m) {
  std::vector<std::string> out;
  for (const auto& e : m.ledger()) out.push_back(format_class(e.cls, m.family->curve_basis()));
  return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::string fplus(const FamilySpec& s, const std::string& c, int m = 1) {
  return format_class(add(scale(Rat(m), s.fiber), parse_class(c, s.curve_basis())), s.curve_basis());
}

} // namespace

TEST_CASE("transform_class adds k copies of the flopped class") {
  FamilySpec s = embedded_family("gr25");
  const auto& b = s.curve_basis();
  CurveClass g = parse_class("4l-e2-e3-e4-e5", b), c = parse_class("l-e1", b);
  CHECK(format_class(transform_class(g, c, Int(2)), b) == "6l-2e1-e2-e3-e4-e5");
  CHECK(format_class(transform_class(g, c, Int(2)), b) == fplus(s, "l-e1"));
  CHECK(transform_class(g, c, Int(0)) == g);
}

TEST_CASE("Gr flop of the line through p1") {
  FamilySpec s = embedded_family("gr25");
  MarkedModel m = apply_flop(initial_model(s), "1");
  CHECK(m.label() == "(1)");
  auto l = ledger_strings(m);
  CHECK(has(l, fplus(s, "l-e1")));
  CHECK(has(l, "-l+e1"));
  for (const auto& e : m.ledger()) CHECK(pair(s.anticanonical, e.cls, s.pairing) == 0);
  m = apply_flop(apply_flop(apply_flop(m, "12"), "13"), "123");
  CHECK(has(ledger_strings(m), fplus(s, "3l-e1-e2-e3")));
}

TEST_CASE("quadric sequence (1) then (12)") {
  FamilySpec s = embedded_family("quadrics");
  MarkedModel m = apply_flop(apply_flop(initial_model(s), "1"), "12");
  auto l = ledger_strings(m);
  CHECK(has(l, fplus(s, "l-e1")));
  CHECK(has(l, fplus(s, "2l-e1-e2")));
}

TEST_CASE("admissibility errors name the violated rule") {
  FamilySpec s = embedded_family("gr25");
  MarkedModel x = initial_model(s);
  CHECK_THROWS_WITH_AS(apply_flop(x, "12"), "line through p1 must be flopped first", FlopError);
  MarkedModel m1 = apply_flop(x, "1");
  CHECK_THROWS_WITH_AS(apply_flop(m1, "1234"), doctest::Contains("quartic classes are never flopped"), FlopError);
  CHECK_THROWS_WITH_AS(apply_flop(apply_flop(m1, "12"), "123"), doctest::Contains("needs the conics 13"), FlopError);
  CHECK_THROWS_AS(apply_flop(m1, "1"), FlopError);
  CHECK_THROWS_WITH_AS(apply_flop(m1, parse_class("l-e2-e3", s.curve_basis())),
                       doctest::Contains("not a fiber component"), FlopError);
  MarkedModel m = m1;
  for (auto st : {"12", "13", "14", "15", "123"}) m = apply_flop(m, st);
  CHECK_THROWS_WITH_AS(apply_flop(m, "145"), doctest::Contains("union passes through all points"), FlopError);
  CHECK_THROWS_AS(apply_flop(initial_model(embedded_family("cubic")), "l-e1"), FlopError);
  CHECK_THROWS_WITH_AS(apply_flop(initial_model(embedded_family("flag123")), "l1-e1"), doctest::Contains("delegated"),
                       FlopError);
}

TEST_CASE("repeated flops in the P2xP2 family") {
  FamilySpec s = embedded_family("p2p2");
  MarkedModel m = initial_model(s);
  CurveClass c = parse_class("l1+l2-e1-e2", s.curve_basis());
  for (int k = 1; k <= 3; ++k) {
    m = apply_flop(m, add(c, scale(Rat(k - 1), s.fiber)));
    CHECK(has(ledger_strings(m), fplus(s, "l1+l2-e1-e2", k)));
  }
}

TEST_CASE("enumeration counts") {
  FamilySpec gr = embedded_family("gr25");
  auto models = enumerate_models(gr);
  CHECK(models.size() == 77);
  auto seqs = enumerate_sequences(gr, models);
  REQUIRE(seqs.size() == 13);
  CHECK(seqs.front().label() == "(1)");
  CHECK(seqs.back().label() == "(1,12,13,14,15,123,124,134)");
  FamilySpec q = embedded_family("quadrics");
  CHECK(enumerate_models(q).size() == 9);
  CHECK(enumerate_sequences(q).size() == 4);
  CHECK(enumerate_models(embedded_family("cubic")).size() == 1);
  CHECK(enumerate_sequences(embedded_family("cubic")).empty());
  CHECK(enumerate_sequences(embedded_family("flag123")).empty());
}

TEST_CASE("relative nef cones") {
  FamilySpec gr = embedded_family("gr25");
  MarkedModel m = apply_flop(initial_model(gr), "1");
  Cone c = relative_nef_cone(m);
  CHECK(c.full_dimensional());
  // x.(F+(l-e1)) >= 0 holds on the chamber and cuts out the outer facet of V.
  ZVector wall = rel_functional(gr, add(gr.fiber, parse_class("l-e1", gr.curve_basis())));
  for (const auto& r : c.rays) CHECK(sgn(dot(wall, r)) >= 0);
  const auto& vf = fundamental_domain(gr).cone.facets;
  CHECK(std::find(vf.begin(), vf.end(), normalize_ray(wall)) != vf.end());
  // The initial cubic model contains V.
  FamilySpec cubic = embedded_family("cubic");
  CHECK(cone_contains_cone(relative_nef_cone(initial_model(cubic)), fundamental_domain(cubic).cone));
}

TEST_CASE("covering certificates") {
  FamilySpec gr = embedded_family("gr25");
  CoveringReport c = covering_check(gr);
  CHECK(c.pass);
  CHECK(c.uncovered.empty());
  bool found = false;
  for (const auto& ct : c.certificates) {
    CHECK(ct.ok);
    if (ct.cls == fplus(gr, "2l-e1-e2")) {
      CHECK(ct.affine == "2-a3-a4-a5");
      found = true;
    }
  }
  CHECK(found);
  CHECK(covering_check(embedded_family("cubic")).cells == 1);
  CHECK(covering_check(embedded_family("dcover")).pass);
  CHECK(covering_check(embedded_family("p1p1p1")).delegated);
}

TEST_CASE("chamber graphs") {
  FamilySpec q = embedded_family("quadrics");
  ChamberGraph g = chamber_graph(q);
  CHECK(g.vertices == 9);
  CHECK(g.connected);
  CHECK(g.problems.empty());
  ChamberGraph one = chamber_graph(embedded_family("cubic"));
  CHECK(one.vertices == 1);
  CHECK(one.edges.empty());
  CHECK(one.connected);
}

TEST_CASE("model nef fixture certificates") {
  FamilySpec gr = embedded_family("gr25");
  auto models = enumerate_models(gr);
  const ModelFixture& first = gr.model_fixtures.front();
  REQUIRE(first.sequence == "(1)");
  FixtureReport r = fixture_check_model_nef(models[find_model(models, "(1)")], first, models);
  CHECK(r.pass);
  CHECK(r.contains_anticanonical);
  CHECK(r.maps_onto);

  FamilySpec q = embedded_family("quadrics");
  auto qm = enumerate_models(q);
  for (const auto& fx : q.model_fixtures) {
    FixtureReport fr = fixture_check_model_nef(qm[find_model(qm, fx.sequence)], fx, qm);
    if (fx.sequence == "(1,12)") CHECK(fr.pass);
    if (fx.sequence == "(1,12,13,14)") {
      CHECK_FALSE(fr.pass);
      auto it = std::find_if(fr.rays.begin(), fr.rays.end(),
                             [](const FixtureRay& x) { return x.printed == "7H-12E1-4E2-4E3-4E4"; });
      REQUIRE(it != fr.rays.end());
      CHECK(it->status == "failed");
      CHECK(it->detail == "pairs -1 with 5l-2e1-e2-e3-e4");
    }
  }
}

TEST_CASE("ledger check on the anchored families") {
  for (const char* id : {"gr25", "quadrics"}) {
    FamilySpec s = embedded_family(id);
    LedgerReport r = ledger_check(s, enumerate_models(s));
    CHECK(r.pass);
    CHECK(r.conservation);
    CHECK(r.anticanonical_trivial);
    for (const auto& p : r.patterns) CHECK(p.observed == std::vector<int>{1});
  }
}
