#include "conelab/families.hpp"

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

using namespace conelab;

TEST_CASE("family list and shapes") {
  const auto& ids = family_ids();
  REQUIRE(ids.size() == 8);
  struct Shape {
    const char* id;
    int n, r, k;
  };
  for (auto sh : {Shape{"gr25", 3, 5, 5}, Shape{"quadrics", 3, 4, 4}, Shape{"cubic", 3, 3, 3}, Shape{"p2p2", 4, 6, 7},
                  Shape{"flag123", 3, 6, 7}, Shape{"p1p1p1", 3, 6, 8}, Shape{"dcover", 3, 2, 2}, Shape{"wps", 3, 1, 1}}) {
    FamilySpec s = embedded_family(sh.id);
    CHECK(s.n == sh.n);
    CHECK(s.r == sh.r);
    CHECK(s.k == sh.k);
  }
  CHECK_THROWS_AS(embedded_family("nope"), ConfigError);
}

TEST_CASE("nef cone sizes") {
  CHECK(nef_cone(embedded_family("gr25")).rays.size() == 32);
  CHECK(nef_cone(embedded_family("quadrics")).rays.size() == 16);
  CHECK(nef_cone(embedded_family("cubic")).rays.size() == 8);
  CHECK(nef_cone(embedded_family("dcover")).rays.size() == 4);
  CHECK(nef_cone(embedded_family("wps")).rays.size() == 2);
  CHECK(nef_cone(embedded_family("p2p2")).rays.size() == 65);
}

TEST_CASE("anticanonical and section invariants") {
  for (const auto& id : family_ids()) {
    FamilySpec s = embedded_family(id);
    CHECK(pair(s.anticanonical, s.fiber, s.pairing) == 0);
    for (const auto& sec : s.sections) CHECK(pair(sec, s.fiber, s.pairing) == 1);
    for (const auto& d : s.catalog.decompositions) CHECK(pair(s.anticanonical, d.reference, s.pairing) == 0);
  }
}

TEST_CASE("nef decomposition of an explicit divisor") {
  FamilySpec s = embedded_family("gr25");
  auto terms = nef_decomposition(s, {Int(5)}, {Int(3), Int(2), Int(2), Int(1), Int(0)});
  DivisorClass sum(s.dim());
  for (const auto& t : terms) {
    CHECK(t.coefficient >= 0);
    sum = add(sum, scale(t.coefficient, t.ray));
  }
  CHECK(format_class(sum, s.divisor_basis()) == "5H-3E1-2E2-2E3-E4");
  CHECK_THROWS_AS(nef_decomposition(s, {Int(2)}, {Int(3), Int(0), Int(0), Int(0), Int(0)}), Error);
  CHECK_THROWS_AS(nef_decomposition(s, {Int(5)}, {Int(1), Int(2), Int(0), Int(0), Int(0)}), Error);
}

TEST_CASE("bigness margins") {
  BignessMargin m = bigness_margin(3, 2, 5);
  CHECK(m.value == 14);
  CHECK(m.total_term == 40);
  CHECK(m.untouched_term == 24);
  CHECK(m.touched_term == 2);
  CHECK(bigness_margin(4, 0, 5).anticanonical);
}

TEST_CASE("relabelings permute the symmetry block") {
  FamilySpec s = embedded_family("gr25");
  auto perms = relabelings(s);
  CHECK(perms.size() == 24);
  for (const auto& p : perms) CHECK(p[0] == 0);
  DivisorClass d = parse_class("H-E1-E2", s.divisor_basis());
  std::set<std::string> images;
  for (const auto& p : perms) images.insert(format_class(relabel(s, d, p), s.divisor_basis()));
  CHECK(images.size() == 4);
}

TEST_CASE("appendix example") {
  AppendixReport a = appendix_check(3);
  CHECK(a.pass);
  CHECK(a.picard_rank == 2);
  CHECK(a.degree == 1);
  CHECK(a.anticanonical_degree == 2);
  CHECK(a.nef_rays == 2);
  CHECK(a.movable_equals_nef);
}

TEST_CASE("family JSON round-trips and loads from the search path") {
  for (const auto& id : family_ids()) {
    FamilySpec s = embedded_family(id);
    std::string text = family_to_json(s);
    CHECK(family_to_json(family_from_json(text)) == text);
  }
  auto dir = std::filesystem::temp_directory_path() / "conelab_family_test";
  std::filesystem::create_directories(dir);
  FamilySpec s = embedded_family("cubic");
  s.id = "mycubic";
  s.name = "relabeled cubic";
  {
    std::ofstream f(dir / "mycubic.json");
    f << family_to_json(s);
  }
  ::setenv("CONELAB_FAMILY_PATH", dir.string().c_str(), 1);
  FamilySpec loaded = load_family("mycubic");
  CHECK(loaded.name == "relabeled cubic");
  CHECK(nef_cone(loaded).rays.size() == 8);
  {
    std::ofstream f(dir / "broken.json");
    f << "{\"schema_version\": 1}";
  }
  CHECK_THROWS_AS(load_family("broken"), ConfigError);
  ::unsetenv("CONELAB_FAMILY_PATH");
  std::filesystem::remove_all(dir);
}

TEST_CASE("validation rejects broken invariants") {
  FamilySpec s = embedded_family("cubic");
  s.sections[0] = parse_class("H", s.divisor_basis());
  CHECK_THROWS_AS(validate(s), ConfigError);
  FamilySpec t = embedded_family("cubic");
  t.fiber = parse_class("l", t.curve_basis());
  CHECK_THROWS_AS(validate(t), ConfigError);
}
