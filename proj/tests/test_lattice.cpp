#include "conelab/families.hpp"

#include "doctest.h"

using namespace conelab;

TEST_CASE("blowup pairing") {
  IntersectionPairing p = blowup_pairing(1, 3, false);
  CHECK(p.divisor_basis == std::vector<std::string>{"H", "E1", "E2", "E3"});
  CHECK(p.curve_basis == std::vector<std::string>{"l", "e1", "e2", "e3"});
  DivisorClass d = parse_class("2H-E1-E3", p.divisor_basis);
  CHECK(pair(d, parse_class("l", p.curve_basis), p) == 2);
  CHECK(pair(d, parse_class("e1", p.curve_basis), p) == 1);
  CHECK(pair(d, parse_class("l-e2", p.curve_basis), p) == 2);
  IntersectionPairing q = blowup_pairing(2, 2, true);
  CHECK(q.divisor_basis == std::vector<std::string>{"H1", "H2", "E1", "E2"});
}

TEST_CASE("class parsing and formatting round-trip") {
  std::vector<std::string> basis{"l1", "l2", "e1", "e2", "e3"};
  for (std::string s : {"3l1+3l2-e1-e2-e3", "l1-e1", "-2l2+e3", "1/2l1", "0"}) {
    QVector v = parse_class(s, basis);
    CHECK(format_class(v, basis) == s);
  }
  CHECK_THROWS_AS(parse_class("l3", basis), Error);
  CHECK_THROWS_AS(parse_class("l1+", basis), Error);
}

TEST_CASE("relative frame of the cubic family") {
  FamilySpec s = embedded_family("cubic");
  const RelativeFrame& f = s.frame;
  REQUIRE(f.k() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    RelClass e(3);
    e[i] = 1;
    CHECK(f.project(s.sections[i]) == e);
    CHECK(f_degree(e) == 1);
  }
  CHECK(is_zero(f.project(s.anticanonical)));
  CHECK(f.kernel_part(s.anticanonical) == 1);
  DivisorClass h = parse_class("H", s.divisor_basis());
  CHECK(sub(h, f.lift(f.project(h))) == scale(f.kernel_part(h), s.anticanonical));
  // y.F is the f-degree.
  QVector fn = f.functional(s.fiber, s.pairing);
  CHECK(fn == QVector(3, Rat(1)));
}
