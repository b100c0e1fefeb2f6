#include "conelab/rational.hpp"

#include "doctest.h"

using namespace conelab;

TEST_CASE("rationals parse to lowest terms and print as p/q") {
  CHECK(to_string(parse_rational("6/8")) == "3/4");
  CHECK(to_string(parse_rational("-4/2")) == "-2");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("vector arithmetic and lexicographic order") {
  QVector a{Rat(1, 2), Rat(1)}, b{Rat(1, 2), Rat(-1)};
  CHECK(dot(a, b) == Rat(-3, 4));
  CHECK(add(a, b) == QVector{Rat(1), Rat(0)});
  CHECK(is_zero(sub(a, a)));
  CHECK(lex_less(b, a));
  CHECK_FALSE(lex_less(a, a));
  ZVector z{Int(2), Int(-3)};
  CHECK(negate(z) == ZVector{Int(-2), Int(3)});
  CHECK(scale(Int(2), z) == ZVector{Int(4), Int(-6)});
}

TEST_CASE("row reduction, rank, nullspace and solve") {
  std::vector<QVector> m{{Rat(1), Rat(2), Rat(3)}, {Rat(2), Rat(4), Rat(6)}, {Rat(0), Rat(1), Rat(1)}};
  CHECK(rank(m) == 2);
  std::vector<std::size_t> piv;
  auto r = rref(m, &piv);
  CHECK(r.size() == 2);
  CHECK(piv == std::vector<std::size_t>{0, 1});
  auto ns = nullspace(m, 3);
  REQUIRE(ns.size() == 1);
  for (const auto& row : m) CHECK(dot(row, to_q(ns[0])) == 0);
  std::vector<QVector> inv{{Rat(2), Rat(1)}, {Rat(1), Rat(1)}};
  QVector x = solve(inv, {Rat(3), Rat(2)});
  CHECK(x == QVector{Rat(1), Rat(1)});
  CHECK_THROWS_AS(solve(m, {Rat(1), Rat(1), Rat(1)}), Error);
}
