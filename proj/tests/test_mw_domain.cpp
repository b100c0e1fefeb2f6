#include "conelab/mw_domain.hpp"

#include "doctest.h"

using namespace conelab;

namespace {

QVector q(std::initializer_list<Rat> xs) { return QVector(xs); }

} // namespace

TEST_CASE("involution and translations on section coordinates") {
  PsAutElt iota = identity_element(3);
  iota.involution = true;
  RelClass y = q({Rat(1), Rat(2), Rat(3)});
  CHECK(act(iota, y) == q({Rat(11), Rat(-2), Rat(-3)}));
  CHECK(act(iota, act(iota, y)) == y);
  PsAutElt t = identity_element(3);
  t.translation = {Int(1), Int(0)};
  CHECK(act(t, y) == q({Rat(-5), Rat(8), Rat(3)}));
  CHECK(f_degree(act(t, y)) == f_degree(y));
  CHECK(act(inverse(t), act(t, y)) == y);
  PsAutElt g = compose(t, iota);
  CHECK(act(g, y) == act(t, act(iota, y)));
  CHECK(is_identity(compose(inverse(g), g)));
}

TEST_CASE("chart coordinates") {
  RelClass y = q({Rat(1), Rat(1), Rat(2)});
  CHECK(to_chart(y) == q({Rat(1, 4), Rat(1, 2)}));
  CHECK(from_chart(Rat(4), to_chart(y)) == y);
  CHECK_THROWS_WITH(to_chart(q({Rat(1), Rat(-2), Rat(0)})), "outside effective movable cone");
}

TEST_CASE("fundamental domain sizes") {
  CHECK(fundamental_domain(2).slice.vertices.size() == 2);
  CHECK(fundamental_domain(3).slice.vertices.size() == 3);
  CHECK(fundamental_domain(5).slice.vertices.size() == 11);
  CHECK(fundamental_domain(7).cone.rays.size() == 42);
  FundDomain one = fundamental_domain(1);
  CHECK(one.cone.rays.size() == 1);
}

TEST_CASE("reduce: the cubic example") {
  Reduction r = reduce(from_chart(Rat(1), q({Rat(3, 4), Rat(3, 4)})));
  CHECK(r.element.involution);
  CHECK(r.element.translation == std::vector<Int>{Int(1), Int(1)});
  CHECK(to_chart(r.reduced) == q({Rat(1, 4), Rat(1, 4)}));
  CHECK(in_fundamental_domain(r.reduced));
}

TEST_CASE("reduce: boundary points stay put and far points come back") {
  RelClass b = from_chart(Rat(2), q({Rat(1, 2), Rat(1, 2)}));
  CHECK(is_identity(reduce(b).element));
  CHECK(in_fundamental_domain(b));
  CHECK_FALSE(in_fundamental_interior(b));
  RelClass far = from_chart(Rat(3), q({Rat(-17, 3), Rat(41, 5)}));
  Reduction r = reduce(far);
  CHECK(in_fundamental_domain(r.reduced));
  CHECK(act(r.element, far) == r.reduced);
  CHECK_THROWS(reduce(q({Rat(-1), Rat(0), Rat(0)})));
}

TEST_CASE("tiling at small radius") {
  for (std::size_t k : {2, 3, 4}) {
    TilingReport t = tiling_check(k, 2);
    CHECK(t.pass());
    CHECK(t.checked > 0);
  }
  CHECK(tiling_check(1, 1).checked == 0);
  CHECK_THROWS_AS(tiling_check(3, 0), Error);
}
