#include "conelab/cone.hpp"

#include "doctest.h"
#include "oracle.hpp"

using namespace conelab;

namespace {

ZVector zv(std::initializer_list<long> xs) {
  ZVector v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

} // namespace

TEST_CASE("orthant is self-dual") {
  std::vector<ZVector> e{zv({1, 0, 0}), zv({0, 1, 0}), zv({0, 0, 1})};
  Cone c = cone_from_generators(e, 3);
  CHECK(c.rays.size() == 3);
  CHECK(c.facets.size() == 3);
  CHECK(c.pointed());
  CHECK(c.full_dimensional());
  CHECK(dual_cone({to_q(e[0]), to_q(e[1]), to_q(e[2])}, identity_pairing(3)) == c);
}

TEST_CASE("redundant generators are dropped and rays are primitive") {
  Cone c = cone_from_generators(std::vector<ZVector>{zv({2, 0}), zv({0, 3}), zv({1, 1}), zv({4, 4})}, 2);
  CHECK(c.rays == std::vector<ZVector>{zv({0, 1}), zv({1, 0})});
}

TEST_CASE("square-based cone has four facets") {
  std::vector<ZVector> g{zv({1, 1, 1}), zv({1, 1, -1}), zv({1, -1, 1}), zv({1, -1, -1})};
  Cone c = cone_from_generators(g, 3);
  CHECK(c.rays.size() == 4);
  CHECK(c.facets == oracle::supporting_normals(g, 3));
  CHECK(contains(c, zv({1, 0, 0})));
  CHECK(contains_interior(c, QVector{Rat(1), Rat(0), Rat(0)}));
  CHECK_FALSE(contains_interior(c, to_q(g[0])));
  CHECK_FALSE(contains(c, zv({1, 2, 0})));
  CHECK(rays_on(c, c.facets[0]).size() == 2);
}

TEST_CASE("lineality and lower-dimensional cones") {
  Cone half = cone_from_generators(std::vector<ZVector>{zv({1, 0}), zv({-1, 0}), zv({0, 1})}, 2);
  CHECK(half.lineality == std::vector<ZVector>{zv({1, 0})});
  CHECK(half.rays == std::vector<ZVector>{zv({0, 1})});
  CHECK(half.facets == std::vector<ZVector>{zv({0, 1})});
  Cone flat = cone_from_generators(std::vector<ZVector>{zv({1, 0, 0}), zv({0, 1, 0})}, 3);
  CHECK(flat.equations == std::vector<ZVector>{zv({0, 0, 1})});
  CHECK(flat.cone_dim() == 2);
  CHECK(flat.facets.size() == 2);
}

TEST_CASE("inequality and generator descriptions agree") {
  Cone a = cone_from_inequalities({zv({1, 0, 0}), zv({0, 1, 0}), zv({1, 1, -1})}, 3);
  Cone b = cone_from_generators(a.rays, 3);
  CHECK(a == b);
  CHECK(cone_contains_cone(a, b));
}

TEST_CASE("intersections and interior disjointness") {
  Cone left = cone_from_inequalities({zv({1, 0}), zv({0, 1}), zv({1, -1})}, 2);
  Cone right = cone_from_inequalities({zv({1, 0}), zv({0, 1}), zv({-1, 1})}, 2);
  CHECK(interiors_disjoint(left, right));
  Cone both = intersect(left, right);
  CHECK(both.rays == std::vector<ZVector>{zv({1, 1})});
  Cone all = cone_from_inequalities({zv({1, 0}), zv({0, 1})}, 2);
  CHECK_FALSE(interiors_disjoint(left, all));
}

TEST_CASE("split_cone agrees with recomputing both halves") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    const std::size_t dim = 3 + t % 3;
    Cone c = cone_from_generators(oracle::random_pointed(rng, dim, dim + 3, 3), dim);
    if (!c.full_dimensional()) continue;
    ZVector h(dim);
    for (auto& x : h) x = static_cast<long>(rng() % 7) - 3;
    auto [pos, neg] = split_cone(c.rays, c.facets, h);
    auto ineq_p = c.facets, ineq_n = c.facets;
    ineq_p.push_back(h);
    ineq_n.push_back(negate(h));
    CHECK(cone_from_generators(pos, dim) == cone_from_inequalities(ineq_p, dim));
    CHECK(cone_from_generators(neg, dim) == cone_from_inequalities(ineq_n, dim));
  }
}

TEST_CASE("facets match the brute-force oracle on random cones") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    const std::size_t dim = 3 + t % 3;
    auto gens = oracle::random_pointed(rng, dim, dim + 1 + t % 5, 4);
    Cone c = cone_from_generators(gens, dim);
    if (!c.full_dimensional()) continue;
    CHECK(c.facets == oracle::supporting_normals(gens, dim));
    CHECK(c.rays == oracle::supporting_normals(c.facets, dim));
  }
}

TEST_CASE("large coordinates fall back to exact arithmetic") {
  std::mt19937_64 rng(13);
  auto gens = oracle::random_pointed(rng, 4, 8, 3);
  std::vector<ZVector> big;
  Int huge("123456789012345678901");
  for (auto g : gens) {
    for (auto& x : g) x *= huge;
    g[1] += 1;
    big.push_back(g);
  }
  Cone c = cone_from_generators(big, 4);
  CHECK(c.facets == oracle::supporting_normals(big, 4));
}

TEST_CASE("bounded polytopes: vertices and minima") {
  std::vector<Halfspace> sq{{{Rat(1), Rat(0)}, Rat(1)},
                            {{Rat(-1), Rat(0)}, Rat(0)},
                            {{Rat(0), Rat(1)}, Rat(1)},
                            {{Rat(0), Rat(-1)}, Rat(0)},
                            {{Rat(1), Rat(1)}, Rat(3, 2)}};
  Polytope p = polytope_vertices(sq);
  CHECK(p.vertices.size() == 5);
  CHECK(min_over_polytope(p, {Rat(-1), Rat(-1)}) == Rat(-3, 2));
  CHECK(argmin_over_polytope(p, {Rat(1), Rat(0)}) == QVector{Rat(0), Rat(0)});
}

TEST_CASE("canonical subspace bases") {
  auto b = canonical_basis({zv({2, 4, 0}), zv({1, 2, 0}), zv({0, 0, 5})}, 3);
  CHECK(b == std::vector<ZVector>{zv({1, 2, 0}), zv({0, 0, 1})});
}
