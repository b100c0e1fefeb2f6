// Randomized and exhaustive invariants across modules.
#include "conelab/verify.hpp"

#include "doctest.h"
#include "oracle.hpp"

#include <random>

using namespace conelab;

TEST_CASE("conservation and K-triviality after every flop") {
  for (const char* id : {"gr25", "quadrics"}) {
    FamilySpec s = embedded_family(id);
    for (const auto& m : enumerate_models(s)) {
      MarkedModel cur = initial_model(s);
      for (const auto& step : m.step_labels) {
        cur = apply_flop(cur, step);
        auto l = cur.ledger();
        for (std::size_t i = 0; i + 1 < l.size(); i += 2) CHECK(add(l[i].cls, l[i + 1].cls) == s.fiber);
        for (const auto& e : l) CHECK(pair(s.anticanonical, e.cls, s.pairing) == 0);
      }
      CHECK(cur.state == m.state);
    }
  }
}

TEST_CASE("monotone consistency of nef rays with the ledger") {
  for (const char* id : {"gr25", "quadrics"}) {
    FamilySpec s = embedded_family(id);
    Cone nef = nef_cone(s);
    for (const auto& m : enumerate_models(s)) {
      std::vector<CurveClass> flopped;
      for (std::size_t d = 0; d < m.state.size(); ++d)
        if (m.state[d] != 0) flopped.push_back(s.catalog.decompositions[d].reference);
      for (const auto& ray : nef.rays) {
        QVector D = to_q(ray);
        bool avoids = std::all_of(flopped.begin(), flopped.end(),
                                  [&](const CurveClass& c) { return pair(D, c, s.pairing) == 0; });
        if (!avoids) continue;
        for (const auto& e : m.ledger()) CHECK(pair(D, e.cls, s.pairing) >= 0);
      }
    }
  }
}

TEST_CASE("canonical sequences are closed under prefixes") {
  FamilySpec s = embedded_family("gr25");
  for (const auto& seq : enumerate_sequences(s)) {
    MarkedModel m = initial_model(s);
    for (const auto& st : seq.steps) CHECK_NOTHROW(m = apply_flop(m, st));
    CHECK(is_canonical(m));
  }
}

TEST_CASE("adjacent chambers have disjoint interiors") {
  FamilySpec s = embedded_family("gr25");
  auto models = enumerate_models(s);
  ChamberGraph g = chamber_graph(s, models);
  for (const auto& e : g.edges) {
    Cone a = relative_nef_cone(models[e.a]), b = relative_nef_cone(models[e.b]);
    CHECK(interiors_disjoint(a, b));
    CHECK(intersect(a, b).cone_dim() + 1 == static_cast<std::size_t>(s.k));
  }
}

TEST_CASE("group action matches its matrix and reduce is idempotent") {
  std::mt19937_64 rng(3);
  for (std::size_t k : {2, 3, 5, 7}) {
    for (int t = 0; t < 200; ++t) {
      PsAutElt g = identity_element(k);
      g.involution = rng() % 2;
      for (auto& x : g.translation) x = static_cast<long>(rng() % 9) - 4;
      RelClass y(k);
      for (auto& x : y) x = Rat(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 7));
      for (auto& x : y) x.canonicalize();
      auto m = act_matrix(g, k);
      RelClass my(k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) my[r] += Rat(m[r][c]) * y[c];
      CHECK(my == act(g, y));
      if (f_degree(y) > 0) {
        Reduction red = reduce(y);
        CHECK(in_fundamental_domain(red.reduced));
        CHECK(reduce(red.reduced).reduced == red.reduced);
      }
    }
  }
}

TEST_CASE("random cones: dual of the dual and oracle facets") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 80; ++t) {
    const std::size_t dim = 3 + t % 4;
    auto gens = oracle::random_pointed(rng, dim, dim + t % 6, 3);
    Cone c = cone_from_generators(gens, dim);
    std::vector<QVector> q;
    for (const auto& r : c.rays) q.push_back(to_q(r));
    Cone d = dual_cone(q, identity_pairing(dim));
    std::vector<QVector> dq;
    for (const auto& r : d.rays) dq.push_back(to_q(r));
    for (const auto& l : d.lineality) {
      dq.push_back(to_q(l));
      dq.push_back(to_q(negate(l)));
    }
    CHECK(dual_cone(dq, identity_pairing(dim)) == c);
    if (c.full_dimensional()) CHECK(c.facets == oracle::supporting_normals(gens, dim));
  }
}

TEST_CASE("kernel property suite is seed-deterministic") {
  KernelPropertyReport a = kernel_property_check(42, 20), b = kernel_property_check(42, 20);
  CHECK(a.failures == b.failures);
  CHECK(a.pass());
}
