#include "conelab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <random>
#include <set>
#include <thread>

namespace conelab {

std::string to_string(Status s) {
  switch (s) {
  case Status::pass: return "pass";
  case Status::fail: return "fail";
  case Status::delegated: return "delegated";
  }
  return "fail";
}

namespace {

using Rng = std::mt19937_64;

// Portable draw in [lo, hi]; the distribution classes differ between
// standard libraries, plain modulo does not.
long draw(Rng& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

std::uint64_t family_seed(std::uint64_t seed, const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return seed ^ h;
}

Json rat_list(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

CheckResult make(const FamilySpec& s, const std::string& id, const std::string& citation) {
  CheckResult r;
  r.id = id;
  r.family = s.id;
  r.citation = citation;
  return r;
}

void fail(CheckResult& r, const std::string& summary, Json witness) {
  r.status = Status::fail;
  r.summary = summary;
  r.witness = witness.is_null() ? Json::object() : std::move(witness);
}

bool lt(const ZVector& a, const ZVector& b) { return lex_less(a, b); }

CheckResult check_nef_fixture(const FamilySpec& s) {
  CheckResult r = make(s, "nef-fixture", "nef cone generator lists of the del Pezzo blowup families");
  Cone nef = nef_cone(s);
  std::set<ZVector, decltype(&lt)> printed(&lt);
  for (const auto& d : s.nef_fixture) printed.insert(normalize_ray(d));
  std::vector<std::string> missing, outside, redundant;
  for (const auto& ray : nef.rays)
    if (!printed.count(ray)) missing.push_back(format_class(ray, s.divisor_basis()));
  for (const auto& p : printed) {
    if (!contains(nef, p))
      outside.push_back(format_class(p, s.divisor_basis()));
    else if (!std::binary_search(nef.rays.begin(), nef.rays.end(), p, lt))
      redundant.push_back(format_class(p, s.divisor_basis()));
  }
  const std::string count = std::to_string(nef.rays.size());
  if (!nef.pointed() || !missing.empty() || !outside.empty()) {
    fail(r, "nef-fixture: computed cone differs from the printed generator list",
         Json{{"computed_not_printed", missing}, {"printed_not_nef", outside}, {"lineality", nef.lineality.size()}});
    return r;
  }
  r.summary = "nef-fixture: " + count + " rays match the printed generator list";
  if (!redundant.empty()) {
    r.summary += "; " + std::to_string(redundant.size()) + " printed generator(s) are not extreme";
    r.witness = Json{{"redundant_printed", redundant}};
  }
  return r;
}

CheckResult check_decomposition(const FamilySpec& s, const VerifyOptions& o, Rng& rng) {
  CheckResult r = make(s, "decomposition-identity", "nef decomposition of a divisor with sorted point coefficients");
  Cone nef = nef_cone(s);
  const std::size_t h = static_cast<std::size_t>(s.h), pts = static_cast<std::size_t>(s.r);
  std::set<ZVector, decltype(&lt)> checked_rays(&lt);
  for (std::size_t t = 0; t < o.samples; ++t) {
    std::vector<Int> b(pts), a(h);
    for (auto& x : b) x = draw(rng, 0, 9);
    std::sort(b.begin(), b.end(), [](const Int& x, const Int& y) { return x > y; });
    for (auto& x : a) x = b[0] + draw(rng, 0, 9);
    DivisorClass d(s.dim());
    for (std::size_t i = 0; i < h; ++i) d[i] = a[i];
    for (std::size_t i = 0; i < pts; ++i) d[h + i] = -b[i];
    DivisorClass sum(s.dim());
    bool ok = true;
    std::string why;
    for (const auto& term : nef_decomposition(s, a, b)) {
      if (term.coefficient < 0) {
        ok = false;
        why = "negative coefficient";
      }
      ZVector ray = normalize_ray(term.ray);
      if (!checked_rays.count(ray)) {
        if (!contains(nef, ray)) {
          ok = false;
          why = format_class(ray, s.divisor_basis()) + " is not nef";
        }
        checked_rays.insert(ray);
      }
      sum = add(sum, scale(term.coefficient, term.ray));
    }
    if (sum != d) {
      ok = false;
      why = "terms sum to " + format_class(sum, s.divisor_basis());
    }
    if (!ok) {
      fail(r, "decomposition-identity: sample " + std::to_string(t) + " fails",
           Json{{"divisor", format_class(d, s.divisor_basis())}, {"reason", why}});
      return r;
    }
  }
  r.summary = "decomposition-identity: " + std::to_string(o.samples) + " seeded samples decompose exactly";
  return r;
}

CheckResult check_bigness(const FamilySpec& s) {
  CheckResult r = make(s, "bigness", "bigness margin of the pulled-back hyperplane class");
  std::size_t count = 0;
  for (int n = 3; n <= 5; ++n)
    for (int j = 1; j <= s.r; ++j) {
      BignessMargin m = bigness_margin(n, j, s.r);
      const Int expect = Int((1 << n) - 1) * j;
      const bool ok = m.value == expect && m.value == m.total_term - m.untouched_term - m.touched_term &&
                      m.total_term == Int(1 << n) * s.r && m.untouched_term == Int(1 << n) * (s.r - j) &&
                      m.touched_term == j && m.value > 0 && !m.anticanonical;
      ++count;
      if (!ok) {
        fail(r, "bigness: margin mismatch", Json{{"n", n}, {"j", j}, {"value", m.value.get_str()}});
        return r;
      }
    }
  r.summary = "bigness: " + std::to_string(count) + " margins (2^n-1)j > 0 match the expansion term by term";
  return r;
}

CheckResult check_ledger(const FamilySpec& s, const std::vector<MarkedModel>& models) {
  CheckResult r = make(s, "flop-ledger", "fiber-component classes after flops and their conservation");
  if (!s.has_flop_catalog()) {
    r.summary = s.catalog.rule == FlopRule::delegated ? "flop-ledger: flops delegated, no ledger enumerated"
                                                      : "flop-ledger: the initial model is the only model";
    return r;
  }
  LedgerReport lr = ledger_check(s, models);
  Json patterns = Json::array();
  for (const auto& p : lr.patterns)
    patterns.push_back(Json{{"pattern", p.label},
                            {"printed_m", p.printed},
                            {"observed_m", p.observed},
                            {"bound_only", p.bound_only},
                            {"ok", p.ok}});
  Json w{{"models", lr.models},
         {"flops_replayed", lr.flops_replayed},
         {"conservation", lr.conservation},
         {"anticanonically_trivial", lr.anticanonical_trivial},
         {"patterns", patterns},
         {"unprinted", lr.unprinted}};
  if (!lr.messages.empty()) w["messages"] = lr.messages;
  if (!lr.pass) {
    fail(r, "flop-ledger: ledger differs from the printed lists", w);
    return r;
  }
  r.summary = "flop-ledger: " + std::to_string(lr.flops_replayed) + " flops replayed over " + std::to_string(lr.models) +
              " models; conservation holds and printed multipliers match";
  r.witness = w;
  return r;
}

// Two flopped cubics whose points cover every blown-up point.
bool forbidden_cubics(const FamilySpec& s, const MarkedModel& m) {
  const auto& decs = s.catalog.decompositions;
  for (std::size_t a = 0; a < decs.size(); ++a)
    for (std::size_t b = a + 1; b < decs.size(); ++b) {
      if (m.state[a] == 0 || m.state[b] == 0 || decs[a].kind != "cubic" || decs[b].kind != "cubic") continue;
      std::set<std::size_t> all(decs[a].points.begin(), decs[a].points.end());
      all.insert(decs[b].points.begin(), decs[b].points.end());
      if (all.size() == static_cast<std::size_t>(s.r)) return true;
    }
  return false;
}

CheckResult check_sequences(const FamilySpec& s, const std::vector<MarkedModel>& models) {
  CheckResult r = make(s, "flop-sequences", "complete list of flop sequences up to relabeling");
  if (!s.has_flop_catalog()) {
    r.summary = s.catalog.rule == FlopRule::delegated ? "flop-sequences: flops delegated, not enumerated"
                                                      : "flop-sequences: only the empty sequence";
    if (!enumerate_sequences(s, models).empty()) fail(r, "flop-sequences: unexpected sequences", Json::object());
    return r;
  }
  std::vector<FlopSequence> seqs = enumerate_sequences(s, models);
  std::vector<std::string> labels;
  for (const auto& q : seqs) labels.push_back(q.label());
  Json w{{"models", models.size()}, {"canonical_sequences", seqs.size()}};
  if (s.catalog.rule == FlopRule::anchored) w["sequences"] = labels;
  // Every prefix replays through the admissibility rules.
  for (const auto& m : models) {
    MarkedModel cur = initial_model(s);
    try {
      for (const auto& c : m.steps) cur = apply_flop(cur, c);
    } catch (const FlopError& e) {
      w["inadmissible"] = m.label() + ": " + e.what();
      fail(r, "flop-sequences: a prefix is inadmissible", w);
      return r;
    }
    if (forbidden_cubics(s, m)) {
      w["forbidden"] = m.label();
      fail(r, "flop-sequences: forbidden pair of cubics generated", w);
      return r;
    }
  }
  if (!s.sequence_fixture.empty()) {
    std::set<std::string> got(labels.begin(), labels.end()), want(s.sequence_fixture.begin(), s.sequence_fixture.end());
    std::vector<std::string> extra, missing;
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(extra));
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(missing));
    if (!extra.empty() || !missing.empty()) {
      w["not_printed"] = extra;
      w["not_generated"] = missing;
      fail(r, "flop-sequences: canonical sequences differ from the printed list", w);
      return r;
    }
    r.summary = "flop-sequences: " + std::to_string(seqs.size()) + " canonical sequences match the printed list";
  } else {
    r.summary = "flop-sequences: " + std::to_string(seqs.size()) + " canonical sequences over " +
                std::to_string(models.size()) + " models, every prefix admissible";
  }
  r.witness = w;
  return r;
}

CheckResult check_covering(const FamilySpec& s, const std::vector<MarkedModel>& models) {
  CheckResult r = make(s, "covering", "covering of the fundamental domain by relative nef cones");
  CoveringReport c = covering_check(s, models);
  if (c.delegated) {
    r.status = Status::delegated;
    r.summary = "covering: " + c.message;
    return r;
  }
  Json certs = Json::array();
  std::size_t failed_certs = 0;
  for (const auto& ct : c.certificates) {
    if (!ct.ok) ++failed_certs;
    certs.push_back(Json{{"class", ct.cls},
                         {"on_slice", ct.affine},
                         {"min", to_string(ct.min_on_slice)},
                         {"bound", to_string(ct.bound)},
                         {"ok", ct.ok}});
  }
  Json w{{"models", c.models}, {"hyperplanes", c.hyperplanes}, {"cells", c.cells}, {"certificates", certs}};
  if (c.cells <= 100) {
    Json cells = Json::array();
    for (std::size_t i = 0; i < c.cell_model.size(); ++i)
      cells.push_back(Json{{"point", rat_list(c.cell_points[i])}, {"model", models[c.cell_model[i]].label()}});
    w["cell_witnesses"] = cells;
  }
  if (!c.pass) {
    Json unc = Json::array();
    for (const auto& p : c.uncovered) unc.push_back(rat_list(p));
    w["uncovered"] = unc;
    fail(r, "covering: " + c.message, w);
    return r;
  }
  if (!c.certificates.empty()) {
    Rat worst = c.certificates.front().min_on_slice;
    for (const auto& ct : c.certificates) worst = std::min(worst, ct.min_on_slice);
    c.message += "; " + std::to_string(c.certificates.size()) + " certificates hold (least minimum " + to_string(worst) + ")";
  }
  r.summary = "covering: " + c.message;
  r.witness = w;
  return r;
}

CheckResult check_graph(const FamilySpec& s, const std::vector<MarkedModel>& models) {
  CheckResult r = make(s, "chamber-graph", "connectivity of the chamber graph of marked models");
  ChamberGraph g = chamber_graph(s, models);
  Json w{{"vertices", g.vertices}, {"edges", g.edges.size()}, {"within_domain", g.within_domain}};
  std::vector<std::string> problems = g.problems;
  if (s.catalog.rule == FlopRule::anchored) {
    for (const auto& e : g.edges) {
      const MarkedModel &a = models[e.a], &b = models[e.b];
      std::size_t diff = 0, where = 0;
      for (std::size_t d = 0; d < a.state.size(); ++d)
        if (a.state[d] != b.state[d]) {
          ++diff;
          where = d;
        }
      const bool single = diff == 1 && std::abs(a.state[where] - b.state[where]) == 1;
      bool admissible = false;
      if (single) {
        const MarkedModel& lo = a.state[where] == 0 ? a : b;
        const MarkedModel& hi = a.state[where] == 0 ? b : a;
        try {
          admissible = apply_flop(lo, ledger_class(s, where, 0, true)).state == hi.state;
        } catch (const FlopError&) {
        }
      }
      if (!admissible) problems.push_back("edge " + a.label() + " - " + b.label() + " is not one admissible flop");
      if (!interiors_disjoint(relative_nef_cone(a), relative_nef_cone(b)))
        problems.push_back("relative nef cones of " + a.label() + " and " + b.label() + " overlap");
    }
    if (g.edges.size() <= 200) {
      Json edges = Json::array();
      for (const auto& e : g.edges) edges.push_back(Json{models[e.a].label(), models[e.b].label(), e.wall});
      w["edge_list"] = edges;
    }
  }
  if (!problems.empty() || !g.connected) {
    w["connected"] = g.connected;
    w["problems"] = problems;
    fail(r, "chamber-graph: graph check fails", w);
    return r;
  }
  r.summary = "chamber-graph: connected, " + std::to_string(g.vertices) + " vertices and " +
              std::to_string(g.edges.size()) + " shared walls";
  r.witness = w;
  return r;
}

CheckResult check_domain(const FamilySpec& s) {
  CheckResult r = make(s, "fundamental-domain", "fundamental domain for the Mordell-Weil action");
  FundDomain d = fundamental_domain(s);
  std::vector<QVector> charts;
  for (const auto& ray : d.cone.rays) charts.push_back(to_chart(to_q(ray)));
  std::sort(charts.begin(), charts.end(), [](const QVector& x, const QVector& y) { return lex_less(x, y); });
  const bool ok = d.cone.pointed() && d.cone.full_dimensional() && charts == d.slice.vertices;
  Json w{{"rays", d.cone.rays.size()}, {"facets", d.cone.facets.size()}, {"slice_vertices", d.slice.vertices.size()}};
  if (!ok) {
    fail(r, "fundamental-domain: cone and slice disagree", w);
    return r;
  }
  r.summary = "fundamental-domain: V has " + std::to_string(d.cone.rays.size()) + " rays and " +
              std::to_string(d.cone.facets.size()) + " facets, matching V_1";
  r.witness = w;
  return r;
}

PsAutElt random_element(Rng& rng, std::size_t k) {
  PsAutElt g = identity_element(k);
  g.involution = draw(rng, 0, 1) == 1;
  for (auto& t : g.translation) t = draw(rng, -3, 3);
  return g;
}

RelClass random_class(Rng& rng, std::size_t k) {
  RelClass y(k);
  for (auto& x : y) x = Rat(draw(rng, -36, 36), draw(rng, 1, 12));
  for (auto& x : y) x.canonicalize();
  return y;
}

CheckResult check_group(const FamilySpec& s, const VerifyOptions& o, Rng& rng) {
  CheckResult r = make(s, "group-laws", "group laws of translations and the involution");
  const std::size_t k = static_cast<std::size_t>(s.k);
  if (k < 2) {
    r.summary = "group-laws: the group is trivial";
    return r;
  }
  PsAutElt iota = identity_element(k);
  iota.involution = true;
  for (std::size_t t = 0; t < o.samples; ++t) {
    RelClass y = random_class(rng, k);
    PsAutElt g = random_element(rng, k), h = random_element(rng, k);
    PsAutElt tg = g, th = h;
    tg.involution = th.involution = false;
    PsAutElt tsum = tg;
    for (std::size_t i = 0; i < tsum.translation.size(); ++i) tsum.translation[i] += th.translation[i];
    std::string broken;
    if (act(iota, act(iota, y)) != y) broken = "involution is not an involution";
    else if (act(compose(g, h), y) != act(g, act(h, y))) broken = "composition is not the action of the product";
    else if (act(tg, act(th, y)) != act(tsum, y)) broken = "translations are not additive";
    else if (f_degree(act(g, y)) != f_degree(y)) broken = "f-degree not preserved";
    else if (act(inverse(g), act(g, y)) != y) broken = "inverse does not undo the element";
    if (!broken.empty()) {
      fail(r, "group-laws: " + broken,
           Json{{"class", rat_list(y)}, {"g", to_string(g)}, {"h", to_string(h)}});
      return r;
    }
  }
  r.summary = "group-laws: " + std::to_string(o.samples) + " seeded samples satisfy the group laws";
  return r;
}

CheckResult check_reduce(const FamilySpec& s, const VerifyOptions& o, Rng& rng) {
  CheckResult r = make(s, "reduce", "reduction of movable classes into the fundamental domain");
  const std::size_t k = static_cast<std::size_t>(s.k);
  for (std::size_t t = 0; t < o.samples; ++t) {
    QVector a(k - 1);
    for (auto& x : a) {
      x = Rat(draw(rng, -36, 36), draw(rng, 1, 12));
      x.canonicalize();
    }
    RelClass y = from_chart(Rat(draw(rng, 1, 5)), a);
    Reduction red = reduce(y);
    std::string broken;
    if (!in_fundamental_domain(red.reduced)) broken = "result outside V";
    else if (act(red.element, y) != red.reduced) broken = "element does not map the class to the result";
    else if (f_degree(red.reduced) != f_degree(y)) broken = "f-degree changed";
    else {
      Reduction again = reduce(red.reduced);
      if (!is_identity(again.element) || again.reduced != red.reduced) broken = "reduction is not idempotent";
    }
    if (!broken.empty()) {
      fail(r, "reduce: " + broken, Json{{"class", rat_list(y)}, {"element", to_string(red.element)}});
      return r;
    }
  }
  r.summary = "reduce: " + std::to_string(o.samples) + " seeded classes land in V, idempotently";
  return r;
}

CheckResult check_tiling(const FamilySpec& s, const VerifyOptions& o) {
  CheckResult r = make(s, "tiling", "disjointness of translates of the fundamental domain");
  const std::size_t k = static_cast<std::size_t>(s.k);
  const int radius = o.radius > 0 ? o.radius : (k <= 5 ? 2 : 1);
  TilingReport t = tiling_check(k, radius);
  Json w{{"radius", radius},
         {"elements", t.checked},
         {"separated_by_facet", t.separated_by_facet},
         {"exact_intersections", t.exact_intersections}};
  if (!t.pass()) {
    Json v = Json::array();
    for (const auto& g : t.violations) v.push_back(to_string(g));
    w["violations"] = v;
    fail(r, "tiling: translates overlap V", w);
    return r;
  }
  r.summary = k < 2 ? "tiling: the group is trivial"
                    : "tiling: " + std::to_string(t.checked) + " elements within radius " + std::to_string(radius) +
                          " move V off its interior";
  r.witness = w;
  return r;
}

CheckResult check_model_fixtures(const FamilySpec& s, const std::vector<MarkedModel>& models) {
  CheckResult r = make(s, "model-nef-fixtures", "extremal ray lists of the flopped models");
  if (s.model_fixtures.empty()) {
    r.summary = "model-nef-fixtures: no printed lists for this family";
    return r;
  }
  Json w = Json::array();
  std::size_t failed = 0, failed_rays = 0;
  for (const auto& fx : s.model_fixtures) {
    Json e{{"sequence", fx.sequence}};
    std::size_t i = find_model(models, fx.sequence);
    if (i == models.size()) {
      ++failed;
      e["pass"] = false;
      e["messages"] = Json::array({"model not enumerated"});
      w.push_back(e);
      continue;
    }
    FixtureReport fr = fixture_check_model_nef(models[i], fx, models);
    e["pass"] = fr.pass;
    e["rays"] = fx.rays.size();
    e["kept_images"] = fr.kept;
    e["contains_anticanonical"] = fr.contains_anticanonical;
    e["maps_onto_relative_nef"] = fr.maps_onto;
    e["walls_dual_to_ledger"] = fr.walls_dual;
    Json bad = Json::array(), sib = Json::array();
    for (const auto& ray : fr.rays) {
      if (ray.status == "failed") {
        bad.push_back(Json{{"ray", ray.printed}, {"reason", ray.detail}});
        ++failed_rays;
      } else if (ray.status == "sibling") {
        sib.push_back(Json{{"ray", ray.printed}, {"certified_on", ray.detail}});
      }
    }
    if (!bad.empty()) e["failed_rays"] = bad;
    if (!sib.empty()) e["sibling_rays"] = sib;
    if (!fr.messages.empty()) e["messages"] = fr.messages;
    if (!fr.pass) ++failed;
    w.push_back(e);
  }
  if (failed > 0) {
    fail(r,
         "model-nef-fixtures: " + std::to_string(failed) + " of " + std::to_string(s.model_fixtures.size()) +
             " printed lists fail the certificate (" + std::to_string(failed_rays) + " ray(s) negative on a ledger class)",
         Json{{"lists", w}});
    return r;
  }
  r.summary = "model-nef-fixtures: " + std::to_string(s.model_fixtures.size()) + " printed lists certified";
  r.witness = Json{{"lists", w}};
  return r;
}

CheckResult check_appendix(const FamilySpec& s) {
  CheckResult r = make(s, "appendix", "Picard rank two hypersurface in weighted projective space");
  Json w = Json::object();
  bool ok = true;
  for (int n = 3; n <= 5; ++n) {
    AppendixReport a = appendix_check(n);
    w["n=" + std::to_string(n)] = a.messages;
    ok = ok && a.pass;
  }
  if (!ok) {
    fail(r, "appendix: a rank two check fails", w);
    return r;
  }
  r.summary = "appendix: degree 1, -K = O(n-1), two nef rays and Mov = Nef for n = 3, 4, 5";
  r.witness = w;
  return r;
}

template <class F>
void guarded(std::vector<CheckResult>& out, const FamilySpec& s, const std::string& id, F&& f) {
  try {
    out.push_back(f());
  } catch (const std::exception& e) {
    CheckResult r = make(s, id, "internal consistency");
    fail(r, id + ": internal error", Json{{"error", e.what()}});
    out.push_back(r);
  }
}

} // namespace

std::vector<CheckResult> verify_family(const FamilySpec& s, const VerifyOptions& o) {
  std::vector<CheckResult> out;
  Rng rng(family_seed(o.seed, s.id));
  std::vector<MarkedModel> models;
  guarded(out, s, "nef-fixture", [&] { return check_nef_fixture(s); });
  guarded(out, s, "decomposition-identity", [&] { return check_decomposition(s, o, rng); });
  guarded(out, s, "bigness", [&] { return check_bigness(s); });
  guarded(out, s, "flop-enumeration", [&] {
    models = enumerate_models(s);
    CheckResult r = make(s, "flop-enumeration", "marked models reached by admissible flops");
    r.summary = "flop-enumeration: " + std::to_string(models.size()) + " marked models";
    return r;
  });
  guarded(out, s, "flop-ledger", [&] { return check_ledger(s, models); });
  guarded(out, s, "flop-sequences", [&] { return check_sequences(s, models); });
  guarded(out, s, "covering", [&] { return check_covering(s, models); });
  guarded(out, s, "chamber-graph", [&] { return check_graph(s, models); });
  guarded(out, s, "fundamental-domain", [&] { return check_domain(s); });
  guarded(out, s, "group-laws", [&] { return check_group(s, o, rng); });
  guarded(out, s, "reduce", [&] { return check_reduce(s, o, rng); });
  guarded(out, s, "tiling", [&] { return check_tiling(s, o); });
  guarded(out, s, "model-nef-fixtures", [&] { return check_model_fixtures(s, models); });
  if (s.appendix) guarded(out, s, "appendix", [&] { return check_appendix(s); });
  return out;
}

VerificationReport run_all(const std::vector<std::string>& families, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.families = families;
  std::vector<std::vector<CheckResult>> per(families.size());
  auto run_one = [&](std::size_t i) {
    try {
      FamilySpec s = load_family(families[i]);
      return verify_family(s, options);
    } catch (const std::exception& e) {
      CheckResult r;
      r.id = "load";
      r.family = families[i];
      r.citation = "family data";
      r.status = Status::fail;
      r.summary = "load: " + std::string(e.what());
      r.witness = Json{{"error", e.what()}};
      return std::vector<CheckResult>{r};
    }
  };
  if (std::thread::hardware_concurrency() > 1 && families.size() > 1) {
    std::vector<std::future<std::vector<CheckResult>>> jobs;
    for (std::size_t i = 0; i < families.size(); ++i) jobs.push_back(std::async(std::launch::async, run_one, i));
    for (std::size_t i = 0; i < families.size(); ++i) per[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < families.size(); ++i) per[i] = run_one(i);
  }
  for (auto& v : per)
    for (auto& r : v) {
      if (r.status == Status::pass) ++rep.passed;
      if (r.status == Status::fail) ++rep.failed;
      if (r.status == Status::delegated) ++rep.delegated;
      rep.results.push_back(std::move(r));
    }
  rep.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Json report_to_json(const VerificationReport& rep, bool timing) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = "conelab";
  j["version"] = rep.version;
  j["families"] = rep.families;
  Json results = Json::array();
  for (const auto& r : rep.results) {
    Json e;
    e["id"] = r.id;
    e["family"] = r.family;
    e["status"] = to_string(r.status);
    e["summary"] = r.summary;
    e["citation"] = r.citation;
    if (!r.witness.is_null()) e["witness"] = r.witness;
    results.push_back(e);
  }
  j["results"] = results;
  j["summary"] = Json{{"total", rep.results.size()},
                      {"pass", rep.passed},
                      {"fail", rep.failed},
                      {"delegated", rep.delegated}};
  if (timing) j["duration_seconds"] = rep.duration_seconds;
  return j;
}

std::string report_to_string(const VerificationReport& rep, bool timing) {
  return report_to_json(rep, timing).dump(2) + "\n";
}

namespace {

std::vector<ZVector> shuffled_scaled(std::vector<ZVector> v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(draw(rng, 0, static_cast<long>(i - 1)))]);
  for (auto& x : v) x = scale(Int(draw(rng, 1, 3)), x);
  return v;
}

std::vector<QVector> all_generators(const Cone& c) {
  std::vector<QVector> g;
  for (const auto& r : c.rays) g.push_back(to_q(r));
  for (const auto& l : c.lineality) {
    g.push_back(to_q(l));
    g.push_back(to_q(negate(l)));
  }
  return g;
}

std::string kernel_cone_check(const Cone& c, const std::vector<ZVector>& gens, Rng& rng, KernelPropertyReport& rep) {
  const std::size_t dim = c.dim;
  // Duality involution.
  std::vector<QVector> g = all_generators(c);
  if (g.empty()) g.push_back(QVector(dim));
  Cone dual = dual_cone(g, identity_pairing(dim));
  std::vector<QVector> dg = all_generators(dual);
  if (dg.empty()) dg.push_back(QVector(dim));
  if (dual_cone(dg, identity_pairing(dim)) != c) return "dual of the dual differs";
  ++rep.duality;
  // Both descriptions agree.
  for (const auto& r : c.rays) {
    for (const auto& f : c.facets)
      if (sgn(dot(f, r)) < 0) return "ray violates a facet";
    for (const auto& e : c.equations)
      if (sgn(dot(e, r)) != 0) return "ray violates an equation";
  }
  for (const auto& l : c.lineality) {
    for (const auto& f : c.facets)
      if (sgn(dot(f, l)) != 0) return "lineality not on a facet";
  }
  if (cone_from_inequalities(c.facets, dim, c.equations) != c) return "inequality description gives another cone";
  ++rep.consistency;
  // Irredundancy.
  const std::size_t cd = c.cone_dim();
  for (const auto& f : c.facets) {
    std::vector<ZVector> tight = c.lineality;
    for (const auto& r : c.rays)
      if (sgn(dot(f, r)) == 0) tight.push_back(r);
    if (rank(tight) + 1 != cd) return "facet is not tight on a codimension-one face";
  }
  // A ray is extreme when its tight constraints cut out a line modulo the
  // lineality space.
  for (const auto& r : c.rays) {
    std::vector<ZVector> tight = c.equations;
    for (const auto& f : c.facets)
      if (sgn(dot(f, r)) == 0) tight.push_back(f);
    if (rank(tight) + c.lineality.size() + 1 != dim) return "ray is not extreme";
  }
  ++rep.irredundant;
  // Canonical determinism.
  if (cone_from_generators(shuffled_scaled(gens, rng), dim) != c) return "shuffled generators give another cone";
  if (cone_from_inequalities(shuffled_scaled(c.facets, rng), dim, c.equations) != c)
    return "shuffled inequalities give another cone";
  ++rep.deterministic;
  return "";
}

} // namespace

KernelPropertyReport kernel_property_check(std::uint64_t seed, std::size_t count) {
  KernelPropertyReport rep;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t dim = 3 + i % 6;
    const std::size_t n = dim + static_cast<std::size_t>(draw(rng, 0, 6));
    // Mostly pointed cones: a positive first coordinate, with an occasional
    // unrestricted draw to exercise lineality and lower dimension.
    const bool free = i % 10 == 9;
    std::vector<ZVector> gens;
    for (std::size_t j = 0; j < n; ++j) {
      ZVector v(dim);
      for (auto& x : v) x = draw(rng, -4, 4);
      if (!free) v[0] = draw(rng, 1, 4);
      gens.push_back(v);
    }
    if (i % 7 == 3) gens.resize(std::min<std::size_t>(gens.size(), dim - 1));
    ++rep.cones;
    try {
      Cone c = cone_from_generators(gens, dim);
      std::string err = kernel_cone_check(c, gens, rng, rep);
      if (!err.empty()) rep.failures.push_back("cone " + std::to_string(i) + ": " + err);
    } catch (const std::exception& e) {
      rep.failures.push_back("cone " + std::to_string(i) + ": " + e.what());
    }
  }
  return rep;
}

} // namespace conelab
