#include "conelab/flops.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <set>

namespace conelab {

namespace {

const FamilySpec& fam(const MarkedModel& m) {
  if (m.family == nullptr) throw Error("marked model without a family");
  return *m.family;
}

bool lt(const ZVector& a, const ZVector& b) { return lex_less(a, b); }

// Sign-normalized primitive vector, so a hyperplane has one representative.
ZVector hyperplane_key(const ZVector& v) {
  ZVector n = normalize_ray(v);
  for (const auto& x : n) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0) n = negate(n);
    break;
  }
  return n;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::size_t find_decomposition(const FamilySpec& s, const std::vector<std::size_t>& points) {
  for (std::size_t d = 0; d < s.catalog.decompositions.size(); ++d)
    if (s.catalog.decompositions[d].points == points) return d;
  return s.catalog.decompositions.size();
}

std::string point_label(std::size_t p) { return std::to_string(p + 1); }

void check_anchored(const MarkedModel& m, std::size_t d, const LedgerEntry& e) {
  const FamilySpec& s = fam(m);
  const Decomposition& dec = s.catalog.decompositions[d];
  if (!dec.floppable) throw FlopError(dec.kind + " classes are never flopped (" + dec.label + ")");
  if (!e.lower || m.state[d] != 0)
    throw FlopError("only the reference side of decomposition " + dec.label + " can be flopped, and only once");
  std::size_t line = find_decomposition(s, {0});
  if (d != line && line < m.state.size() && m.state[line] == 0)
    throw FlopError("line through p1 must be flopped first");
  if (dec.points.size() >= 3) {
    std::vector<std::string> missing;
    for (auto p : dec.points) {
      if (p == 0) continue;
      std::size_t conic = find_decomposition(s, {0, p});
      if (conic >= m.state.size() || m.state[conic] == 0) missing.push_back("1" + point_label(p));
    }
    if (!missing.empty())
      throw FlopError(dec.kind + " " + dec.label + " needs the conics " + join(missing, " and ") + " flopped first");
    for (std::size_t o = 0; o < m.state.size(); ++o) {
      const Decomposition& other = s.catalog.decompositions[o];
      if (o == d || m.state[o] == 0 || other.points.size() < 3) continue;
      std::set<std::size_t> all(dec.points.begin(), dec.points.end());
      all.insert(other.points.begin(), other.points.end());
      if (all.size() == static_cast<std::size_t>(s.r))
        throw FlopError("two cubics whose union passes through all points cannot both be flopped (" + other.label +
                        ", " + dec.label + ")");
    }
  }
}

} // namespace

CurveClass transform_class(const CurveClass& g, const CurveClass& c, const Int& k) {
  if (g.size() != c.size()) throw Error("transform_class: dimension mismatch");
  return add(g, scale(Rat(k), c));
}

CurveClass ledger_class(const FamilySpec& spec, std::size_t d, int state, bool lower) {
  const CurveClass& c = spec.catalog.decompositions.at(d).reference;
  if (lower) return sub(c, scale(Rat(state), spec.fiber));
  return sub(scale(Rat(state + 1), spec.fiber), c);
}

std::vector<LedgerEntry> MarkedModel::ledger() const {
  const FamilySpec& s = fam(*this);
  std::vector<LedgerEntry> out;
  for (std::size_t d = 0; d < state.size(); ++d) {
    out.push_back({d, true, ledger_class(s, d, state[d], true), 1});
    out.push_back({d, false, ledger_class(s, d, state[d], false), 1});
  }
  return out;
}

std::string MarkedModel::label() const {
  const FamilySpec& s = fam(*this);
  std::vector<std::string> parts;
  for (std::size_t d = 0; d < state.size(); ++d) {
    if (state[d] == 0) continue;
    const std::string& l = s.catalog.decompositions[d].label;
    if (s.catalog.rule == FlopRule::anchored)
      parts.push_back(l);
    else
      parts.push_back(l + ":" + std::to_string(state[d]));
  }
  if (parts.empty()) return "X";
  return "(" + join(parts, ",") + ")";
}

std::string FlopSequence::label() const { return "(" + join(steps, ",") + ")"; }

MarkedModel initial_model(const FamilySpec& spec) {
  MarkedModel m;
  m.family = &spec;
  m.state.assign(spec.catalog.decompositions.size(), 0);
  return m;
}

MarkedModel apply_flop(const MarkedModel& m, const CurveClass& c) {
  const FamilySpec& s = fam(m);
  if (s.catalog.rule == FlopRule::none) throw FlopError("family " + s.id + " needs no flops");
  if (s.catalog.rule == FlopRule::delegated)
    throw FlopError("flops of family " + s.id + " are delegated and not enumerated");
  std::vector<LedgerEntry> ledger = m.ledger();
  auto it = std::find_if(ledger.begin(), ledger.end(), [&](const LedgerEntry& e) { return e.cls == c; });
  if (it == ledger.end())
    throw FlopError("class " + format_class(c, s.curve_basis()) + " is not a fiber component in the flop catalog");
  const LedgerEntry e = *it;
  const std::size_t d = e.decomposition;
  if (s.catalog.rule == FlopRule::anchored) check_anchored(m, d, e);
  const Decomposition& dec = s.catalog.decompositions[d];
  const LedgerEntry partner = *std::find_if(ledger.begin(), ledger.end(), [&](const LedgerEntry& x) {
    return x.decomposition == d && x.lower != e.lower;
  });
  // The flopped curve changes sign and its partner gains k copies of it.
  CurveClass flopped = scale(Rat(-1), e.cls);
  CurveClass moved = transform_class(partner.cls, e.cls, Int(dec.multiplicity));
  MarkedModel out = m;
  out.state[d] += e.lower ? -1 : 1;
  const bool flopped_side_lower = !e.lower;
  if (flopped != ledger_class(s, d, out.state[d], flopped_side_lower) ||
      moved != ledger_class(s, d, out.state[d], !flopped_side_lower))
    throw Error("ledger transform disagrees with the closed form for " + dec.label);
  if (add(flopped, moved) != s.fiber) throw Error("conservation violated after flopping " + dec.label);
  out.steps.push_back(c);
  out.step_labels.push_back(s.catalog.rule == FlopRule::anchored ? dec.label : format_class(c, s.curve_basis()));
  return out;
}

MarkedModel apply_flop(const MarkedModel& m, const std::string& label) {
  const FamilySpec& s = fam(m);
  for (std::size_t d = 0; d < s.catalog.decompositions.size(); ++d)
    if (s.catalog.decompositions[d].label == label) return apply_flop(m, ledger_class(s, d, m.state[d], true));
  return apply_flop(m, parse_class(label, s.curve_basis()));
}

ZVector rel_functional(const FamilySpec& spec, const CurveClass& c) {
  QVector f = spec.frame.functional(c, spec.pairing);
  ZVector z(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].get_den() != 1) throw Error("section pairing is not integral");
    z[i] = f[i].get_num();
  }
  return z;
}

namespace {

// Ledger functionals of any state from the reference functionals, using
// y.F = sum of the section coordinates. Order matches MarkedModel::ledger().
class LedgerFunctionals {
public:
  explicit LedgerFunctionals(const FamilySpec& s) {
    for (const auto& dec : s.catalog.decompositions) phi_.push_back(rel_functional(s, dec.reference));
  }
  const ZVector& reference(std::size_t d) const { return phi_[d]; }
  ZVector side(std::size_t d, int state, bool lower) const {
    ZVector v = phi_[d];
    for (auto& x : v) x = lower ? Int(x - state) : Int(Int(state + 1) - x);
    return v;
  }
  std::vector<ZVector> of(const std::vector<int>& state) const {
    std::vector<ZVector> out;
    for (std::size_t d = 0; d < state.size(); ++d) {
      out.push_back(side(d, state[d], true));
      out.push_back(side(d, state[d], false));
    }
    return out;
  }

private:
  std::vector<ZVector> phi_;
};

} // namespace

Cone relative_nef_cone(const MarkedModel& m) {
  const FamilySpec& s = fam(m);
  std::vector<ZVector> ineqs;
  for (const auto& e : m.ledger()) {
    ZVector f = rel_functional(s, e.cls);
    if (!is_zero(f)) ineqs.push_back(f);
  }
  return cone_from_inequalities(ineqs, static_cast<std::size_t>(s.k));
}

std::vector<std::size_t> decomposition_permutation(const FamilySpec& spec, const std::vector<std::size_t>& perm) {
  const auto& decs = spec.catalog.decompositions;
  std::vector<std::size_t> out(decs.size());
  for (std::size_t d = 0; d < decs.size(); ++d) {
    CurveClass img = relabel(spec, decs[d].reference, perm);
    std::size_t hit = decs.size();
    for (std::size_t e = 0; e < decs.size(); ++e)
      if (decs[e].reference == img) hit = e;
    if (hit == decs.size()) throw ConfigError(spec.id + ": relabeling does not preserve the flop catalog");
    out[d] = hit;
  }
  return out;
}

namespace {

// Relabeling orbit keys; the canonical member has the least key. Anchored
// models compare their flopped index sets (catalog order is label order),
// others compare state vectors.
std::vector<int> orbit_key(const MarkedModel& m, const std::vector<std::size_t>& dperm) {
  const FamilySpec& s = fam(m);
  std::vector<int> img(m.state.size());
  for (std::size_t d = 0; d < m.state.size(); ++d) img[dperm[d]] = m.state[d];
  if (s.catalog.rule != FlopRule::anchored) return img;
  std::vector<int> key;
  for (std::size_t d = 0; d < img.size(); ++d)
    if (img[d] != 0) key.push_back(static_cast<int>(d));
  return key;
}

struct Relabels {
  std::vector<std::vector<std::size_t>> dperms;
  std::vector<std::size_t> identity;
  explicit Relabels(const FamilySpec& s) : identity(s.catalog.decompositions.size()) {
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    for (const auto& p : relabelings(s)) dperms.push_back(decomposition_permutation(s, p));
  }
};

std::vector<MarkedModel> enumerate_anchored(const FamilySpec& s) {
  std::vector<MarkedModel> out;
  std::vector<std::pair<MarkedModel, std::size_t>> stack = {{initial_model(s), 0}};
  while (!stack.empty()) {
    auto [m, next] = std::move(stack.back());
    stack.pop_back();
    out.push_back(m);
    // Extend in catalog order only; admissible sets stay admissible when
    // flopped in that order, so each set is produced once.
    std::vector<std::pair<MarkedModel, std::size_t>> children;
    for (std::size_t d = next; d < s.catalog.decompositions.size(); ++d) {
      if (!s.catalog.decompositions[d].floppable) continue;
      try {
        children.push_back({apply_flop(m, ledger_class(s, d, 0, true)), d + 1});
      } catch (const FlopError&) {
      }
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
  }
  return out;
}

// Chamber of a state vector cut down to V. Slab inequalities that hold on
// all of V are left out.
struct Restricted {
  std::vector<ZVector> ineqs;
  std::vector<std::pair<std::size_t, bool>> source;  // decomposition, lower side; V facets excluded
  std::vector<ZVector> rays;
};

struct BreadthContext {
  const FamilySpec& s;
  std::size_t k;
  FundDomain dom;
  std::vector<ZVector> phi;
  std::vector<Rat> lo, hi;

  explicit BreadthContext(const FamilySpec& spec)
      : s(spec), k(static_cast<std::size_t>(spec.k)), dom(fundamental_domain(spec)) {
    for (const auto& dec : s.catalog.decompositions) {
      ZVector f = rel_functional(s, dec.reference);
      Rat mn, mx;
      bool first = true;
      for (const auto& r : dom.cone.rays) {
        Rat v(dot(f, r), f_of(r));
        v.canonicalize();
        if (first || v < mn) mn = v;
        if (first || v > mx) mx = v;
        first = false;
      }
      phi.push_back(f);
      lo.push_back(mn);
      hi.push_back(mx);
    }
  }

  static Int f_of(const ZVector& r) {
    Int t = 0;
    for (const auto& x : r) t += x;
    return t;
  }

  Restricted chamber(const std::vector<int>& state) const {
    Restricted c;
    c.ineqs = dom.cone.facets;
    for (std::size_t d = 0; d < state.size(); ++d) {
      const int st = state[d];
      if (lo[d] < st) {
        ZVector v = phi[d];
        for (std::size_t i = 0; i < k; ++i) v[i] -= st;
        c.ineqs.push_back(v);
        c.source.push_back({d, true});
      }
      if (hi[d] > st + 1) {
        ZVector v(k);
        for (std::size_t i = 0; i < k; ++i) v[i] = Int(st + 1) - phi[d][i];
        c.ineqs.push_back(v);
        c.source.push_back({d, false});
      }
    }
    c.rays = dd_generators(c.ineqs, k).rays;
    return c;
  }
};

std::vector<MarkedModel> enumerate_breadth_first(const FamilySpec& s) {
  BreadthContext ctx(s);
  const std::size_t nv = ctx.dom.cone.facets.size();
  std::vector<MarkedModel> out;
  std::set<std::vector<int>> seen;
  std::deque<MarkedModel> queue;
  MarkedModel x = initial_model(s);
  seen.insert(x.state);
  queue.push_back(x);
  while (!queue.empty()) {
    MarkedModel m = std::move(queue.front());
    queue.pop_front();
    Restricted ch = ctx.chamber(m.state);
    if (rank(ch.rays) != ctx.k) continue;  // meets V only along its boundary
    out.push_back(m);
    std::map<ZVector, std::vector<std::size_t>> walls;
    for (std::size_t i = nv; i < ch.ineqs.size(); ++i) walls[normalize_ray(ch.ineqs[i])].push_back(i - nv);
    for (const auto& [normal, entries] : walls) {
      std::vector<ZVector> on;
      for (const auto& r : ch.rays)
        if (sgn(dot(normal, r)) == 0) on.push_back(r);
      if (on.size() + 1 < ctx.k || rank(on) + 1 != ctx.k) continue;
      MarkedModel n = m;
      for (auto idx : entries) {
        auto [d, lower] = ch.source[idx];
        n = apply_flop(n, ledger_class(s, d, n.state[d], lower));
      }
      if (seen.insert(n.state).second) queue.push_back(std::move(n));
    }
  }
  return out;
}

} // namespace

std::vector<MarkedModel> enumerate_models(const FamilySpec& spec) {
  switch (spec.catalog.rule) {
  case FlopRule::anchored: return enumerate_anchored(spec);
  case FlopRule::breadth_first: return enumerate_breadth_first(spec);
  default: return {initial_model(spec)};
  }
}

bool is_canonical(const MarkedModel& m) {
  const FamilySpec& s = fam(m);
  Relabels rel(s);
  std::vector<int> own = orbit_key(m, rel.identity);
  for (const auto& dp : rel.dperms)
    if (orbit_key(m, dp) < own) return false;
  return true;
}

std::vector<FlopSequence> enumerate_sequences(const FamilySpec& spec, const std::vector<MarkedModel>& models) {
  std::vector<FlopSequence> out;
  if (!spec.has_flop_catalog()) return out;
  Relabels rel(spec);
  for (const auto& m : models) {
    if (m.steps.empty()) continue;
    std::vector<int> own = orbit_key(m, rel.identity);
    bool canonical = true;
    for (const auto& dp : rel.dperms)
      if (orbit_key(m, dp) < own) {
        canonical = false;
        break;
      }
    if (!canonical) continue;
    FlopSequence seq;
    seq.canonical = true;
    if (spec.catalog.rule == FlopRule::anchored) {
      for (std::size_t d = 0; d < m.state.size(); ++d)
        if (m.state[d] != 0) seq.steps.push_back(spec.catalog.decompositions[d].label);
    } else {
      seq.steps = m.step_labels;
    }
    out.push_back(std::move(seq));
  }
  std::stable_sort(out.begin(), out.end(), [](const FlopSequence& a, const FlopSequence& b) {
    return a.steps.size() < b.steps.size();
  });
  return out;
}

std::vector<FlopSequence> enumerate_sequences(const FamilySpec& spec) {
  return enumerate_sequences(spec, enumerate_models(spec));
}

std::size_t find_model(const std::vector<MarkedModel>& models, const std::string& label) {
  for (std::size_t i = 0; i < models.size(); ++i)
    if (models[i].label() == label) return i;
  return models.size();
}

namespace {

std::string affine_form(const FamilySpec& s, const ZVector& phi) {
  // y = S_1 + sum a_i (S_i - S_1) gives y.C = phi_1 + sum (phi_i - phi_1) a_i.
  std::string out = phi[0].get_str();
  for (std::size_t i = 1; i < phi.size(); ++i) {
    Int c = phi[i] - phi[0];
    if (c == 0) continue;
    out += c > 0 ? "+" : "-";
    Int a = abs(c);
    if (a != 1) out += a.get_str();
    out += "a" + std::to_string(i + 1);
  }
  (void)s;
  return out;
}

Rat min_on_slice(const FundDomain& dom, const ZVector& phi) {
  Rat best;
  bool first = true;
  for (const auto& a : dom.slice.vertices) {
    Rat v = dot(phi, from_chart(Rat(1), a));
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

Certificate certificate(const FamilySpec& s, const FundDomain& dom, const CurveClass& c, const Rat& bound) {
  Certificate cert;
  ZVector phi = rel_functional(s, c);
  cert.cls = format_class(c, s.curve_basis());
  cert.affine = affine_form(s, phi);
  cert.min_on_slice = min_on_slice(dom, phi);
  cert.bound = bound;
  cert.ok = cert.min_on_slice >= bound;
  return cert;
}

bool satisfies(const MarkedModel& m, const std::vector<ZVector>& funcs, const ZVector& x) {
  (void)m;
  for (const auto& f : funcs)
    if (sgn(dot(f, x)) < 0) return false;
  return true;
}

} // namespace

CoveringReport covering_check(const FamilySpec& spec, const std::vector<MarkedModel>& models) {
  CoveringReport rep;
  rep.models = models.size();
  if (spec.catalog.rule == FlopRule::delegated) {
    rep.delegated = true;
    rep.pass = true;
    rep.message = "flops of this family are not enumerated explicitly; covering delegated (out of scope)";
    return rep;
  }
  const std::size_t k = static_cast<std::size_t>(spec.k);
  FundDomain dom = fundamental_domain(spec);
  std::vector<std::vector<ZVector>> funcs(models.size());
  std::map<std::vector<int>, std::size_t> by_state;
  LedgerFunctionals lf(spec);
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (auto& f : lf.of(models[i].state))
      if (!is_zero(f)) funcs[i].push_back(std::move(f));
    by_state[models[i].state] = i;
  }
  // Hyperplanes of every ledger class that cut V through its interior.
  std::set<ZVector> planes;
  for (const auto& fl : funcs)
    for (const auto& f : fl) {
      bool pos = false, neg = false;
      for (const auto& r : dom.cone.rays) {
        int sg = sgn(dot(f, r));
        pos = pos || sg > 0;
        neg = neg || sg < 0;
      }
      if (pos && neg) planes.insert(hyperplane_key(f));
    }
  rep.hyperplanes = planes.size();
  struct Cell {
    std::vector<ZVector> rays, ineqs;
  };
  std::vector<Cell> cells = {{dom.cone.rays, dom.cone.facets}};
  for (const auto& h : planes) {
    std::vector<Cell> next;
    for (auto& c : cells) {
      bool pos = false, neg = false;
      for (const auto& r : c.rays) {
        int sg = sgn(dot(h, r));
        pos = pos || sg > 0;
        neg = neg || sg < 0;
      }
      if (!(pos && neg)) {
        next.push_back(std::move(c));
        continue;
      }
      auto [a, b] = split_cone(c.rays, c.ineqs, h);
      Cell ca{std::move(a), c.ineqs}, cb{std::move(b), c.ineqs};
      ca.ineqs.push_back(h);
      cb.ineqs.push_back(negate(h));
      next.push_back(std::move(ca));
      next.push_back(std::move(cb));
    }
    cells = std::move(next);
  }
  rep.cells = cells.size();
  const auto& decs = spec.catalog.decompositions;
  std::vector<ZVector> phi;
  for (std::size_t d = 0; d < decs.size(); ++d) phi.push_back(lf.reference(d));
  for (const auto& c : cells) {
    ZVector x(k);
    for (const auto& r : c.rays) x = add(x, r);
    Int f = 0;
    for (const auto& v : x) f += v;
    std::vector<int> st(decs.size());
    for (std::size_t d = 0; d < decs.size(); ++d) st[d] = static_cast<int>(floor_div(dot(phi[d], x), f).get_si());
    std::size_t hit = models.size();
    auto it = by_state.find(st);
    if (it != by_state.end() && satisfies(models[it->second], funcs[it->second], x)) hit = it->second;
    for (std::size_t i = 0; i < models.size() && hit == models.size(); ++i)
      if (satisfies(models[i], funcs[i], x)) hit = i;
    QVector a = to_chart(to_q(x));
    if (hit == models.size()) {
      rep.uncovered.push_back(a);
      continue;
    }
    rep.cell_model.push_back(hit);
    rep.cell_points.push_back(a);
  }
  // Printed certificates.
  if (spec.catalog.rule == FlopRule::anchored) {
    std::set<std::size_t> flopped;
    for (const auto& m : models)
      for (std::size_t d = 0; d < m.state.size(); ++d)
        if (m.state[d] != 0) flopped.insert(d);
    for (auto d : flopped)
      rep.certificates.push_back(certificate(spec, dom, ledger_class(spec, d, -1, true), Rat(0)));
  } else if (spec.catalog.rule == FlopRule::breadth_first) {
    for (std::size_t d = 0; d < decs.size(); ++d) {
      rep.certificates.push_back(certificate(spec, dom, decs[d].reference, Rat(-4)));
      rep.certificates.push_back(certificate(spec, dom, sub(spec.fiber, decs[d].reference), Rat(-4)));
    }
    // Untracked cubic components 2l1 + l2 - e1 - ej - ek and their partners.
    for (std::size_t j = 2; j <= static_cast<std::size_t>(spec.r); ++j)
      for (std::size_t kk = j + 1; kk <= static_cast<std::size_t>(spec.r); ++kk) {
        CurveClass c = parse_class("2l1+l2-e1-e" + std::to_string(j) + "-e" + std::to_string(kk), spec.curve_basis());
        rep.certificates.push_back(certificate(spec, dom, c, Rat(-4)));
        rep.certificates.push_back(certificate(spec, dom, sub(spec.fiber, c), Rat(-4)));
      }
  }
  bool certs = std::all_of(rep.certificates.begin(), rep.certificates.end(), [](const Certificate& c) { return c.ok; });
  rep.pass = rep.uncovered.empty() && certs;
  rep.message = std::to_string(rep.cells) + " cells from " + std::to_string(rep.hyperplanes) + " hyperplanes covered by " +
                std::to_string(rep.models) + " models";
  if (!rep.uncovered.empty()) rep.message = std::to_string(rep.uncovered.size()) + " cells uncovered";
  if (!certs) rep.message += "; a printed certificate fails";
  return rep;
}

CoveringReport covering_check(const FamilySpec& spec) { return covering_check(spec, enumerate_models(spec)); }

namespace {

// Chambers cut down to V: walls are the ledger facets of each restricted
// chamber, shared when the facet rays inside the neighbor span a hyperplane.
void domain_edges(const FamilySpec& spec, const std::vector<MarkedModel>& models,
                  const std::map<std::vector<int>, std::size_t>& by_state, ChamberGraph& g) {
  BreadthContext ctx(spec);
  LedgerFunctionals lf(spec);
  const std::size_t nv = ctx.dom.cone.facets.size();
  for (std::size_t i = 0; i < models.size(); ++i) {
    const MarkedModel& m = models[i];
    Restricted ch = ctx.chamber(m.state);
    if (rank(ch.rays) != ctx.k) {
      g.problems.push_back("chamber of " + m.label() + " meets V in lower dimension");
      continue;
    }
    std::map<ZVector, std::vector<std::size_t>> walls;
    for (std::size_t j = nv; j < ch.ineqs.size(); ++j) walls[normalize_ray(ch.ineqs[j])].push_back(j - nv);
    for (const auto& [normal, entries] : walls) {
      std::vector<ZVector> on;
      for (const auto& r : ch.rays)
        if (sgn(dot(normal, r)) == 0) on.push_back(r);
      if (rank(on) + 1 != ctx.k) continue;
      std::vector<int> st = m.state;
      for (auto idx : entries) st[ch.source[idx].first] += ch.source[idx].second ? -1 : 1;
      auto it = by_state.find(st);
      if (it == by_state.end()) {
        g.problems.push_back("wall of " + m.label() + " leads to an unenumerated model");
        continue;
      }
      if (it->second < i) continue;
      std::vector<ZVector> nfuncs = lf.of(models[it->second].state);
      std::vector<ZVector> shared;
      for (const auto& r : on)
        if (std::all_of(nfuncs.begin(), nfuncs.end(), [&](const ZVector& f) { return sgn(dot(f, r)) >= 0; }))
          shared.push_back(r);
      auto [d, lower] = ch.source[entries.front()];
      std::string wall = format_class(ledger_class(spec, d, m.state[d], lower), spec.curve_basis());
      if (rank(shared) + 1 != ctx.k) {
        g.problems.push_back("wall " + wall + " of " + m.label() + " is not shared");
        continue;
      }
      g.edges.push_back({i, it->second, wall});
    }
  }
}

} // namespace

ChamberGraph chamber_graph(const FamilySpec& spec, const std::vector<MarkedModel>& models) {
  ChamberGraph g;
  g.vertices = models.size();
  const std::size_t k = static_cast<std::size_t>(spec.k);
  std::map<std::vector<int>, std::size_t> by_state;
  for (std::size_t i = 0; i < models.size(); ++i) by_state[models[i].state] = i;
  g.within_domain = spec.catalog.rule == FlopRule::breadth_first;
  if (g.within_domain) domain_edges(spec, models, by_state, g);
  LedgerFunctionals lf(spec);
  for (std::size_t i = 0; i < models.size() && !g.within_domain; ++i) {
    const MarkedModel& m = models[i];
    Cone cone = relative_nef_cone(m);
    if (!cone.full_dimensional()) {
      g.problems.push_back("relative nef cone of " + m.label() + " is not full-dimensional");
      continue;
    }
    std::vector<LedgerEntry> ledger = m.ledger();
    std::vector<ZVector> own = lf.of(m.state);
    for (const auto& h : cone.facets) {
      std::vector<int> st = m.state;
      std::string wall;
      for (std::size_t j = 0; j < ledger.size(); ++j) {
        const LedgerEntry& e = ledger[j];
        const ZVector& f = own[j];
        if (is_zero(f) || normalize_ray(f) != h) continue;
        st[e.decomposition] += e.lower ? -1 : 1;
        if (wall.empty()) wall = format_class(e.cls, spec.curve_basis());
      }
      if (wall.empty()) {
        g.problems.push_back("facet of " + m.label() + " is not dual to a ledger class");
        continue;
      }
      auto it = by_state.find(st);
      if (it == by_state.end() || it->second < i) continue;
      const MarkedModel& n = models[it->second];
      // Exact intersection dimension: the facet rays lying in the neighbor
      // span a hyperplane.
      std::vector<ZVector> shared;
      std::vector<ZVector> nfuncs = lf.of(n.state);
      for (const auto& r : rays_on(cone, h))
        if (std::all_of(nfuncs.begin(), nfuncs.end(), [&](const ZVector& f) { return sgn(dot(f, r)) >= 0; }))
          shared.push_back(r);
      if (rank(shared) + 1 != k) {
        g.problems.push_back("wall " + wall + " between " + m.label() + " and " + n.label() + " is not shared");
        continue;
      }
      g.edges.push_back({i, it->second, wall});
    }
  }
  std::vector<std::vector<std::size_t>> adj(models.size());
  for (const auto& e : g.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<bool> seen(models.size(), false);
  std::deque<std::size_t> q;
  if (!models.empty()) {
    seen[0] = true;
    q.push_back(0);
  }
  std::size_t count = 0;
  while (!q.empty()) {
    std::size_t v = q.front();
    q.pop_front();
    ++count;
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        q.push_back(w);
      }
  }
  g.connected = count == models.size();
  return g;
}

ChamberGraph chamber_graph(const FamilySpec& spec) { return chamber_graph(spec, enumerate_models(spec)); }

namespace {

// Curve generators that are not fiber components and are untouched by
// flops of vertical classes.
std::vector<CurveClass> ambient_generators(const FamilySpec& s) {
  std::vector<CurveClass> out;
  for (const auto& c : s.curve_generators)
    if (pair(s.anticanonical, c, s.pairing) != 0) out.push_back(c);
  return out;
}

// First curve class with negative pairing, or empty when the ray is nef.
std::optional<std::pair<CurveClass, Rat>> negative_on(const FamilySpec& s, const MarkedModel& m, const DivisorClass& d) {
  std::optional<std::pair<CurveClass, Rat>> worst;
  auto consider = [&](const CurveClass& c) {
    Rat v = pair(d, c, s.pairing);
    if (v < 0 && (!worst || v < worst->second)) worst = std::make_pair(c, v);
  };
  for (const auto& e : m.ledger()) consider(e.cls);
  for (const auto& c : ambient_generators(s)) consider(c);
  return worst;
}

CurveClass curve_of_functional(const FamilySpec& s, const ZVector& normal) {
  return solve(s.pairing.matrix, to_q(normal));
}

} // namespace

FixtureReport fixture_check_model_nef(const MarkedModel& m, const ModelFixture& fx,
                                      const std::vector<MarkedModel>& models) {
  const FamilySpec& s = fam(m);
  FixtureReport rep;
  rep.sequence = fx.sequence;
  const auto perms = relabelings(s);
  std::vector<std::size_t> siblings;
  for (const auto& sib : fx.siblings) {
    std::size_t i = find_model(models, sib);
    if (i < models.size() && models[i].label() != m.label()) siblings.push_back(i);
  }
  std::vector<ZVector> kept;
  bool all_ok = true;
  for (std::size_t r = 0; r < fx.rays.size(); ++r) {
    FixtureRay fr;
    fr.printed = fx.printed[r];
    std::vector<DivisorClass> images;
    for (const auto& p : perms) {
      DivisorClass img = relabel(s, fx.rays[r], p);
      if (std::find(images.begin(), images.end(), img) == images.end()) images.push_back(img);
    }
    bool on_model = false;
    for (const auto& img : images)
      if (!negative_on(s, m, img)) {
        on_model = true;
        ZVector z = normalize_ray(img);
        if (std::find(kept.begin(), kept.end(), z) == kept.end()) kept.push_back(z);
      }
    if (on_model) {
      fr.status = "model";
    } else {
      for (auto sib : siblings) {
        for (const auto& img : images)
          if (!negative_on(s, models[sib], img)) {
            fr.status = "sibling";
            fr.detail = models[sib].label() + " as " + format_class(img, s.divisor_basis());
            break;
          }
        if (!fr.status.empty()) break;
      }
    }
    if (fr.status.empty()) {
      fr.status = "failed";
      auto neg = negative_on(s, m, fx.rays[r]);
      fr.detail = "pairs " + to_string(neg->second) + " with " + format_class(neg->first, s.curve_basis());
      all_ok = false;
    }
    rep.rays.push_back(fr);
  }
  rep.kept = kept.size();
  if (kept.empty()) {
    rep.messages.push_back("no printed ray is nef on " + m.label());
    rep.pass = false;
    return rep;
  }
  std::sort(kept.begin(), kept.end(), lt);
  Cone abs_cone = cone_from_generators(kept, s.dim());
  rep.contains_anticanonical = contains(abs_cone, s.anticanonical);
  std::vector<QVector> projected;
  for (const auto& z : kept) {
    RelClass p = s.frame.project(to_q(z));
    if (!is_zero(p)) projected.push_back(p);
  }
  Cone rel = relative_nef_cone(m);
  rep.maps_onto = !projected.empty() && cone_from_generators(projected, static_cast<std::size_t>(s.k)) == rel;
  if (!rep.maps_onto) rep.messages.push_back("projected fixture cone differs from the relative nef cone");
  // Vertical walls whose relative image meets the movable interior.
  rep.walls_dual = true;
  std::vector<ZVector> ledger_keys;
  for (const auto& e : m.ledger()) ledger_keys.push_back(normalize_ray(e.cls));
  for (const auto& h : abs_cone.facets) {
    if (sgn(dot(h, s.anticanonical)) != 0) continue;
    bool meets = false;
    for (const auto& r : rays_on(abs_cone, h))
      if (sgn(pair(to_q(r), s.fiber, s.pairing)) > 0) meets = true;
    if (!meets) continue;
    CurveClass c = curve_of_functional(s, h);
    if (std::find(ledger_keys.begin(), ledger_keys.end(), normalize_ray(c)) == ledger_keys.end()) {
      rep.walls_dual = false;
      rep.messages.push_back("wall dual to " + format_class(normalize_ray(c), s.curve_basis()) +
                             " is not a ledger class");
    }
  }
  if (!rep.contains_anticanonical) rep.messages.push_back("fixture cone misses the anticanonical class");
  rep.pass = all_ok && rep.contains_anticanonical && rep.maps_onto && rep.walls_dual;
  return rep;
}

LedgerReport ledger_check(const FamilySpec& spec, const std::vector<MarkedModel>& models) {
  LedgerReport rep;
  rep.models = models.size();
  rep.conservation = true;
  rep.anticanonical_trivial = true;
  const auto& decs = spec.catalog.decompositions;
  std::vector<std::set<int>> lower_m(decs.size()), upper_m(decs.size());
  // Replayed prefixes, so shared prefixes of different models are flopped once.
  std::map<std::vector<std::string>, MarkedModel> replayed;
  for (const auto& m : models) {
    MarkedModel r = initial_model(spec);
    std::vector<std::string> prefix;
    for (std::size_t step = 0; step < m.steps.size(); ++step) {
      prefix.push_back(m.step_labels[step]);
      auto hit = replayed.find(prefix);
      if (hit != replayed.end()) {
        r = hit->second;
        continue;
      }
      r = apply_flop(r, m.steps[step]);
      replayed.emplace(prefix, r);
      ++rep.flops_replayed;
      std::vector<LedgerEntry> l = r.ledger();
      for (std::size_t d = 0; d < decs.size(); ++d) {
        if (add(l[2 * d].cls, l[2 * d + 1].cls) != spec.fiber) rep.conservation = false;
        for (int side = 0; side < 2; ++side)
          if (pair(spec.anticanonical, l[2 * d + side].cls, spec.pairing) != 0) rep.anticanonical_trivial = false;
      }
    }
    if (r.state != m.state) rep.messages.push_back("replay of " + m.label() + " reaches a different state");
    for (std::size_t d = 0; d < decs.size(); ++d) {
      if (m.state[d] < 0) lower_m[d].insert(-m.state[d]);
      if (m.state[d] > 0) upper_m[d].insert(m.state[d]);
    }
  }
  std::set<std::size_t> covered;
  bool patterns_ok = true;
  for (const auto& p : spec.catalog.printed_patterns) {
    PatternCheck pc;
    pc.label = "mF+(" + p.label + ")";
    pc.printed = p.m_values;
    pc.bound_only = p.bound_only;
    std::set<int> obs;
    for (const auto& lab : p.covers)
      for (std::size_t d = 0; d < decs.size(); ++d)
        if (decs[d].label == lab) {
          covered.insert(d);
          obs.insert(lower_m[d].begin(), lower_m[d].end());
        }
    pc.observed.assign(obs.begin(), obs.end());
    std::set<int> printed(p.m_values.begin(), p.m_values.end());
    if (p.bound_only)
      pc.ok = std::includes(printed.begin(), printed.end(), obs.begin(), obs.end());
    else
      pc.ok = obs == printed;
    patterns_ok = patterns_ok && pc.ok;
    rep.patterns.push_back(pc);
  }
  auto fmt_set = [](const std::set<int>& v) {
    std::string s = "{";
    bool first = true;
    for (int x : v) {
      s += (first ? "" : ",") + std::to_string(x);
      first = false;
    }
    return s + "}";
  };
  for (std::size_t d = 0; d < decs.size(); ++d) {
    if (!lower_m[d].empty() && !covered.count(d))
      rep.unprinted.push_back("mF+(" + format_class(decs[d].reference, spec.curve_basis()) + ") m in " + fmt_set(lower_m[d]));
    if (!upper_m[d].empty())
      rep.unprinted.push_back("mF+(" + format_class(sub(spec.fiber, decs[d].reference), spec.curve_basis()) + ") m in " +
                              fmt_set(upper_m[d]));
  }
  rep.pass = rep.conservation && rep.anticanonical_trivial && patterns_ok && rep.messages.empty();
  return rep;
}

} // namespace conelab
