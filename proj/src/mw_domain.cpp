#include "conelab/mw_domain.hpp"

#include <algorithm>

namespace conelab {

PsAutElt identity_element(std::size_t k) {
  PsAutElt g;
  g.translation.assign(k > 0 ? k - 1 : 0, Int(0));
  return g;
}

bool is_identity(const PsAutElt& g) {
  if (g.involution) return false;
  for (const auto& t : g.translation)
    if (t != 0) return false;
  return true;
}

std::string to_string(const PsAutElt& g) {
  std::string s = g.involution ? "involution then translate(" : "translate(";
  for (std::size_t i = 0; i < g.translation.size(); ++i) s += (i ? ", " : "") + g.translation[i].get_str();
  return s + ")";
}

RelClass act(const PsAutElt& g, const RelClass& y) {
  if (y.size() != g.translation.size() + 1) throw Error("act: dimension mismatch");
  const Rat f = f_degree(y);
  RelClass out = y;
  if (g.involution) {
    for (auto& c : out) c = -c;
    out[0] += 2 * f;
  }
  for (std::size_t i = 0; i < g.translation.size(); ++i) {
    if (g.translation[i] == 0) continue;
    Rat shift = f * Rat(g.translation[i]);
    out[i + 1] += shift;
    out[0] -= shift;
  }
  return out;
}

PsAutElt compose(const PsAutElt& outer, const PsAutElt& inner) {
  if (outer.translation.size() != inner.translation.size()) throw Error("compose: dimension mismatch");
  PsAutElt g;
  g.involution = outer.involution != inner.involution;
  g.translation.resize(inner.translation.size());
  for (std::size_t i = 0; i < g.translation.size(); ++i)
    g.translation[i] = (outer.involution ? -inner.translation[i] : inner.translation[i]) + outer.translation[i];
  return g;
}

PsAutElt inverse(const PsAutElt& g) {
  PsAutElt h = g;
  if (!g.involution)
    for (auto& t : h.translation) t = -t;
  return h;
}

std::vector<ZVector> act_matrix(const PsAutElt& g, std::size_t k) {
  std::vector<ZVector> m(k, ZVector(k));
  for (std::size_t col = 0; col < k; ++col) {
    RelClass e(k);
    e[col] = 1;
    RelClass img = act(g, e);
    for (std::size_t row = 0; row < k; ++row) m[row][col] = img[row].get_num();
  }
  return m;
}

QVector to_chart(const RelClass& y) {
  const Rat f = f_degree(y);
  if (sgn(f) <= 0) throw Error("outside effective movable cone");
  QVector a(y.size() - 1);
  for (std::size_t i = 1; i < y.size(); ++i) a[i - 1] = y[i] / f;
  return a;
}

RelClass from_chart(const Rat& f, const QVector& a) {
  RelClass y(a.size() + 1);
  Rat rest = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    y[i + 1] = f * a[i];
    rest -= a[i];
  }
  y[0] = f * rest;
  return y;
}

std::vector<Halfspace> slice_inequalities(std::size_t k) {
  const std::size_t m = k - 1;
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < m; ++i) {
    QVector lo(m), hi(m);
    lo[i] = -1;
    hi[i] = 1;
    hs.push_back({lo, Rat(0)});
    hs.push_back({hi, Rat(1)});
  }
  QVector sum(m, Rat(1));
  hs.push_back({sum, Rat(static_cast<long>(m), 2)});
  hs.back().offset.canonicalize();
  return hs;
}

FundDomain fundamental_domain(std::size_t k) {
  if (k < 1) throw Error("fundamental domain needs k >= 1");
  FundDomain d;
  d.k = k;
  if (k == 1) {
    // The group is trivial and V is the ray of S_1.
    d.cone = cone_from_generators(std::vector<ZVector>{ZVector{Int(1)}}, 1);
    d.slice.vertices = {QVector{}};
    return d;
  }
  d.slice = polytope_vertices(slice_inequalities(k));
  // Homogenize: with f the sum of coordinates, a_i = y_i / f.
  std::vector<ZVector> ineqs;
  for (std::size_t i = 1; i < k; ++i) {
    ZVector lo(k), hi(k, Int(1));
    lo[i] = 1;      // y_i >= 0
    hi[i] = 0;      // f - y_i >= 0
    ineqs.push_back(lo);
    ineqs.push_back(hi);
  }
  ZVector sum(k, Int(static_cast<long>(k - 1)));
  for (std::size_t i = 1; i < k; ++i) sum[i] -= 2;  // (k-1) f - 2 sum y_i >= 0
  ineqs.push_back(sum);
  d.cone = cone_from_inequalities(ineqs, k);
  return d;
}

FundDomain fundamental_domain(const FamilySpec& spec) { return fundamental_domain(static_cast<std::size_t>(spec.k)); }

namespace {

bool chart_in_domain(const QVector& a, bool strict) {
  Rat sum = 0;
  for (const auto& x : a) {
    if (strict ? (x <= 0 || x >= 1) : (x < 0 || x > 1)) return false;
    sum += x;
  }
  Rat half(static_cast<long>(a.size()), 2);
  half.canonicalize();
  return strict ? sum < half : sum <= half;
}

} // namespace

bool in_fundamental_domain(const RelClass& y) {
  if (sgn(f_degree(y)) <= 0) return false;
  return chart_in_domain(to_chart(y), false);
}

bool in_fundamental_interior(const RelClass& y) {
  if (sgn(f_degree(y)) <= 0) return false;
  return chart_in_domain(to_chart(y), true);
}

Reduction reduce(const RelClass& y) {
  if (y.empty()) throw Error("reduce: empty class");
  QVector a = to_chart(y);  // raises outside the effective movable cone
  const std::size_t k = y.size();
  Reduction r{identity_element(k), y};
  if (chart_in_domain(a, false)) return r;
  PsAutElt shift = identity_element(k);
  Rat sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), a[i].get_num_mpz_t(), a[i].get_den_mpz_t());
    shift.translation[i] = -fl;
    a[i] -= fl;
    sum += a[i];
  }
  Rat half(static_cast<long>(a.size()), 2);
  half.canonicalize();
  r.element = shift;
  if (sum > half) {
    PsAutElt flip = identity_element(k);
    flip.involution = true;
    for (auto& t : flip.translation) t = 1;
    r.element = compose(flip, shift);
  }
  r.reduced = act(r.element, y);
  return r;
}

namespace {

// Pulls facet normals back along m: h -> m^T h. With m = M_{g^{-1}} this
// gives the facets of g(V).
std::vector<ZVector> transformed_facets(const std::vector<ZVector>& facets, const std::vector<ZVector>& m) {
  std::vector<ZVector> out;
  const std::size_t k = m.size();
  for (const auto& h : facets) {
    ZVector t(k);
    for (std::size_t col = 0; col < k; ++col)
      for (std::size_t row = 0; row < k; ++row) t[col] += h[row] * m[row][col];
    out.push_back(t);
  }
  return out;
}

std::vector<ZVector> transformed_rays(const std::vector<ZVector>& rays, const std::vector<ZVector>& m) {
  std::vector<ZVector> out;
  const std::size_t k = m.size();
  for (const auto& r : rays) {
    ZVector t(k);
    for (std::size_t row = 0; row < k; ++row)
      for (std::size_t col = 0; col < k; ++col) t[row] += m[row][col] * r[col];
    out.push_back(t);
  }
  return out;
}

// Some facet normal of one cone is <= 0 on every ray of the other.
bool separates(const std::vector<ZVector>& facets, const std::vector<ZVector>& rays) {
  for (const auto& h : facets) {
    bool all = true;
    for (const auto& r : rays)
      if (sgn(dot(h, r)) > 0) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

Cone image_cone(const Cone& v, const std::vector<ZVector>& m, const std::vector<ZVector>& inv) {
  Cone c;
  c.dim = v.dim;
  for (const auto& r : transformed_rays(v.rays, m)) c.rays.push_back(normalize_ray(r));
  for (const auto& h : transformed_facets(v.facets, inv)) c.facets.push_back(normalize_ray(h));
  auto lt = [](const ZVector& x, const ZVector& y) { return lex_less(x, y); };
  std::sort(c.rays.begin(), c.rays.end(), lt);
  std::sort(c.facets.begin(), c.facets.end(), lt);
  return c;
}

} // namespace

TilingReport tiling_check(std::size_t k, int radius) {
  if (radius < 1) throw Error("tiling check needs radius >= 1");
  TilingReport rep;
  rep.k = k;
  rep.radius = radius;
  if (k < 2) return rep;  // trivial group
  const FundDomain dom = fundamental_domain(k);
  const Cone& v = dom.cone;
  std::vector<int> t(k - 1, -radius);
  for (;;) {
    for (int flag = 0; flag < 2; ++flag) {
      PsAutElt g;
      g.involution = flag == 1;
      for (int x : t) g.translation.push_back(Int(x));
      if (is_identity(g)) continue;
      ++rep.checked;
      auto m = act_matrix(g, k);
      auto inv = act_matrix(inverse(g), k);
      // h.(M r) = (M^T h).r, so both directions only need pulled-back facets.
      bool sep = separates(transformed_facets(v.facets, m), v.rays) || separates(transformed_facets(v.facets, inv), v.rays);
      if (sep) {
        ++rep.separated_by_facet;
        continue;
      }
      ++rep.exact_intersections;
      if (!interiors_disjoint(v, image_cone(v, m, inv))) rep.violations.push_back(g);
    }
    std::size_t i = 0;
    while (i < t.size() && t[i] == radius) t[i++] = -radius;
    if (i == t.size()) break;
    ++t[i];
  }
  return rep;
}

} // namespace conelab
