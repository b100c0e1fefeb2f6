#include "conelab/cone.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace conelab {

namespace {

struct Overflow {};

// Machine-word arithmetic that throws on overflow; the caller then reruns the
// same computation with GMP integers, so results never depend on word size.
struct Word {
  using T = long long;
  static T from(const Int& z) {
    if (!z.fits_slong_p()) throw Overflow{};
    return z.get_si();
  }
  static Int to(T x) { return Int(static_cast<long>(x)); }
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static int sign(T a) { return (a > 0) - (a < 0); }
  static T abs(T a) {
    if (a == LLONG_MIN) throw Overflow{};
    return a < 0 ? -a : a;
  }
  static T gcd(T a, T b) { return std::gcd(a, b); }
  static T div(T a, T b) { return a / b; }
};

struct Big {
  using T = Int;
  static T from(const Int& z) { return z; }
  static Int to(const T& x) { return x; }
  static T mul(const T& a, const T& b) { return a * b; }
  static T add(const T& a, const T& b) { return a + b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static int sign(const T& a) { return ::sgn(a); }
  static T abs(const T& a) { return ::abs(a); }
  static T gcd(const T& a, const T& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static T div(const T& a, const T& b) { return a / b; }
};

using Bits = std::vector<std::uint64_t>;

inline void set_bit(Bits& b, std::size_t i) { b[i >> 6] |= (std::uint64_t{1} << (i & 63)); }

inline std::size_t popcount(const Bits& b) {
  std::size_t c = 0;
  for (auto w : b) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

template <class A>
class DoubleDescription {
  using T = typename A::T;
  using V = std::vector<T>;

public:
  DoubleDescription(const std::vector<ZVector>& ineqs, std::size_t dim) : d_(dim) {
    for (const auto& a : ineqs) {
      if (a.size() != dim) throw Error("inequality dimension mismatch");
      if (is_zero(a)) continue;
      V v(dim);
      for (std::size_t i = 0; i < dim; ++i) v[i] = A::from(a[i]);
      a_.push_back(std::move(v));
    }
  }

  Generators run() {
    const std::size_t m = a_.size();
    words_ = std::max<std::size_t>(1, (m + 63) / 64);
    lin_.assign(d_, V(d_, T(0)));
    for (std::size_t i = 0; i < d_; ++i) lin_[i][i] = T(1);
    rays_.clear();
    tight_.clear();
    Bits processed(words_, 0);
    for (std::size_t i = 0; i < m; ++i) {
      step(i, processed);
      set_bit(processed, i);
    }
    Generators g;
    for (const auto& r : rays_) g.rays.push_back(to_z(r));
    for (const auto& l : lin_) g.lineality.push_back(to_z(l));
    return g;
  }

private:
  T dot(const V& a, const V& b) const {
    T s(0);
    for (std::size_t i = 0; i < d_; ++i)
      if (A::sign(a[i]) != 0 && A::sign(b[i]) != 0) s = A::add(s, A::mul(a[i], b[i]));
    return s;
  }

  void normalize(V& v) const {
    T g(0);
    for (const auto& x : v) g = A::gcd(g, A::abs(x));
    if (A::sign(g) == 0) return;
    if (g == T(1)) return;
    for (auto& x : v) x = A::div(x, g);
  }

  // Returns alpha*u - beta*w.
  V combine(const T& alpha, const V& u, const T& beta, const V& w) const {
    V r(d_);
    for (std::size_t i = 0; i < d_; ++i) r[i] = A::sub(A::mul(alpha, u[i]), A::mul(beta, w[i]));
    return r;
  }

  static ZVector to_z(const V& v) {
    ZVector z(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) z[i] = A::to(v[i]);
    return z;
  }

  void step(std::size_t i, const Bits& processed) {
    const V& a = a_[i];
    // A lineality direction not orthogonal to a becomes a new extreme ray.
    for (std::size_t j = 0; j < lin_.size(); ++j) {
      T ap = dot(a, lin_[j]);
      if (A::sign(ap) == 0) continue;
      V p = lin_[j];
      lin_.erase(lin_.begin() + static_cast<long>(j));
      for (auto& l : lin_) {
        T v = dot(a, l);
        if (A::sign(v) == 0) continue;
        l = combine(ap, l, v, p);
        normalize(l);
      }
      T aabs = A::abs(ap);
      int s = A::sign(ap);
      for (std::size_t r = 0; r < rays_.size(); ++r) {
        T v = dot(a, rays_[r]);
        if (A::sign(v) != 0) {
          rays_[r] = combine(aabs, rays_[r], s > 0 ? v : A::sub(T(0), v), p);
          normalize(rays_[r]);
        }
        set_bit(tight_[r], i);
      }
      if (s < 0)
        for (auto& x : p) x = A::sub(T(0), x);
      normalize(p);
      rays_.push_back(std::move(p));
      tight_.push_back(processed);
      return;
    }

    const std::size_t n = rays_.size();
    std::vector<T> val(n);
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < n; ++r) {
      val[r] = dot(a, rays_[r]);
      int s = A::sign(val[r]);
      if (s > 0)
        pos.push_back(r);
      else if (s < 0)
        neg.push_back(r);
      else
        set_bit(tight_[r], i);
    }
    if (neg.empty()) return;

    const long thr = static_cast<long>(d_) - static_cast<long>(lin_.size()) - 2;
    std::vector<V> nr;
    std::vector<Bits> nt;
    for (std::size_t r = 0; r < n; ++r)
      if (A::sign(val[r]) >= 0) {
        nr.push_back(rays_[r]);
        nt.push_back(tight_[r]);
      }
    Bits common(words_);
    for (auto p : pos) {
      for (auto q : neg) {
        for (std::size_t w = 0; w < words_; ++w) common[w] = tight_[p][w] & tight_[q][w];
        if (static_cast<long>(popcount(common)) < thr) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < n && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool superset = true;
          for (std::size_t w = 0; w < words_; ++w)
            if ((common[w] & ~tight_[r][w]) != 0) {
              superset = false;
              break;
            }
          if (superset) adjacent = false;
        }
        if (!adjacent) continue;
        V c = combine(val[p], rays_[q], val[q], rays_[p]);
        normalize(c);
        Bits t = common;
        set_bit(t, i);
        nr.push_back(std::move(c));
        nt.push_back(std::move(t));
      }
    }
    rays_ = std::move(nr);
    tight_ = std::move(nt);
  }

  std::size_t d_;
  std::size_t words_ = 1;
  std::vector<V> a_;
  std::vector<V> lin_;
  std::vector<V> rays_;
  std::vector<Bits> tight_;
};

ZVector primitive(const QVector& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  ZVector z(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat t = v[i] * l;
    z[i] = t.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : z) x /= g;
  return z;
}

struct Reducer {
  std::vector<QVector> rows;
  std::vector<std::size_t> pivots;

  explicit Reducer(const std::vector<ZVector>& basis) {
    std::vector<QVector> q;
    for (const auto& b : basis) q.push_back(to_q(b));
    rows = rref(q, &pivots);
  }

  QVector apply(const ZVector& v) const {
    QVector x = to_q(v);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rat c = x[pivots[i]];
      if (sgn(c) == 0) continue;
      for (std::size_t j = 0; j < x.size(); ++j) x[j] -= c * rows[i][j];
    }
    return x;
  }
};

std::vector<ZVector> canonical_rays(const std::vector<ZVector>& raw, const std::vector<ZVector>& modulo) {
  Reducer red(modulo);
  std::vector<ZVector> out;
  for (const auto& r : raw) {
    QVector x = red.apply(r);
    if (is_zero(x)) continue;
    out.push_back(primitive(x));
  }
  std::sort(out.begin(), out.end(), [](const ZVector& a, const ZVector& b) { return lex_less(a, b); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ZVector> with_negatives(const std::vector<ZVector>& base, const std::vector<ZVector>& extra) {
  std::vector<ZVector> all = base;
  for (const auto& e : extra) {
    all.push_back(e);
    all.push_back(negate(e));
  }
  return all;
}

} // namespace

Generators dd_generators(const std::vector<ZVector>& inequalities, std::size_t dim) {
  try {
    return DoubleDescription<Word>(inequalities, dim).run();
  } catch (const Overflow&) {
    return DoubleDescription<Big>(inequalities, dim).run();
  }
}

ZVector normalize_ray(const QVector& v) {
  if (is_zero(v)) throw Error("zero ray");
  return primitive(v);
}

ZVector normalize_ray(const ZVector& v) { return normalize_ray(to_q(v)); }

Pairing identity_pairing(std::size_t dim) {
  Pairing m(dim, QVector(dim));
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1;
  return m;
}

Pairing transpose(const Pairing& m) {
  if (m.empty()) return m;
  Pairing t(m[0].size(), QVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

std::vector<ZVector> canonical_basis(const std::vector<ZVector>& spanning, std::size_t dim) {
  std::vector<QVector> q;
  for (const auto& s : spanning) {
    if (s.size() != dim) throw Error("basis vector dimension mismatch");
    q.push_back(to_q(s));
  }
  std::vector<ZVector> out;
  for (const auto& r : rref(q)) out.push_back(primitive(r));
  return out;
}

namespace {

Cone finish_from_generators(const Generators& primal, std::size_t dim) {
  Cone c;
  c.dim = dim;
  c.lineality = canonical_basis(primal.lineality, dim);
  c.rays = canonical_rays(primal.rays, c.lineality);
  Generators dual = dd_generators(with_negatives(c.rays, c.lineality), dim);
  c.equations = canonical_basis(dual.lineality, dim);
  c.facets = canonical_rays(dual.rays, c.equations);
  return c;
}

} // namespace

Cone cone_from_inequalities(const std::vector<ZVector>& ineqs, std::size_t dim,
                            const std::vector<ZVector>& equations) {
  return finish_from_generators(dd_generators(with_negatives(ineqs, equations), dim), dim);
}

Cone cone_from_generators(const std::vector<ZVector>& gens, std::size_t dim) {
  std::vector<ZVector> g;
  for (const auto& v : gens) {
    if (v.size() != dim) throw Error("generator dimension mismatch");
    if (!is_zero(v)) g.push_back(normalize_ray(v));
  }
  Generators dual = dd_generators(g, dim);
  std::vector<ZVector> eqs = canonical_basis(dual.lineality, dim);
  std::vector<ZVector> facets = canonical_rays(dual.rays, eqs);
  Cone c = finish_from_generators(dd_generators(with_negatives(facets, eqs), dim), dim);
  return c;
}

Cone cone_from_generators(const std::vector<QVector>& gens, std::size_t dim) {
  std::vector<ZVector> z;
  for (const auto& v : gens) {
    if (v.size() != dim) throw Error("generator dimension mismatch");
    if (!is_zero(v)) z.push_back(normalize_ray(v));
  }
  return cone_from_generators(z, dim);
}

Cone dual_cone(const std::vector<QVector>& generators, const Pairing& pairing) {
  if (generators.empty()) throw Error("dual_cone needs at least one generator");
  if (pairing.empty()) throw Error("empty pairing");
  const std::size_t rows = pairing.size();
  const std::size_t cols = pairing[0].size();
  std::vector<ZVector> ineqs;
  for (const auto& g : generators) {
    if (g.size() != cols) throw Error("generator dimension does not match the pairing");
    QVector a(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      if (pairing[i].size() != cols) throw Error("ragged pairing matrix");
      a[i] = dot(pairing[i], g);
    }
    if (!is_zero(a)) ineqs.push_back(normalize_ray(a));
  }
  return cone_from_inequalities(ineqs, rows);
}

bool contains(const Cone& c, const QVector& x) {
  if (x.size() != c.dim) throw Error("dimension mismatch in contains");
  for (const auto& e : c.equations)
    if (sgn(dot(e, x)) != 0) return false;
  for (const auto& f : c.facets)
    if (sgn(dot(f, x)) < 0) return false;
  return true;
}

bool contains(const Cone& c, const ZVector& x) { return contains(c, to_q(x)); }

bool contains_interior(const Cone& c, const QVector& x) {
  if (x.size() != c.dim) throw Error("dimension mismatch in contains_interior");
  for (const auto& e : c.equations)
    if (sgn(dot(e, x)) != 0) return false;
  for (const auto& f : c.facets)
    if (sgn(dot(f, x)) <= 0) return false;
  return true;
}

bool cone_contains_cone(const Cone& outer, const Cone& inner) {
  if (outer.dim != inner.dim) throw Error("dimension mismatch in cone_contains_cone");
  for (const auto& r : inner.rays)
    if (!contains(outer, r)) return false;
  for (const auto& l : inner.lineality) {
    for (const auto& f : outer.facets)
      if (sgn(dot(f, l)) != 0) return false;
    for (const auto& e : outer.equations)
      if (sgn(dot(e, l)) != 0) return false;
  }
  return true;
}

Cone intersect(const Cone& a, const Cone& b) {
  if (a.dim != b.dim) throw Error("dimension mismatch in intersect");
  std::vector<ZVector> ineqs = a.facets;
  ineqs.insert(ineqs.end(), b.facets.begin(), b.facets.end());
  std::vector<ZVector> eqs = a.equations;
  eqs.insert(eqs.end(), b.equations.begin(), b.equations.end());
  return cone_from_inequalities(ineqs, a.dim, eqs);
}

namespace {

// True when some facet of a weakly separates b (b lies in the closed
// opposite halfspace), which already forces disjoint interiors.
bool separated_by_facet(const Cone& a, const Cone& b) {
  for (const auto& f : a.facets) {
    bool all_nonpos = true;
    for (const auto& r : b.rays)
      if (sgn(dot(f, r)) > 0) {
        all_nonpos = false;
        break;
      }
    if (!all_nonpos) continue;
    for (const auto& l : b.lineality)
      if (sgn(dot(f, l)) != 0) {
        all_nonpos = false;
        break;
      }
    if (all_nonpos) return true;
  }
  return false;
}

} // namespace

bool interiors_disjoint(const Cone& a, const Cone& b) {
  if (!a.full_dimensional() || !b.full_dimensional())
    throw Error("interiors_disjoint needs full-dimensional cones");
  if (!a.pointed() || !b.pointed()) throw Error("interiors_disjoint needs pointed cones");
  if (separated_by_facet(a, b) || separated_by_facet(b, a)) return true;
  return !intersect(a, b).full_dimensional();
}

std::pair<std::vector<ZVector>, std::vector<ZVector>> split_cone(const std::vector<ZVector>& rays,
                                                                 const std::vector<ZVector>& inequalities,
                                                                 const ZVector& h) {
  const std::size_t n = rays.size();
  const std::size_t m = inequalities.size();
  const std::size_t words = std::max<std::size_t>(1, (m + 63) / 64);
  const std::size_t dim = h.size();
  std::vector<Bits> tight(n, Bits(words, 0));
  std::vector<int> side(n);
  std::vector<Int> val(n);
  std::pair<std::vector<ZVector>, std::vector<ZVector>> out;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < m; ++i)
      if (sgn(dot(inequalities[i], rays[r])) == 0) set_bit(tight[r], i);
    val[r] = dot(h, rays[r]);
    side[r] = sgn(val[r]);
    if (side[r] >= 0) out.first.push_back(rays[r]);
    if (side[r] <= 0) out.second.push_back(rays[r]);
  }
  const long thr = static_cast<long>(dim) - 2;
  Bits common(words);
  for (std::size_t p = 0; p < n; ++p) {
    if (side[p] <= 0) continue;
    for (std::size_t q = 0; q < n; ++q) {
      if (side[q] >= 0) continue;
      for (std::size_t w = 0; w < words; ++w) common[w] = tight[p][w] & tight[q][w];
      if (static_cast<long>(popcount(common)) < thr) continue;
      bool adjacent = true;
      for (std::size_t r = 0; r < n && adjacent; ++r) {
        if (r == p || r == q) continue;
        bool superset = true;
        for (std::size_t w = 0; w < words; ++w)
          if ((common[w] & ~tight[r][w]) != 0) {
            superset = false;
            break;
          }
        if (superset) adjacent = false;
      }
      if (!adjacent) continue;
      ZVector c(dim);
      for (std::size_t i = 0; i < dim; ++i) c[i] = val[p] * rays[q][i] - val[q] * rays[p][i];
      c = normalize_ray(c);
      out.first.push_back(c);
      out.second.push_back(c);
    }
  }
  return out;
}

std::vector<ZVector> rays_on(const Cone& c, const ZVector& normal) {
  std::vector<ZVector> out;
  for (const auto& r : c.rays)
    if (sgn(dot(normal, r)) == 0) out.push_back(r);
  return out;
}

Polytope polytope_vertices(const std::vector<Halfspace>& inequalities) {
  if (inequalities.empty()) throw Error("not a polytope");
  const std::size_t n = inequalities[0].normal.size();
  std::vector<ZVector> homog;
  for (const auto& h : inequalities) {
    if (h.normal.size() != n) throw Error("inequality dimension mismatch");
    QVector v(n + 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = -h.normal[i];
    v[n] = h.offset;
    if (!is_zero(v)) homog.push_back(primitive(v));
  }
  ZVector t(n + 1);
  t[n] = 1;
  homog.push_back(t);
  Generators g = dd_generators(homog, n + 1);
  Polytope p;
  p.inequalities = inequalities;
  bool bounded = g.lineality.empty();
  for (const auto& r : g.rays) {
    if (sgn(r[n]) == 0) {
      bounded = false;
      continue;
    }
    QVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = Rat(r[i], r[n]);
    for (auto& c : x) c.canonicalize();
    p.vertices.push_back(x);
  }
  if (p.vertices.empty()) return p;
  if (!bounded) throw Error("not a polytope");
  std::sort(p.vertices.begin(), p.vertices.end(), [](const QVector& a, const QVector& b) { return lex_less(a, b); });
  p.vertices.erase(std::unique(p.vertices.begin(), p.vertices.end()), p.vertices.end());
  return p;
}

Rat min_over_polytope(const Polytope& p, const QVector& objective) {
  return dot(argmin_over_polytope(p, objective), objective);
}

QVector argmin_over_polytope(const Polytope& p, const QVector& objective) {
  if (p.vertices.empty()) throw Error("empty polytope");
  std::size_t best = 0;
  Rat bv = dot(p.vertices[0], objective);
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    Rat v = dot(p.vertices[i], objective);
    if (v < bv) {
      bv = v;
      best = i;
    }
  }
  return p.vertices[best];
}

} // namespace conelab
