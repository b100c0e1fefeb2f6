// Exact polyhedral cones: double description, duality, containment, faces,
// and vertex enumeration of bounded polyhedra.
#pragma once

#include "conelab/rational.hpp"

#include <optional>
#include <utility>

namespace conelab {

// Generators of {x : a.x >= 0 for every a}: extreme rays of the pointed part
// plus a basis of the lineality space. Not canonicalized.
struct Generators {
  std::vector<ZVector> rays;
  std::vector<ZVector> lineality;
};

Generators dd_generators(const std::vector<ZVector>& inequalities, std::size_t dim);

// A polyhedral cone carrying both representations. Rays and facets are
// primitive and sorted; lineality and equations are canonical bases
// (reduced echelon rows, made primitive). Rays are reduced modulo the
// lineality space and facets modulo the equation space.
struct Cone {
  std::size_t dim = 0;
  std::vector<ZVector> rays;
  std::vector<ZVector> lineality;
  std::vector<ZVector> facets;     // inward normals: f.x >= 0 on the cone
  std::vector<ZVector> equations;  // e.x = 0 on the cone

  bool pointed() const { return lineality.empty(); }
  bool full_dimensional() const { return equations.empty(); }
  std::size_t cone_dim() const { return dim - equations.size(); }
  bool operator==(const Cone& o) const = default;
};

ZVector normalize_ray(const QVector& v);
ZVector normalize_ray(const ZVector& v);

// Bilinear form between two spaces: rows index the first space, columns the
// second. pair(x, y) = x^T M y.
using Pairing = std::vector<QVector>;
Pairing identity_pairing(std::size_t dim);
Pairing transpose(const Pairing& m);

Cone cone_from_generators(const std::vector<ZVector>& gens, std::size_t dim);
Cone cone_from_generators(const std::vector<QVector>& gens, std::size_t dim);
Cone cone_from_inequalities(const std::vector<ZVector>& ineqs, std::size_t dim,
                            const std::vector<ZVector>& equations = {});

// {D : pair(D, c) >= 0 for every generator c}; D lives in the row space of
// the pairing, generators in its column space.
Cone dual_cone(const std::vector<QVector>& generators, const Pairing& pairing);

bool contains(const Cone& c, const QVector& x);
bool contains(const Cone& c, const ZVector& x);
// x in the relative interior of c (strict on every facet).
bool contains_interior(const Cone& c, const QVector& x);
bool cone_contains_cone(const Cone& outer, const Cone& inner);
Cone intersect(const Cone& a, const Cone& b);
bool interiors_disjoint(const Cone& a, const Cone& b);

// Extreme rays of C & {h.x >= 0} and of C & {h.x <= 0}, where C is a pointed
// cone given by its extreme rays and any valid inequality description.
std::pair<std::vector<ZVector>, std::vector<ZVector>> split_cone(const std::vector<ZVector>& rays,
                                                                 const std::vector<ZVector>& inequalities,
                                                                 const ZVector& h);

// Rays of c lying on the hyperplane normal.x = 0.
std::vector<ZVector> rays_on(const Cone& c, const ZVector& normal);

struct Halfspace {
  QVector normal;  // normal.x <= offset
  Rat offset;
};

struct Polytope {
  std::vector<Halfspace> inequalities;
  std::vector<QVector> vertices;  // lexicographically sorted
};

Polytope polytope_vertices(const std::vector<Halfspace>& inequalities);
Rat min_over_polytope(const Polytope& p, const QVector& objective);
// Minimizing vertex (first in canonical order among ties).
QVector argmin_over_polytope(const Polytope& p, const QVector& objective);

// Canonical basis of a subspace: reduced echelon rows made primitive.
std::vector<ZVector> canonical_basis(const std::vector<ZVector>& spanning, std::size_t dim);

} // namespace conelab
