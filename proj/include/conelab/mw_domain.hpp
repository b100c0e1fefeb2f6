// Relative pseudo-automorphisms: Mordell-Weil translations by differences of
// sections and the involution about S_1, their action on section
// coordinates, the fundamental domain V and the reduction into it.
#pragma once

#include "conelab/families.hpp"

namespace conelab {

// Acts as translate(translation) after the involution when the flag is set.
struct PsAutElt {
  bool involution = false;
  std::vector<Int> translation;  // coordinates over S_i - S_1, i = 2..k

  bool operator==(const PsAutElt& o) const = default;
};

PsAutElt identity_element(std::size_t k);
bool is_identity(const PsAutElt& g);
std::string to_string(const PsAutElt& g);

RelClass act(const PsAutElt& g, const RelClass& y);
// outer after inner.
PsAutElt compose(const PsAutElt& outer, const PsAutElt& inner);
PsAutElt inverse(const PsAutElt& g);
// Integer matrix of act(g, .) on section coordinates (rows act on columns).
std::vector<ZVector> act_matrix(const PsAutElt& g, std::size_t k);

// a-chart: y = f * (S_1 + sum_i a_i (S_i - S_1)) with f = f_degree(y) > 0.
QVector to_chart(const RelClass& y);
RelClass from_chart(const Rat& f, const QVector& a);

struct FundDomain {
  std::size_t k = 0;
  Cone cone;      // homogenized V in section coordinates
  Polytope slice; // V_1 in the a-chart
};

FundDomain fundamental_domain(std::size_t k);
FundDomain fundamental_domain(const FamilySpec& spec);

// Slice inequalities normal.a <= offset of V_1 in the a-chart.
std::vector<Halfspace> slice_inequalities(std::size_t k);

bool in_fundamental_domain(const RelClass& y);
bool in_fundamental_interior(const RelClass& y);

struct Reduction {
  PsAutElt element;
  RelClass reduced;
};

// Throws Error("outside effective movable cone") when f_degree(y) <= 0.
Reduction reduce(const RelClass& y);

struct TilingReport {
  std::size_t k = 0;
  int radius = 0;
  std::size_t checked = 0;
  std::size_t separated_by_facet = 0;  // settled by a separating facet
  std::size_t exact_intersections = 0; // settled by an exact intersection
  std::vector<PsAutElt> violations;
  bool pass() const { return violations.empty(); }
};

// Every nonidentity element with translation coordinates in
// [-radius, radius] and either involution flag moves V off its interior.
TilingReport tiling_check(std::size_t k, int radius);

} // namespace conelab
