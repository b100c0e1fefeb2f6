// Divisor and curve classes, the intersection pairing between them, and the
// quotient by the anticanonical direction written in a section basis.
#pragma once

#include "conelab/cone.hpp"

#include <string>
#include <string_view>

namespace conelab {

// Coordinates over a divisor basis (H-classes then E_1..E_r).
using DivisorClass = QVector;
// Coordinates over a curve basis (l-classes then e_1..e_r).
using CurveClass = QVector;
// Coordinates over the section basis S_1..S_k of the relative space.
using RelClass = QVector;

struct IntersectionPairing {
  std::vector<std::string> divisor_basis;
  std::vector<std::string> curve_basis;
  Pairing matrix;  // rows: divisor basis, columns: curve basis
};

// Standard pairing for a blowup: H_a . l_b = delta_ab, E_i . e_j = -delta_ij,
// all mixed terms zero. h is the number of H-classes, r the number of points.
IntersectionPairing blowup_pairing(std::size_t h, std::size_t r, bool indexed_h);

Rat pair(const DivisorClass& d, const CurveClass& c, const IntersectionPairing& p);

// Linear functional on divisor coordinates induced by a curve class.
QVector curve_functional(const CurveClass& c, const IntersectionPairing& p);

// Parses expressions such as "2H-3E1-2E2" or "3l1+3l2-e1-e2" against a basis.
QVector parse_class(std::string_view expr, const std::vector<std::string>& basis);
std::string format_class(const QVector& v, const std::vector<std::string>& basis);
std::string format_class(const ZVector& v, const std::vector<std::string>& basis);

// Section basis of the relative space together with the anticanonical
// direction spanning the kernel of the projection.
class RelativeFrame {
public:
  RelativeFrame() = default;
  RelativeFrame(std::vector<DivisorClass> sections, DivisorClass anticanonical);

  std::size_t k() const { return sections_.size(); }
  const std::vector<DivisorClass>& sections() const { return sections_; }
  const DivisorClass& anticanonical() const { return anticanonical_; }

  // Unique r with lift(r) congruent to d modulo the anticanonical line.
  RelClass project(const DivisorClass& d) const;
  // Anticanonical coefficient t in d = lift(project(d)) + t * anticanonical.
  Rat kernel_part(const DivisorClass& d) const;
  DivisorClass lift(const RelClass& r) const;

  // Functional y -> pair(lift(y), c) on relative coordinates. Well defined on
  // classes orthogonal to the anticanonical divisor.
  QVector functional(const CurveClass& c, const IntersectionPairing& p) const;

private:
  std::vector<DivisorClass> sections_;
  DivisorClass anticanonical_;
  std::vector<QVector> inverse_;  // coordinates of basis vectors in the frame
};

Rat f_degree(const RelClass& r);

} // namespace conelab
