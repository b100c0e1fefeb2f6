// Numerical models of the eight families: lattices, curve generators, fiber
// class, sections, flop catalogs and the printed fixture lists.
#pragma once

#include "conelab/lattice.hpp"

namespace conelab {

enum class FlopRule {
  none,           // the initial model is the only one needed
  anchored,       // flops of line/conic/cubic classes through the first point
  breadth_first,  // repeated flops of any tracked component, bounded by V_1
  delegated       // flops exist but are not enumerated explicitly
};

std::string to_string(FlopRule r);
FlopRule flop_rule_from_string(const std::string& s);

// A two-component reducible fiber C + (F - C). The reference side C is the
// side a flop sequence starts from.
struct Decomposition {
  std::string label;  // "1", "12", "l1-e3", ...
  std::string kind;   // line, conic, cubic, quartic
  CurveClass reference;
  bool floppable = false;   // reference side may be flopped (anchored rule)
  int multiplicity = 2;     // intersection number used when flopping
  std::vector<std::size_t> points;  // blown-up points met by the reference side
};

// A printed ledger pattern mF + C with its printed multiplier range.
struct LedgerPattern {
  std::string label;
  CurveClass base;          // representative C
  std::vector<int> m_values;
  bool bound_only = false;  // printed range is an upper bound, not exact
  std::vector<std::string> covers;  // labels of the decompositions it describes
};

struct FlopCatalog {
  FlopRule rule = FlopRule::none;
  std::vector<Decomposition> decompositions;
  std::vector<LedgerPattern> printed_patterns;
};

struct ModelFixture {
  std::string sequence;               // "(1,12,13,123)"
  std::vector<std::string> siblings;  // sequences sharing the printed list
  std::vector<std::string> printed;   // printed rays, index ranges expanded
  std::vector<DivisorClass> rays;
};

struct FamilySpec {
  std::string id;
  std::string name;
  int n = 3;  // dimension of Z
  int r = 0;  // blown-up points
  int k = 0;  // dimension of the relative space
  int h = 1;  // number of H-classes
  IntersectionPairing pairing;
  std::vector<CurveClass> curve_generators;
  CurveClass fiber;
  DivisorClass anticanonical;  // -(1/(n-1)) K_X
  std::vector<DivisorClass> sections;
  std::vector<DivisorClass> nef_fixture;
  FlopCatalog catalog;
  std::vector<std::string> sequence_fixture;
  std::vector<ModelFixture> model_fixtures;
  // Point permutations (0-based) allowed as relabelings; each list is a block
  // permuted freely, points in no block are fixed.
  std::vector<std::vector<std::size_t>> symmetry_blocks;
  int degree = 0;  // H^n on Z, equal to r for the blowup families
  bool appendix = false;
  std::vector<std::string> notes;

  RelativeFrame frame;  // built by validate()

  const std::vector<std::string>& divisor_basis() const { return pairing.divisor_basis; }
  const std::vector<std::string>& curve_basis() const { return pairing.curve_basis; }
  std::size_t dim() const { return pairing.divisor_basis.size(); }
  bool has_flop_catalog() const {
    return catalog.rule == FlopRule::anchored || catalog.rule == FlopRule::breadth_first;
  }
};

const std::vector<std::string>& family_ids();

// Embedded family by id, or an external one found on CONELAB_FAMILY_PATH.
FamilySpec load_family(const std::string& id);
FamilySpec embedded_family(const std::string& id);

// Asserts the invariants and builds the relative frame. Throws ConfigError
// naming the violated invariant.
void validate(FamilySpec& spec);

Cone nef_cone(const FamilySpec& spec);

struct BignessMargin {
  Int value;             // (2^n - 1) j
  Int total_term;        // 2^n r
  Int untouched_term;    // 2^n (r - j)
  Int touched_term;      // j
  bool anticanonical = false;  // j = 0
};
BignessMargin bigness_margin(int n, int j, int r);

// Expresses D = sum_a a_a H_a - sum_i b_i E_i (b sorted, a_a >= b_1) as a
// nonnegative combination of nef generators.
struct DecompositionTerm {
  Rat coefficient;
  DivisorClass ray;
};
std::vector<DecompositionTerm> nef_decomposition(const FamilySpec& spec, const std::vector<Int>& a,
                                                 const std::vector<Int>& b);

struct AppendixReport {
  bool pass = false;
  int picard_rank = 0;
  Rat degree;          // H^n by weighted Bezout
  int anticanonical_degree = 0;  // -K_Z = O(m)
  std::size_t nef_rays = 0;
  std::size_t curve_rays = 0;
  bool movable_equals_nef = false;
  std::vector<std::string> messages;
};
AppendixReport appendix_check(int n = 3);

// Permutations of point indices generated by the symmetry blocks.
std::vector<std::vector<std::size_t>> relabelings(const FamilySpec& spec);
// Applies a point permutation to divisor or curve coordinates.
QVector relabel(const FamilySpec& spec, const QVector& v, const std::vector<std::size_t>& perm);

// Family data on disk (JSON text) and back.
std::string family_to_json(const FamilySpec& spec);
FamilySpec family_from_json(const std::string& text);

} // namespace conelab
