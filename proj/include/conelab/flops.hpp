// Flop bookkeeping on fiber-component classes: marked models, the ledger of
// tracked components, admissible flop sequences, relative nef cones, the
// covering of V by them, the chamber graph, and certificates for printed
// nef cone lists of flopped models.
#pragma once

#include "conelab/mw_domain.hpp"

#include <map>

namespace conelab {

class FlopError : public Error {
public:
  using Error::Error;
};

// One side of a tracked decomposition F = C + (F - C). With state s the
// sides are C - sF (lower) and (s+1)F - C (upper).
struct LedgerEntry {
  std::size_t decomposition = 0;
  bool lower = true;
  CurveClass cls;
  int multiplicity = 1;
};

struct MarkedModel {
  const FamilySpec* family = nullptr;
  std::vector<int> state;                // one entry per decomposition
  std::vector<CurveClass> steps;         // flopped classes in order
  std::vector<std::string> step_labels;  // catalog labels of the steps

  std::vector<LedgerEntry> ledger() const;
  // Flopped decomposition labels in canonical order, "(1,12)"; "X" when no
  // flop has been performed.
  std::string label() const;
};

CurveClass transform_class(const CurveClass& g, const CurveClass& c, const Int& k);
CurveClass ledger_class(const FamilySpec& spec, std::size_t decomposition, int state, bool lower);

MarkedModel initial_model(const FamilySpec& spec);
// Throws FlopError naming the violated admissibility rule.
MarkedModel apply_flop(const MarkedModel& m, const CurveClass& c);
MarkedModel apply_flop(const MarkedModel& m, const std::string& label);

// Functional y -> y.C on section coordinates.
ZVector rel_functional(const FamilySpec& spec, const CurveClass& c);

Cone relative_nef_cone(const MarkedModel& m);

struct FlopSequence {
  std::vector<std::string> steps;
  bool canonical = false;
  std::string label() const;
};

// All marked models the family needs, the initial model first. Anchored
// families: every admissible flopped set. Breadth-first families: every
// chamber meeting the interior of V, reached by crossing walls.
std::vector<MarkedModel> enumerate_models(const FamilySpec& spec);
// Canonical nonempty sequences (lexicographically least in their
// relabeling orbit).
std::vector<FlopSequence> enumerate_sequences(const FamilySpec& spec);
std::vector<FlopSequence> enumerate_sequences(const FamilySpec& spec, const std::vector<MarkedModel>& models);
bool is_canonical(const MarkedModel& m);

// Decomposition index permutation induced by a point permutation.
std::vector<std::size_t> decomposition_permutation(const FamilySpec& spec, const std::vector<std::size_t>& perm);

struct Certificate {
  std::string cls;      // curve class
  std::string affine;   // y.C / f in the a-chart
  Rat min_on_slice;     // minimum over V_1
  Rat bound;            // required lower bound
  bool ok = false;
};

struct CoveringReport {
  bool delegated = false;
  bool pass = false;
  std::size_t models = 0;
  std::size_t hyperplanes = 0;
  std::size_t cells = 0;
  std::vector<std::size_t> cell_model;     // witness model per cell
  std::vector<QVector> cell_points;        // interior point per cell, a-chart
  std::vector<QVector> uncovered;          // a-chart points with no model
  std::vector<Certificate> certificates;
  std::string message;
};

CoveringReport covering_check(const FamilySpec& spec);
CoveringReport covering_check(const FamilySpec& spec, const std::vector<MarkedModel>& models);

struct ChamberEdge {
  std::size_t a = 0, b = 0;
  std::string wall;  // ledger class dual to the shared wall
};

struct ChamberGraph {
  std::size_t vertices = 0;
  std::vector<ChamberEdge> edges;
  bool connected = false;
  // Breadth-first families compare chambers cut down to V instead of whole
  // relative nef cones.
  bool within_domain = false;
  std::vector<std::string> problems;
};

ChamberGraph chamber_graph(const FamilySpec& spec);
ChamberGraph chamber_graph(const FamilySpec& spec, const std::vector<MarkedModel>& models);

struct FixtureRay {
  std::string printed;
  std::string status;  // "model", "sibling" or "failed"
  std::string detail;  // sibling model, or the negative curve class
};

struct FixtureReport {
  std::string sequence;
  bool pass = false;
  std::vector<FixtureRay> rays;
  std::size_t kept = 0;           // relabeled images nef on the model
  bool contains_anticanonical = false;
  bool maps_onto = false;         // projected cone equals the relative nef cone
  bool walls_dual = false;        // vertical walls are dual to ledger classes
  std::vector<std::string> messages;
};

FixtureReport fixture_check_model_nef(const MarkedModel& m, const ModelFixture& fixture,
                                      const std::vector<MarkedModel>& models);

// Index of the model whose label matches "(1,12,...)", or models.size().
std::size_t find_model(const std::vector<MarkedModel>& models, const std::string& label);

struct PatternCheck {
  std::string label;
  std::vector<int> printed;
  std::vector<int> observed;
  bool bound_only = false;
  bool ok = false;
};

struct LedgerReport {
  bool pass = false;
  std::size_t models = 0;
  std::size_t flops_replayed = 0;
  bool conservation = false;
  bool anticanonical_trivial = false;
  std::vector<PatternCheck> patterns;
  std::vector<std::string> unprinted;  // observed multipliers on untracked patterns
  std::vector<std::string> messages;
};

// Replays every model's steps, checks conservation after each flop and
// compares observed multipliers m of mF + C against the printed patterns.
LedgerReport ledger_check(const FamilySpec& spec, const std::vector<MarkedModel>& models);

} // namespace conelab
