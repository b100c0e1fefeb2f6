// Command-line front end: family listing, nef cones, flops, covering,
// reduction into the fundamental domain, chamber graphs and verification.
#include "conelab/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace conelab;

namespace {

FamilySpec family_arg(const std::string& id) { return load_family(id); }

int cmd_families() {
  std::cout << "id        n  r  k  flops          name\n";
  for (const auto& id : family_ids()) {
    FamilySpec s = load_family(id);
    std::string rule = to_string(s.catalog.rule);
    std::printf("%-9s %d  %d  %d  %-14s %s\n", s.id.c_str(), s.n, s.r, s.k, rule.c_str(), s.name.c_str());
  }
  return 0;
}

int cmd_nef(const std::string& id) {
  FamilySpec s = family_arg(id);
  Cone nef = nef_cone(s);
  std::cout << s.id << ": " << nef.rays.size() << " nef rays\n";
  for (const auto& r : nef.rays) std::cout << "  " << format_class(r, s.divisor_basis()) << "\n";
  return 0;
}

void print_ledger(const FamilySpec& s, const MarkedModel& m, bool all) {
  for (const auto& e : m.ledger()) {
    const int st = m.state[e.decomposition];
    if (!all && st == 0) continue;
    const auto& dec = s.catalog.decompositions[e.decomposition];
    std::cout << "    " << dec.label << (e.lower ? " lower " : " upper ") << format_class(e.cls, s.curve_basis()) << "\n";
  }
}

int cmd_flops(const std::string& id, bool all_models) {
  FamilySpec s = family_arg(id);
  if (!s.has_flop_catalog()) {
    std::cout << s.id << ": flop rule " << to_string(s.catalog.rule) << "; no sequences enumerated\n";
    return 0;
  }
  std::vector<MarkedModel> models = enumerate_models(s);
  std::vector<FlopSequence> seqs = enumerate_sequences(s, models);
  std::cout << s.id << ": " << models.size() << " marked models, " << seqs.size() << " canonical sequences\n";
  for (const auto& m : models) {
    if (m.steps.empty() || (!all_models && !is_canonical(m))) continue;
    std::cout << "  " << m.label() << "  via (";
    for (std::size_t i = 0; i < m.step_labels.size(); ++i) std::cout << (i ? ", " : "") << m.step_labels[i];
    std::cout << ")\n";
    print_ledger(s, m, false);
  }
  LedgerReport lr = ledger_check(s, models);
  std::cout << "ledger patterns:\n";
  for (const auto& p : lr.patterns) {
    std::cout << "  " << p.label << " observed m in {";
    for (std::size_t i = 0; i < p.observed.size(); ++i) std::cout << (i ? "," : "") << p.observed[i];
    std::cout << "} " << (p.ok ? "ok" : "MISMATCH") << (p.bound_only ? " (printed range is a bound)" : "") << "\n";
  }
  for (const auto& u : lr.unprinted) std::cout << "  also observed: " << u << "\n";
  return 0;
}

int cmd_cover(const std::string& id) {
  FamilySpec s = family_arg(id);
  std::vector<MarkedModel> models = enumerate_models(s);
  CoveringReport c = covering_check(s, models);
  std::cout << s.id << ": " << (c.delegated ? "delegated" : c.pass ? "covered" : "NOT covered") << ", " << c.message << "\n";
  for (const auto& ct : c.certificates)
    std::cout << "  x.(" << ct.cls << ") = " << ct.affine << "  min on V_1 = " << to_string(ct.min_on_slice)
              << " >= " << to_string(ct.bound) << (ct.ok ? "" : "  FAILS") << "\n";
  if (c.cell_model.size() <= 100)
    for (std::size_t i = 0; i < c.cell_model.size(); ++i)
      std::cout << "  cell a=" << to_string(c.cell_points[i]) << " in " << models[c.cell_model[i]].label() << "\n";
  for (const auto& p : c.uncovered) std::cout << "  uncovered a=" << to_string(p) << "\n";
  return c.pass ? 0 : 1;
}

int cmd_reduce(const std::string& id, const std::vector<std::string>& coords, bool sections) {
  FamilySpec s = family_arg(id);
  const std::size_t k = static_cast<std::size_t>(s.k);
  if (coords.size() != k) throw ConfigError("reduce needs " + std::to_string(k) + " rationals for family " + s.id);
  QVector v;
  for (const auto& c : coords) v.push_back(parse_rational(c));
  // Default input is (f, a_2, ..., a_k) in the chart; --sections takes
  // coordinates over S_1..S_k.
  RelClass y = sections ? v : from_chart(v[0], QVector(v.begin() + 1, v.end()));
  Reduction r = reduce(y);
  std::cout << "element: " << to_string(r.element) << "\n";
  std::cout << "reduced (sections): " << to_string(r.reduced) << "\n";
  std::cout << "reduced (chart a):  " << to_string(to_chart(r.reduced)) << "\n";
  return 0;
}

int cmd_graph(const std::string& id) {
  FamilySpec s = family_arg(id);
  std::vector<MarkedModel> models = enumerate_models(s);
  ChamberGraph g = chamber_graph(s, models);
  std::cout << s.id << ": " << g.vertices << " vertices, " << g.edges.size() << " edges, "
            << (g.connected ? "connected" : "NOT connected") << (g.within_domain ? " (chambers cut down to V)" : "") << "\n";
  for (const auto& e : g.edges)
    std::cout << "  " << models[e.a].label() << " -- " << models[e.b].label() << "  [" << e.wall << "]\n";
  for (const auto& p : g.problems) std::cout << "  problem: " << p << "\n";
  return g.connected && g.problems.empty() ? 0 : 1;
}

int cmd_export(const std::string& id, const std::string& out) {
  std::string text = family_to_json(family_arg(id));
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + out);
  f << text;
  return 0;
}

int cmd_verify(std::vector<std::string> ids, bool all, const std::string& report, const VerifyOptions& o) {
  if (all || ids.empty()) ids = family_ids();
  VerificationReport rep = run_all(ids, o);
  for (const auto& r : rep.results)
    std::cout << "[" << to_string(r.status) << "] " << r.family << " " << r.summary << "\n";
  std::cout << rep.passed << " passed, " << rep.failed << " failed, " << rep.delegated << " delegated\n";
  if (!report.empty()) {
    std::ofstream f(report, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + report);
    f << report_to_string(rep, o.timing);
  }
  return rep.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cone computations for movable cones of elliptic fibrations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string family;
  auto* families = app.add_subcommand("families", "List families with n, r, k");
  auto* nef = app.add_subcommand("nef", "Print the canonical nef rays");
  nef->add_option("family", family)->required();
  bool all_models = false;
  auto* flops = app.add_subcommand("flops", "Print canonical flop sequences and their ledgers");
  flops->add_option("family", family)->required();
  flops->add_flag("--all-models", all_models, "Print every marked model, not only canonical ones");
  auto* cover = app.add_subcommand("cover", "Covering certificate for the fundamental domain");
  cover->add_option("family", family)->required();
  std::vector<std::string> coords;
  bool sections = false;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a class into the fundamental domain");
  reduce_cmd->add_option("family", family)->required();
  reduce_cmd->add_option("coords", coords, "f a_2 ... a_k, or S_1..S_k coordinates with --sections")->required();
  reduce_cmd->add_flag("--sections", sections, "Read coordinates over the section basis");
  auto* graph = app.add_subcommand("graph", "Chamber graph as an edge list");
  graph->add_option("family", family)->required();
  std::string out;
  auto* exp = app.add_subcommand("export", "Write a family as JSON");
  exp->add_option("family", family)->required();
  exp->add_option("-o,--output", out, "Output path (default stdout)");
  std::vector<std::string> ids;
  bool all = false;
  std::string report;
  VerifyOptions o;
  auto* verify = app.add_subcommand("verify", "Run every check and report");
  verify->add_option("--family", ids, "Family id (repeatable)");
  verify->add_flag("--all", all, "Verify every family");
  verify->add_option("--report", report, "Write the JSON report to this path");
  verify->add_option("--seed", o.seed, "Seed for the randomized checks");
  verify->add_option("--radius", o.radius, "Tiling radius (default 2 for k <= 5, 1 otherwise)");
  verify->add_option("--samples", o.samples, "Random samples per randomized check");
  verify->add_flag("--timing", o.timing, "Include the wall-clock duration in the report");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*families) return cmd_families();
    if (*nef) return cmd_nef(family);
    if (*flops) return cmd_flops(family, all_models);
    if (*cover) return cmd_cover(family);
    if (*reduce_cmd) return cmd_reduce(family, coords, sections);
    if (*graph) return cmd_graph(family);
    if (*exp) return cmd_export(family, out);
    if (*verify) return cmd_verify(ids, all, report, o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
