// Acceptance run: one PASS/FAIL line per criterion, detail lines for any
// failure, nonzero exit when a criterion fails.
#include "conelab/verify.hpp"

#include <chrono>
#include <iostream>

using namespace conelab;

namespace {

struct Criterion {
  int number;
  std::string title;
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

const CheckResult* find(const VerificationReport& r, const std::string& fam, const std::string& id) {
  for (const auto& c : r.results)
    if (c.family == fam && c.id == id) return &c;
  return nullptr;
}

void require_status(Criterion& c, const VerificationReport& r, const std::string& fam, const std::string& id,
                    Status want = Status::pass) {
  const CheckResult* res = find(r, fam, id);
  if (!res) {
    c.require(false, fam + " " + id + ": missing");
    return;
  }
  c.require(res->status == want, fam + " " + id + ": " + to_string(res->status) + ", " + res->summary);
  if (res->status == Status::fail && !res->witness.is_null() && res->witness.contains("lists"))
    for (const auto& l : res->witness["lists"])
      if (l.contains("failed_rays"))
        for (const auto& ray : l["failed_rays"])
          c.notes.push_back("  " + l["sequence"].get<std::string>() + ": " + ray["ray"].get<std::string>() + " " +
                            ray["reason"].get<std::string>());
}

bool ledger_has(const MarkedModel& m, const CurveClass& c) {
  for (const auto& e : m.ledger())
    if (e.cls == c) return true;
  return false;
}

MarkedModel replay(const FamilySpec& s, std::initializer_list<const char*> steps) {
  MarkedModel m = initial_model(s);
  for (const char* st : steps) m = apply_flop(m, st);
  return m;
}

} // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  VerifyOptions opts;
  const std::vector<std::string> all = family_ids();
  VerificationReport rep = run_all(all, opts);
  std::vector<Criterion> out;

  {
    Criterion c{1, "nef fixtures reproduce the printed generator lists"};
    for (const auto& f : all) require_status(c, rep, f, "nef-fixture");
    const CheckResult* gr = find(rep, "gr25", "nef-fixture");
    c.require(gr && gr->summary.find(" 32 rays") != std::string::npos, "gr25 does not have 32 rays");
    const CheckResult* dc = find(rep, "dcover", "nef-fixture");
    c.require(dc && dc->summary.find(" 4 rays") != std::string::npos, "dcover does not have 4 rays");
    out.push_back(c);
  }
  {
    Criterion c{2, "decomposition identity on 1000 seeded tuples per family"};
    for (const auto& f : all) require_status(c, rep, f, "decomposition-identity");
    out.push_back(c);
  }
  {
    Criterion c{3, "bigness margins (2^n-1)j > 0 match the printed expansion"};
    for (const auto& f : all) require_status(c, rep, f, "bigness");
    for (int n = 3; n <= 5; ++n)
      for (int r = 1; r <= 8; ++r)
        for (int j = 1; j <= r; ++j) {
          BignessMargin m = bigness_margin(n, j, r);
          c.require(m.value > 0 && m.value == m.total_term - m.untouched_term - m.touched_term,
                    "margin n=" + std::to_string(n) + " r=" + std::to_string(r) + " j=" + std::to_string(j));
        }
    out.push_back(c);
  }
  {
    Criterion c{4, "flop ledgers match the printed lists with conservation"};
    for (const char* f : {"gr25", "quadrics", "p2p2"}) require_status(c, rep, f, "flop-ledger");
    FamilySpec gr = load_family("gr25");
    auto cls = [&](const FamilySpec& s, const char* e) { return add(s.fiber, parse_class(e, s.curve_basis())); };
    c.require(ledger_has(replay(gr, {"1"}), cls(gr, "l-e1")), "gr25 (1) lacks F+(l-e1)");
    c.require(ledger_has(replay(gr, {"1", "12"}), cls(gr, "2l-e1-e2")), "gr25 (1,12) lacks F+(2l-e1-e2)");
    c.require(ledger_has(replay(gr, {"1", "12", "13", "123"}), cls(gr, "3l-e1-e2-e3")),
              "gr25 (1,12,13,123) lacks F+(3l-e1-e2-e3)");
    FamilySpec q = load_family("quadrics");
    MarkedModel qm = replay(q, {"1", "12"});
    c.require(ledger_has(qm, cls(q, "l-e1")) && ledger_has(qm, cls(q, "2l-e1-e2")), "quadrics (1,12) ledger");
    out.push_back(c);
  }
  {
    Criterion c{5, "13 canonical Gr(2,5) sequences, prefixes admissible, no forbidden cubic pair"};
    require_status(c, rep, "gr25", "flop-sequences");
    const CheckResult* s = find(rep, "gr25", "flop-sequences");
    c.require(s && s->witness.value("canonical_sequences", 0) == 13, "sequence count is not 13");
    out.push_back(c);
  }
  {
    Criterion c{6, "covering of V with the printed certificates; two families delegated"};
    for (const char* f : {"gr25", "quadrics", "cubic", "p2p2", "dcover"}) require_status(c, rep, f, "covering");
    for (const char* f : {"flag123", "p1p1p1"}) require_status(c, rep, f, "covering", Status::delegated);
    out.push_back(c);
  }
  {
    Criterion c{7, "group laws, reduce soundness and idempotence, tiling"};
    for (const auto& f : all)
      for (const char* id : {"fundamental-domain", "group-laws", "reduce", "tiling"}) require_status(c, rep, f, id);
    out.push_back(c);
  }
  {
    Criterion c{8, "model nef certificates for every printed list"};
    for (const char* f : {"gr25", "quadrics"}) require_status(c, rep, f, "model-nef-fixtures");
    out.push_back(c);
  }
  {
    Criterion c{9, "appendix: degree 1, -K = O(n-1), two nef rays, Mov = Nef"};
    require_status(c, rep, "wps", "appendix");
    out.push_back(c);
  }
  {
    Criterion c{10, "kernel properties on 500 seeded random cones"};
    KernelPropertyReport k = kernel_property_check(opts.seed, 500);
    c.require(k.cones == 500, "wrong cone count");
    for (const auto& f : k.failures) c.require(false, f);
    c.notes.insert(c.notes.begin(), "  duality " + std::to_string(k.duality) + ", consistency " +
                                        std::to_string(k.consistency) + ", irredundant " + std::to_string(k.irredundant) +
                                        ", deterministic " + std::to_string(k.deterministic));
    out.push_back(c);
  }

  int failed = 0;
  for (const auto& c : out) {
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << "criterion " << c.number << ": " << c.title << "\n";
    if (!c.ok) {
      ++failed;
      for (const auto& n : c.notes) std::cout << "    " << n << "\n";
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (out.size() - failed) << " of " << out.size() << " criteria pass (" << static_cast<int>(secs + 0.5)
            << " s)\n";
  return failed == 0 ? 0 : 1;
}
