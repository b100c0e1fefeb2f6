#include "conelab/families.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace conelab {

namespace {

// Known identifiers with the (r, k) values the embedded data must match.
struct KnownShape {
  const char* id;
  int r;
  int k;
};
constexpr KnownShape kKnown[] = {{"gr25", 5, 5},   {"quadrics", 4, 4}, {"cubic", 3, 3}, {"p2p2", 6, 7},
                                 {"flag123", 6, 7}, {"p1p1p1", 6, 8},   {"dcover", 2, 2}, {"wps", 1, 1}};

class Builder {
public:
  Builder(std::string id, std::string name, int n, int r, int k, int h, int degree) {
    s_.id = std::move(id);
    s_.name = std::move(name);
    s_.n = n;
    s_.r = r;
    s_.k = k;
    s_.h = h;
    s_.degree = degree;
    s_.pairing = blowup_pairing(static_cast<std::size_t>(h), static_cast<std::size_t>(r), h > 1);
  }

  QVector d(const std::string& e) const { return parse_class(e, s_.divisor_basis()); }
  QVector c(const std::string& e) const { return parse_class(e, s_.curve_basis()); }

  // Sum of all H-classes (resp. l-classes) written as an expression.
  std::string sum_h() const { return sum_names("H"); }
  std::string sum_l() const { return sum_names("l"); }

  std::string minus_e(const std::vector<int>& points, const char* letter) const {
    std::string s;
    for (int p : points) s += std::string("-") + letter + std::to_string(p);
    return s;
  }
  std::vector<int> all_points() const {
    std::vector<int> v;
    for (int i = 1; i <= s_.r; ++i) v.push_back(i);
    return v;
  }

  FamilySpec& spec() { return s_; }

  void standard_classes(int fiber_multiple) {
    std::string f;
    for (int a = 1; a <= s_.h; ++a) {
      std::string l = s_.h > 1 ? "l" + std::to_string(a) : "l";
      f += (f.empty() ? "" : "+") + (fiber_multiple == 1 ? "" : std::to_string(fiber_multiple)) + l;
    }
    s_.fiber = c(f + minus_e(all_points(), "e"));
    s_.anticanonical = d(sum_h() + minus_e(all_points(), "E"));
  }

  // l-classes, e_i, and l_a - e_i for every H-class a.
  void standard_curve_generators(bool include_l = true) {
    for (int a = 1; a <= s_.h; ++a)
      if (include_l) s_.curve_generators.push_back(c(l_name(a)));
    for (int i = 1; i <= s_.r; ++i) s_.curve_generators.push_back(c("e" + std::to_string(i)));
    for (int a = 1; a <= s_.h; ++a)
      for (int i = 1; i <= s_.r; ++i) s_.curve_generators.push_back(c(l_name(a) + "-e" + std::to_string(i)));
  }

  // {H-classes} (when several) plus {sum H - sum_{i in I} E_i : I subset [r]}.
  void standard_nef_fixture() {
    if (s_.h > 1)
      for (int a = 1; a <= s_.h; ++a) s_.nef_fixture.push_back(d(h_name(a)));
    for (unsigned mask = 0; mask < (1u << s_.r); ++mask) {
      std::vector<int> pts;
      for (int i = 0; i < s_.r; ++i)
        if (mask & (1u << i)) pts.push_back(i + 1);
      s_.nef_fixture.push_back(d(sum_h() + minus_e(pts, "E")));
    }
  }

  void sections_e(int count) {
    for (int i = 1; i <= count; ++i) s_.sections.push_back(d("E" + std::to_string(i)));
  }

  // Decompositions C + (F - C) with C = |I| l - sum_I e and 1 in I.
  void anchored_decompositions(int max_floppable) {
    for (unsigned mask = 1; mask < (1u << s_.r); ++mask) {
      if (!(mask & 1u)) continue;
      std::vector<int> pts;
      for (int i = 0; i < s_.r; ++i)
        if (mask & (1u << i)) pts.push_back(i + 1);
      if (static_cast<int>(pts.size()) >= s_.r) continue;
      Decomposition dec;
      for (int p : pts) dec.label += std::to_string(p);
      static const char* kinds[] = {"", "line", "conic", "cubic", "quartic", "quintic"};
      dec.kind = kinds[pts.size()];
      int deg = static_cast<int>(pts.size());
      dec.reference = c((deg == 1 ? std::string("l") : std::to_string(deg) + "l") + minus_e(pts, "e"));
      dec.floppable = deg <= max_floppable;
      for (int p : pts) dec.points.push_back(static_cast<std::size_t>(p - 1));
      s_.catalog.decompositions.push_back(std::move(dec));
    }
    std::sort(s_.catalog.decompositions.begin(), s_.catalog.decompositions.end(),
              [](const Decomposition& a, const Decomposition& b) {
                if (a.label.size() != b.label.size()) return a.label.size() < b.label.size();
                return a.label < b.label;
              });
  }

  // Appends a model fixture; entries of the form "{base}" denote the family
  // {base - sum_{i in I} E_i : I subset of the points not named in base}.
  void model_fixture(const std::string& seq, std::vector<std::string> siblings, const std::vector<std::string>& printed) {
    ModelFixture m;
    m.sequence = seq;
    m.siblings = std::move(siblings);
    for (const auto& p : printed) {
      if (!p.empty() && p.front() == '{') {
        std::string base = p.substr(1, p.size() - 2);
        QVector b = d(base);
        std::vector<int> free;
        for (int i = 1; i <= s_.r; ++i)
          if (sgn(b[static_cast<std::size_t>(s_.h + i - 1)]) == 0) free.push_back(i);
        for (unsigned mask = 0; mask < (1u << free.size()); ++mask) {
          std::vector<int> pts;
          for (std::size_t i = 0; i < free.size(); ++i)
            if (mask & (1u << i)) pts.push_back(free[i]);
          std::string e = base + minus_e(pts, "E");
          m.printed.push_back(e);
          m.rays.push_back(d(e));
        }
      } else {
        m.printed.push_back(p);
        m.rays.push_back(d(p));
      }
    }
    s_.model_fixtures.push_back(std::move(m));
  }

private:
  std::string l_name(int a) const { return s_.h > 1 ? "l" + std::to_string(a) : "l"; }
  std::string h_name(int a) const { return s_.h > 1 ? "H" + std::to_string(a) : "H"; }
  std::string sum_names(const char* base) const {
    std::string s;
    for (int a = 1; a <= s_.h; ++a) s += (a > 1 ? "+" : "") + (s_.h > 1 ? base + std::to_string(a) : std::string(base));
    return s;
  }

  FamilySpec s_;
};

// Expands "i,j,k = 2,3,4" style patterns: every assignment of distinct
// indices from pool to the placeholders, deduplicated after formatting.
std::vector<std::string> expand_pattern(const std::string& pattern, const std::vector<int>& pool) {
  std::vector<char> holders;
  for (char ch : std::string("ijk"))
    if (pattern.find(std::string("E") + ch) != std::string::npos) holders.push_back(ch);
  std::vector<std::string> out;
  std::vector<int> p = pool;
  std::sort(p.begin(), p.end());
  do {
    std::string s = pattern;
    for (std::size_t h = 0; h < holders.size(); ++h) {
      std::string key = std::string("E") + holders[h];
      for (std::size_t at = s.find(key); at != std::string::npos; at = s.find(key))
        s.replace(at, key.size(), "E" + std::to_string(p[h]));
    }
    out.push_back(s);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> dedup;
  for (const auto& s : out)
    if (std::find(dedup.begin(), dedup.end(), s) == dedup.end()) dedup.push_back(s);
  return dedup;
}

// Canonical form of a pattern expansion: the same class can arise from
// several assignments, so compare parsed classes.
void append_expanded(std::vector<std::string>& list, const std::string& pattern, const std::vector<int>& pool,
                     const std::vector<std::string>& basis) {
  std::vector<QVector> seen;
  for (const auto& e : expand_pattern(pattern, pool)) {
    QVector v = parse_class(e, basis);
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
    seen.push_back(v);
    list.push_back(e);
  }
}

FamilySpec make_gr25() {
  Builder b("gr25", "linear section of Gr(2,5)", 3, 5, 5, 1, 5);
  b.standard_classes(5);
  b.standard_curve_generators();
  b.standard_nef_fixture();
  b.sections_e(5);
  auto& s = b.spec();
  s.catalog.rule = FlopRule::anchored;
  b.anchored_decompositions(3);
  s.catalog.printed_patterns = {{"l-e1", b.c("l-e1"), {1}, false, {"1"}},
                                {"2l-e1-ei", b.c("2l-e1-e2"), {1}, false, {"12", "13", "14", "15"}},
                                {"3l-e1-ei-ej", b.c("3l-e1-e2-e3"), {1}, false, {"123", "124", "125", "134", "135", "145"}}};
  s.symmetry_blocks = {{1, 2, 3, 4}};
  s.sequence_fixture = {"(1)",
                        "(1,12)",
                        "(1,12,13)",
                        "(1,12,13,14)",
                        "(1,12,13,14,15)",
                        "(1,12,13,123)",
                        "(1,12,13,14,123)",
                        "(1,12,13,14,15,123)",
                        "(1,12,13,14,123,124)",
                        "(1,12,13,14,15,123,124)",
                        "(1,12,13,14,123,124,134)",
                        "(1,12,13,14,15,123,124,134)",
                        "(1,12,13,14,15,123,124,125)"};
  const std::vector<std::string> conic_only = {"(1,12)", "(1,12,13)", "(1,12,13,14)", "(1,12,13,14,15)"};
  const std::vector<std::string> one_cubic = {"(1,12,13,123)", "(1,12,13,14,123)", "(1,12,13,14,15,123)"};
  const std::vector<std::string> many_cubics = {"(1,12,13,14,123,124)", "(1,12,13,14,15,123,124)",
                                                "(1,12,13,14,123,124,134)", "(1,12,13,14,15,123,124,134)",
                                                "(1,12,13,14,15,123,124,125)"};
  b.model_fixture("(1)", {"(1)"}, {"{H-E1}", "H-2E1"});
  b.model_fixture("(1,12)", conic_only, {"{H-E1-E2}", "H-2E1", "H-2E1-E2"});
  b.model_fixture("(1,12,13,123)", one_cubic,
                  {"{H-E1-E2-E3}", "H-2E1-E2", "H-2E1-E3", "2H-3E1-2E2-2E3-E4", "2H-3E1-2E2-2E3-E5",
                   "2H-3E1-2E2-2E3-E4-E5"});
  b.model_fixture("(1,12,13,14,123,124)", many_cubics,
                  {"{H-E1-E2-E3-E4}", "H-2E1-E2", "H-2E1-E3", "H-2E1-E4", "2H-4E1-E2-E3-E4", "2H-4E1-E2-E3-E4-E5",
                   "2H-3E1-2E2-2E3-E4", "2H-3E1-2E2-2E3-E5", "2H-3E1-2E2-2E3-E4-E5", "3H-5E1-3E2-2E3-2E4",
                   "3H-5E1-3E2-2E3-2E4-E5", "4H-7E1-3E2-3E3-3E4", "4H-7E1-3E2-3E3-3E4-2E5"});
  s.notes = {"schematic index sets in the model lists are expanded over subsets of the points not already named",
             "model lists are patterns up to relabeling of points 2..5 and apply to every sequence of their category"};
  return s;
}

FamilySpec make_quadrics() {
  Builder b("quadrics", "intersection of two quadrics", 3, 4, 4, 1, 4);
  b.standard_classes(4);
  b.standard_curve_generators();
  b.standard_nef_fixture();
  b.sections_e(4);
  auto& s = b.spec();
  s.catalog.rule = FlopRule::anchored;
  b.anchored_decompositions(2);
  s.catalog.printed_patterns = {{"l-e1", b.c("l-e1"), {1}, false, {"1"}},
                                {"2l-e1-ei", b.c("2l-e1-e2"), {1}, false, {"12", "13", "14"}}};
  s.symmetry_blocks = {{1, 2, 3}};
  s.sequence_fixture = {"(1)", "(1,12)", "(1,12,13)", "(1,12,13,14)"};
  b.model_fixture("(1)", {"(1)"}, {"{H-E1}", "H-2E1"});
  b.model_fixture("(1,12)", {"(1,12)"},
                  {"{H-E1-E2}", "H-2E1", "2H-3E1-2E2", "2H-3E1-2E2-E3", "2H-3E1-2E2-E4", "2H-3E1-2E2-E3-E4"});
  b.model_fixture("(1,12,13)", {"(1,12,13)"},
                  {"{H-E1-E2-E3}", "H-2E1", "2H-3E1-2E2-E3", "2H-3E1-2E2-E3-E4", "2H-3E1-2E3", "3H-5E1-2E2-2E3",
                   "3H-5E1-2E2-2E3-E4"});
  std::vector<std::string> last = {"H-E1-E2-E3-E4", "H-2E1"};
  const auto& basis = s.divisor_basis();
  append_expanded(last, "2H-3E1-2Ei-Ej-Ek", {2, 3, 4}, basis);
  append_expanded(last, "3H-5E1-2Ei-2Ej-Ek", {2, 3, 4}, basis);
  last.push_back("4H-6E1-3E2-3E3-3E4");
  append_expanded(last, "5H-8E1-4Ei-3Ej-3Ek", {2, 3, 4}, basis);
  append_expanded(last, "6H-10E1-4Ei-4Ej-3Ek", {2, 3, 4}, basis);
  last.push_back("7H-12E1-4E2-4E3-4E4");
  b.model_fixture("(1,12,13,14)", {"(1,12,13,14)"}, last);
  s.notes = {"an unnamed index in a printed ray ranges over the remaining points"};
  return s;
}

FamilySpec make_cubic() {
  Builder b("cubic", "cubic hypersurface", 3, 3, 3, 1, 3);
  b.standard_classes(3);
  b.standard_curve_generators();
  b.standard_nef_fixture();
  b.sections_e(3);
  auto& s = b.spec();
  s.catalog.rule = FlopRule::none;
  b.anchored_decompositions(0);
  s.symmetry_blocks = {{1, 2}};
  return s;
}

FamilySpec make_dcover() {
  Builder b("dcover", "double cover of P^n branched in a quartic", 3, 2, 2, 1, 2);
  b.standard_classes(2);
  b.standard_curve_generators(false);
  b.standard_nef_fixture();
  b.sections_e(2);
  auto& s = b.spec();
  s.catalog.rule = FlopRule::none;
  b.anchored_decompositions(0);
  s.symmetry_blocks = {{1}};
  return s;
}

FamilySpec make_wps() {
  Builder b("wps", "sextic in P(3,2,1,...,1)", 3, 1, 1, 1, 1);
  b.standard_classes(1);
  auto& s = b.spec();
  s.curve_generators = {b.c("e1"), b.c("l-e1")};
  s.nef_fixture = {b.d("H"), b.d("H-E1")};
  b.sections_e(1);
  s.catalog.rule = FlopRule::none;
  s.appendix = true;
  return s;
}

FamilySpec make_p2p2() {
  Builder b("p2p2", "P^2 x P^2", 4, 6, 7, 2, 6);
  b.standard_classes(3);
  b.standard_curve_generators();
  b.standard_nef_fixture();
  b.sections_e(6);
  auto& s = b.spec();
  s.sections.push_back(b.d("H1-E1-E2"));
  s.catalog.rule = FlopRule::breadth_first;
  for (int a = 1; a <= 2; ++a)
    for (int i = 1; i <= 6; ++i) {
      Decomposition dec;
      dec.label = "l" + std::to_string(a) + "-e" + std::to_string(i);
      dec.kind = "line";
      dec.reference = b.c(dec.label);
      dec.floppable = true;
      dec.points = {static_cast<std::size_t>(i - 1)};
      s.catalog.decompositions.push_back(std::move(dec));
    }
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      Decomposition dec;
      dec.label = "l1+l2-e" + std::to_string(i) + "-e" + std::to_string(j);
      dec.kind = "conic";
      dec.reference = b.c(dec.label);
      dec.floppable = true;
      dec.points = {static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)};
      s.catalog.decompositions.push_back(std::move(dec));
    }
  std::vector<std::string> conics;
  for (const auto& d : s.catalog.decompositions)
    if (d.kind == "conic") conics.push_back(d.label);
  s.catalog.printed_patterns = {
      {"l1-e1", b.c("l1-e1"), {1, 2}, false, {"l1-e1"}},
      {"l1+l2-ei-ej", b.c("l1+l2-e1-e2"), {1, 2, 3}, false, conics},
      {"2l1+l2-e1-ej-ek", b.c("2l1+l2-e1-e2-e3"), {1, 2, 3, 4}, true, {}},
  };
  s.symmetry_blocks = {{2, 3, 4, 5}};
  s.notes = {"two-cubic fibers are not tracked; cubic classes enter only through the printed lower bound"};
  return s;
}

FamilySpec make_flag123() {
  Builder b("flag123", "flag variety F(1,2;3)", 3, 6, 7, 2, 6);
  b.standard_classes(3);
  b.standard_curve_generators();
  b.standard_nef_fixture();
  b.sections_e(6);
  auto& s = b.spec();
  s.sections.push_back(b.d("H1-E1-E2"));
  s.catalog.rule = FlopRule::delegated;
  s.symmetry_blocks = {{2, 3, 4, 5}};
  return s;
}

FamilySpec make_p1p1p1() {
  Builder b("p1p1p1", "P^1 x P^1 x P^1", 3, 6, 8, 3, 6);
  b.standard_classes(2);
  b.standard_curve_generators();
  b.standard_nef_fixture();
  b.sections_e(6);
  auto& s = b.spec();
  s.sections.push_back(b.d("H1-E1"));
  s.sections.push_back(b.d("H2-E2"));
  s.catalog.rule = FlopRule::delegated;
  s.symmetry_blocks = {{2, 3, 4, 5}};
  s.notes = {"curve generators include l_a - e_i for every a in 1..3 and i in 1..6"};
  return s;
}

// ---------------------------------------------------------------- JSON

using json = nlohmann::ordered_json;

json vec_json(const QVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

QVector vec_from(const json& a, std::size_t dim, const std::string& what) {
  if (!a.is_array() || a.size() != dim) throw ConfigError(what + ": expected an array of " + std::to_string(dim) + " rationals");
  QVector v;
  for (const auto& x : a) {
    if (!x.is_string()) throw ConfigError(what + ": rationals must be strings \"p/q\"");
    v.push_back(parse_rational(x.get<std::string>()));
  }
  return v;
}

json list_json(const std::vector<QVector>& l) {
  json a = json::array();
  for (const auto& v : l) a.push_back(vec_json(v));
  return a;
}

std::vector<QVector> list_from(const json& a, std::size_t dim, const std::string& what) {
  if (!a.is_array()) throw ConfigError(what + ": expected an array");
  std::vector<QVector> out;
  for (const auto& v : a) out.push_back(vec_from(v, dim, what));
  return out;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field \"") + key + "\"");
  return j.at(key).get<T>();
}

} // namespace

std::string to_string(FlopRule r) {
  switch (r) {
  case FlopRule::none: return "none";
  case FlopRule::anchored: return "anchored";
  case FlopRule::breadth_first: return "breadth_first";
  case FlopRule::delegated: return "delegated";
  }
  return "none";
}

FlopRule flop_rule_from_string(const std::string& s) {
  for (FlopRule r : {FlopRule::none, FlopRule::anchored, FlopRule::breadth_first, FlopRule::delegated})
    if (to_string(r) == s) return r;
  throw ConfigError("unknown flop rule \"" + s + "\"");
}

const std::vector<std::string>& family_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& k : kKnown) v.push_back(k.id);
    return v;
  }();
  return ids;
}

FamilySpec embedded_family(const std::string& id) {
  FamilySpec s;
  if (id == "gr25")
    s = make_gr25();
  else if (id == "quadrics")
    s = make_quadrics();
  else if (id == "cubic")
    s = make_cubic();
  else if (id == "p2p2")
    s = make_p2p2();
  else if (id == "flag123")
    s = make_flag123();
  else if (id == "p1p1p1")
    s = make_p1p1p1();
  else if (id == "dcover")
    s = make_dcover();
  else if (id == "wps")
    s = make_wps();
  else {
    std::string valid;
    for (const auto& k : family_ids()) valid += (valid.empty() ? "" : ", ") + k;
    throw ConfigError("unknown family \"" + id + "\"; valid ids: " + valid);
  }
  validate(s);
  return s;
}

FamilySpec load_family(const std::string& id) {
  if (std::find(family_ids().begin(), family_ids().end(), id) != family_ids().end()) return embedded_family(id);
  if (const char* path = std::getenv("CONELAB_FAMILY_PATH")) {
    std::stringstream dirs(path);
    std::string dir;
    while (std::getline(dirs, dir, ':')) {
      if (dir.empty()) continue;
      std::filesystem::path file = std::filesystem::path(dir) / (id + ".json");
      if (!std::filesystem::exists(file)) continue;
      std::ifstream in(file);
      std::stringstream buf;
      buf << in.rdbuf();
      FamilySpec s = family_from_json(buf.str());
      if (s.id != id) throw ConfigError("family file " + file.string() + " declares id \"" + s.id + "\"");
      return s;
    }
  }
  return embedded_family(id);  // raises the unknown-id error
}

void validate(FamilySpec& s) {
  const std::size_t dim = s.dim();
  if (s.pairing.curve_basis.size() != dim || s.pairing.matrix.size() != dim)
    throw ConfigError(s.id + ": pairing must be square over the divisor and curve bases");
  for (const auto& row : s.pairing.matrix)
    if (row.size() != dim) throw ConfigError(s.id + ": ragged pairing matrix");
  if (rank(s.pairing.matrix) != dim) throw ConfigError(s.id + ": intersection pairing is degenerate");
  for (const auto& known : kKnown)
    if (s.id == known.id && (s.r != known.r || s.k != known.k))
      throw ConfigError(s.id + ": (r, k) must be (" + std::to_string(known.r) + ", " + std::to_string(known.k) + ")");
  if (s.r < 1 || s.k < 1) throw ConfigError(s.id + ": r and k must be positive");
  if (static_cast<int>(dim) != s.h + s.r) throw ConfigError(s.id + ": basis size must be h + r");
  if (static_cast<int>(s.sections.size()) != s.k) throw ConfigError(s.id + ": number of sections must equal k");
  if (s.fiber.size() != dim || s.anticanonical.size() != dim) throw ConfigError(s.id + ": class dimension mismatch");
  if (pair(s.anticanonical, s.fiber, s.pairing) != 0)
    throw ConfigError(s.id + ": invariant pair(anticanonical, fiber) = 0 violated");
  for (std::size_t i = 0; i < s.sections.size(); ++i) {
    if (s.sections[i].size() != dim) throw ConfigError(s.id + ": section dimension mismatch");
    if (pair(s.sections[i], s.fiber, s.pairing) != 1)
      throw ConfigError(s.id + ": invariant pair(S" + std::to_string(i + 1) + ", fiber) = 1 violated");
  }
  if (s.curve_generators.empty()) throw ConfigError(s.id + ": no curve generators");
  for (const auto& c : s.curve_generators)
    if (c.size() != dim) throw ConfigError(s.id + ": curve generator dimension mismatch");
  for (const auto& d : s.nef_fixture)
    if (d.size() != dim) throw ConfigError(s.id + ": nef fixture dimension mismatch");
  for (const auto& dec : s.catalog.decompositions) {
    if (dec.reference.size() != dim) throw ConfigError(s.id + ": decomposition " + dec.label + " dimension mismatch");
    if (pair(s.anticanonical, dec.reference, s.pairing) != 0)
      throw ConfigError(s.id + ": decomposition " + dec.label + " is not orthogonal to the anticanonical class");
    for (auto p : dec.points)
      if (p >= static_cast<std::size_t>(s.r)) throw ConfigError(s.id + ": decomposition point out of range");
  }
  for (const auto& block : s.symmetry_blocks)
    for (auto p : block)
      if (p >= static_cast<std::size_t>(s.r)) throw ConfigError(s.id + ": symmetry block point out of range");
  for (const auto& m : s.model_fixtures)
    for (const auto& r : m.rays)
      if (r.size() != dim) throw ConfigError(s.id + ": model fixture dimension mismatch");
  try {
    s.frame = RelativeFrame(s.sections, s.anticanonical);
  } catch (const ConfigError& e) {
    throw ConfigError(s.id + ": " + e.what());
  }
}

Cone nef_cone(const FamilySpec& spec) { return dual_cone(spec.curve_generators, spec.pairing.matrix); }

BignessMargin bigness_margin(int n, int j, int r) {
  if (n < 3) throw Error("bigness margin needs n >= 3");
  if (j < 0 || j > r) throw Error("bigness margin needs 0 <= j <= r");
  BignessMargin m;
  Int two_n = Int(1) << n;
  m.total_term = two_n * r;
  m.untouched_term = two_n * (r - j);
  m.touched_term = j;
  m.value = (two_n - 1) * j;
  m.anticanonical = j == 0;
  return m;
}

std::vector<DecompositionTerm> nef_decomposition(const FamilySpec& spec, const std::vector<Int>& a,
                                                 const std::vector<Int>& b) {
  const std::size_t h = static_cast<std::size_t>(spec.h), r = static_cast<std::size_t>(spec.r);
  if (a.size() != h || b.size() != r) throw Error("decomposition needs h H-coefficients and r E-coefficients");
  for (std::size_t i = 0; i < r; ++i) {
    if (b[i] < 0) throw Error("decomposition needs b_i >= 0");
    if (i + 1 < r && b[i] < b[i + 1]) throw Error("decomposition needs b_1 >= ... >= b_r");
  }
  for (const auto& x : a)
    if (x < b[0]) throw Error("decomposition needs every H-coefficient >= b_1");
  std::vector<DecompositionTerm> terms;
  const std::size_t dim = spec.dim();
  for (std::size_t i = 0; i < h; ++i) {
    DivisorClass ray(dim);
    ray[i] = 1;
    terms.push_back({Rat(a[i] - b[0]), ray});
  }
  for (std::size_t j = 0; j < r; ++j) {
    DivisorClass ray(dim);
    for (std::size_t i = 0; i < h; ++i) ray[i] = 1;
    for (std::size_t i = 0; i <= j; ++i) ray[h + i] = -1;
    Int next = j + 1 < r ? b[j + 1] : Int(0);
    terms.push_back({Rat(b[j] - next), ray});
  }
  return terms;
}

AppendixReport appendix_check(int n) {
  AppendixReport rep;
  FamilySpec s = embedded_family("wps");
  rep.picard_rank = static_cast<int>(s.dim());
  // Weights (3, 2, 1, ..., 1) with n ones on a weighted space of dimension
  // n + 1; the hypersurface has degree 6.
  std::vector<int> weights = {3, 2};
  for (int i = 0; i < n; ++i) weights.push_back(1);
  const int d = 6;
  Int prod = 1;
  int sum = 0;
  for (int w : weights) {
    prod *= w;
    sum += w;
  }
  rep.degree = Rat(Int(d), prod);
  rep.degree.canonicalize();
  rep.anticanonical_degree = sum - d;
  Cone nef = nef_cone(s);
  rep.nef_rays = nef.rays.size();
  Cone curves = cone_from_generators(s.curve_generators, s.dim());
  rep.curve_rays = curves.rays.size();
  // Each spanning curve class sweeps out a locus of codimension <= 1: the
  // exceptional line covers E_1 and the fiber covers X. A divisor negative
  // on such a family contains the locus, so it is not movable.
  struct Sweep {
    CurveClass cls;
    int locus_codim;
  };
  std::vector<Sweep> sweeps = {{parse_class("e1", s.curve_basis()), 1}, {s.fiber, 0}};
  bool spanning = true;
  for (const auto& r : curves.rays) {
    bool found = false;
    for (const auto& sw : sweeps)
      if (normalize_ray(sw.cls) == r && sw.locus_codim <= 1) found = true;
    spanning = spanning && found;
  }
  Cone mov_bound = dual_cone({sweeps[0].cls, sweeps[1].cls}, s.pairing.matrix);
  rep.movable_equals_nef = spanning && mov_bound == nef;
  std::vector<ZVector> fixture;
  for (const auto& f : s.nef_fixture) fixture.push_back(normalize_ray(f));
  std::sort(fixture.begin(), fixture.end(), [](const ZVector& x, const ZVector& y) { return lex_less(x, y); });
  auto add = [&](bool ok, const std::string& msg) {
    rep.messages.push_back((ok ? "ok: " : "FAILED: ") + msg);
    return ok;
  };
  bool ok = true;
  ok &= add(rep.picard_rank == 2, "Picard rank " + std::to_string(rep.picard_rank));
  ok &= add(rep.degree == 1, "H^n = 6/" + prod.get_str() + " = " + to_string(rep.degree));
  ok &= add(rep.anticanonical_degree == n - 1,
            "-K_Z = O(" + std::to_string(sum) + "-" + std::to_string(d) + ") = O(" + std::to_string(rep.anticanonical_degree) + ")");
  ok &= add(rep.nef_rays == 2 && nef.rays == fixture, "nef cone has 2 rays {H, H-E1}");
  ok &= add(rep.curve_rays == 2, "curve cone spanned by the exceptional line and the fiber");
  ok &= add(pair(s.anticanonical, s.fiber, s.pairing) == 0, "fiber is anticanonically trivial");
  ok &= add(rep.movable_equals_nef, "movable cone equals nef cone");
  rep.pass = ok;
  return rep;
}

std::vector<std::vector<std::size_t>> relabelings(const FamilySpec& spec) {
  std::vector<std::size_t> id(static_cast<std::size_t>(spec.r));
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
  std::vector<std::vector<std::size_t>> out = {id};
  for (const auto& block : spec.symmetry_blocks) {
    std::vector<std::vector<std::size_t>> next;
    std::vector<std::size_t> sorted = block;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& base : out) {
      std::vector<std::size_t> img = sorted;
      do {
        std::vector<std::size_t> p = base;
        for (std::size_t i = 0; i < sorted.size(); ++i) p[sorted[i]] = img[i];
        next.push_back(p);
      } while (std::next_permutation(img.begin(), img.end()));
    }
    out = std::move(next);
  }
  return out;
}

QVector relabel(const FamilySpec& spec, const QVector& v, const std::vector<std::size_t>& perm) {
  const std::size_t h = static_cast<std::size_t>(spec.h);
  if (v.size() != h + perm.size()) throw Error("relabel: dimension mismatch");
  QVector out(v.size());
  for (std::size_t i = 0; i < h; ++i) out[i] = v[i];
  for (std::size_t i = 0; i < perm.size(); ++i) out[h + perm[i]] = v[h + i];
  return out;
}

std::string family_to_json(const FamilySpec& s) {
  json j;
  j["schema_version"] = 1;
  j["id"] = s.id;
  j["name"] = s.name;
  j["n"] = s.n;
  j["r"] = s.r;
  j["k"] = s.k;
  j["h"] = s.h;
  j["degree"] = s.degree;
  j["appendix"] = s.appendix;
  j["divisor_basis"] = s.pairing.divisor_basis;
  j["curve_basis"] = s.pairing.curve_basis;
  j["pairing"] = list_json(s.pairing.matrix);
  j["curve_generators"] = list_json(s.curve_generators);
  j["fiber_class"] = vec_json(s.fiber);
  j["anticanonical"] = vec_json(s.anticanonical);
  j["sections"] = list_json(s.sections);
  j["nef_fixture"] = list_json(s.nef_fixture);
  json cat;
  cat["rule"] = to_string(s.catalog.rule);
  cat["decompositions"] = json::array();
  for (const auto& d : s.catalog.decompositions) {
    json e;
    e["label"] = d.label;
    e["kind"] = d.kind;
    e["reference"] = vec_json(d.reference);
    e["floppable"] = d.floppable;
    e["multiplicity"] = d.multiplicity;
    e["points"] = d.points;
    cat["decompositions"].push_back(e);
  }
  cat["printed_patterns"] = json::array();
  for (const auto& p : s.catalog.printed_patterns) {
    json e;
    e["label"] = p.label;
    e["base"] = vec_json(p.base);
    e["m_values"] = p.m_values;
    e["bound_only"] = p.bound_only;
    e["covers"] = p.covers;
    cat["printed_patterns"].push_back(e);
  }
  j["flop_catalog"] = cat;
  j["sequence_fixture"] = s.sequence_fixture;
  j["model_nef_fixtures"] = json::array();
  for (const auto& m : s.model_fixtures) {
    json e;
    e["sequence"] = m.sequence;
    e["siblings"] = m.siblings;
    e["printed"] = m.printed;
    e["rays"] = list_json(m.rays);
    j["model_nef_fixtures"].push_back(e);
  }
  j["symmetry_blocks"] = s.symmetry_blocks;
  j["notes"] = s.notes;
  return j.dump(2) + "\n";
}

FamilySpec family_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("family file is not valid JSON: ") + e.what());
  }
  try {
    if (field<int>(j, "schema_version") != 1) throw ConfigError("unsupported family schema_version");
    FamilySpec s;
    s.id = field<std::string>(j, "id");
    s.name = field<std::string>(j, "name");
    s.n = field<int>(j, "n");
    s.r = field<int>(j, "r");
    s.k = field<int>(j, "k");
    s.h = field<int>(j, "h");
    s.degree = j.value("degree", 0);
    s.appendix = j.value("appendix", false);
    s.pairing.divisor_basis = field<std::vector<std::string>>(j, "divisor_basis");
    s.pairing.curve_basis = field<std::vector<std::string>>(j, "curve_basis");
    const std::size_t dim = s.pairing.divisor_basis.size();
    s.pairing.matrix = list_from(field<json>(j, "pairing"), s.pairing.curve_basis.size(), "pairing");
    s.curve_generators = list_from(field<json>(j, "curve_generators"), dim, "curve_generators");
    s.fiber = vec_from(field<json>(j, "fiber_class"), dim, "fiber_class");
    s.anticanonical = vec_from(field<json>(j, "anticanonical"), dim, "anticanonical");
    s.sections = list_from(field<json>(j, "sections"), dim, "sections");
    s.nef_fixture = list_from(field<json>(j, "nef_fixture"), dim, "nef_fixture");
    if (j.contains("flop_catalog")) {
      const json& cat = j.at("flop_catalog");
      s.catalog.rule = flop_rule_from_string(field<std::string>(cat, "rule"));
      for (const auto& e : cat.value("decompositions", json::array())) {
        Decomposition d;
        d.label = field<std::string>(e, "label");
        d.kind = field<std::string>(e, "kind");
        d.reference = vec_from(field<json>(e, "reference"), dim, "decomposition reference");
        d.floppable = e.value("floppable", false);
        d.multiplicity = e.value("multiplicity", 2);
        d.points = e.value("points", std::vector<std::size_t>{});
        s.catalog.decompositions.push_back(std::move(d));
      }
      for (const auto& e : cat.value("printed_patterns", json::array())) {
        LedgerPattern p;
        p.label = field<std::string>(e, "label");
        p.base = vec_from(field<json>(e, "base"), dim, "pattern base");
        p.m_values = field<std::vector<int>>(e, "m_values");
        p.bound_only = e.value("bound_only", false);
        p.covers = e.value("covers", std::vector<std::string>{});
        s.catalog.printed_patterns.push_back(std::move(p));
      }
    }
    s.sequence_fixture = j.value("sequence_fixture", std::vector<std::string>{});
    for (const auto& e : j.value("model_nef_fixtures", json::array())) {
      ModelFixture m;
      m.sequence = field<std::string>(e, "sequence");
      m.siblings = e.value("siblings", std::vector<std::string>{m.sequence});
      m.printed = e.value("printed", std::vector<std::string>{});
      m.rays = list_from(field<json>(e, "rays"), dim, "model fixture rays");
      s.model_fixtures.push_back(std::move(m));
    }
    s.symmetry_blocks = j.value("symmetry_blocks", std::vector<std::vector<std::size_t>>{});
    s.notes = j.value("notes", std::vector<std::string>{});
    validate(s);
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed family file: ") + e.what());
  }
}

} // namespace conelab
