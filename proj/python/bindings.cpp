// Python bindings for the main operations. Exact values cross the boundary
// as "p/q" strings; the Python package turns them into Fractions.
#include "conelab/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace conelab;

namespace {

std::vector<std::string> strings(const QVector& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::vector<std::string> strings(const ZVector& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

std::vector<std::vector<std::string>> strings(const std::vector<ZVector>& v) {
  std::vector<std::vector<std::string>> out;
  for (const auto& x : v) out.push_back(strings(x));
  return out;
}

std::vector<ZVector> parse_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<ZVector> out;
  for (const auto& row : rows) {
    QVector q;
    for (const auto& s : row) q.push_back(parse_rational(s));
    out.push_back(normalize_ray(q));
  }
  return out;
}

py::dict cone_dict(const Cone& c) {
  py::dict d;
  d["dim"] = c.dim;
  d["rays"] = strings(c.rays);
  d["lineality"] = strings(c.lineality);
  d["facets"] = strings(c.facets);
  d["equations"] = strings(c.equations);
  return d;
}

py::dict family_dict(const FamilySpec& s) {
  py::dict d;
  d["id"] = s.id;
  d["name"] = s.name;
  d["n"] = s.n;
  d["r"] = s.r;
  d["k"] = s.k;
  d["h"] = s.h;
  d["flop_rule"] = to_string(s.catalog.rule);
  d["divisor_basis"] = s.divisor_basis();
  d["curve_basis"] = s.curve_basis();
  return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact cone computations for movable cones of elliptic fibrations";
  m.attr("__version__") = kVersion;

  // Translators run newest first, so the base class is registered first.
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<FlopError>(m, "FlopError", base);

  m.def("family_ids", &family_ids);
  m.def("family", [](const std::string& id) { return family_dict(load_family(id)); }, py::arg("id"));
  m.def("family_json", [](const std::string& id) { return family_to_json(load_family(id)); }, py::arg("id"));

  m.def("cone_from_generators",
        [](const std::vector<std::vector<std::string>>& gens, std::size_t dim) {
          return cone_dict(cone_from_generators(parse_rows(gens), dim));
        },
        py::arg("generators"), py::arg("dim"));
  m.def("cone_from_inequalities",
        [](const std::vector<std::vector<std::string>>& ineqs, std::size_t dim) {
          return cone_dict(cone_from_inequalities(parse_rows(ineqs), dim));
        },
        py::arg("inequalities"), py::arg("dim"));

  m.def("nef_rays",
        [](const std::string& id) {
          FamilySpec s = load_family(id);
          std::vector<std::string> out;
          for (const auto& r : nef_cone(s).rays) out.push_back(format_class(r, s.divisor_basis()));
          return out;
        },
        py::arg("family"));

  m.def("sequences",
        [](const std::string& id) {
          std::vector<std::string> out;
          for (const auto& q : enumerate_sequences(load_family(id))) out.push_back(q.label());
          return out;
        },
        py::arg("family"));

  m.def("apply_flops",
        [](const std::string& id, const std::vector<std::string>& steps) {
          FamilySpec s = load_family(id);
          MarkedModel mm = initial_model(s);
          for (const auto& st : steps) mm = apply_flop(mm, st);
          std::vector<std::string> ledger;
          for (const auto& e : mm.ledger()) ledger.push_back(format_class(e.cls, s.curve_basis()));
          return ledger;
        },
        py::arg("family"), py::arg("steps"));

  m.def("covering",
        [](const std::string& id) {
          FamilySpec s = load_family(id);
          CoveringReport c = covering_check(s);
          py::dict d;
          d["pass"] = c.pass;
          d["delegated"] = c.delegated;
          d["models"] = c.models;
          d["cells"] = c.cells;
          d["message"] = c.message;
          py::list certs;
          for (const auto& ct : c.certificates) {
            py::dict e;
            e["class"] = ct.cls;
            e["on_slice"] = ct.affine;
            e["min"] = to_string(ct.min_on_slice);
            e["bound"] = to_string(ct.bound);
            e["ok"] = ct.ok;
            certs.append(e);
          }
          d["certificates"] = certs;
          return d;
        },
        py::arg("family"));

  m.def("reduce",
        [](const std::string& id, const std::vector<std::string>& coords, bool sections) {
          FamilySpec s = load_family(id);
          if (coords.size() != static_cast<std::size_t>(s.k)) throw ConfigError("wrong number of coordinates");
          QVector v;
          for (const auto& c : coords) v.push_back(parse_rational(c));
          RelClass y = sections ? v : from_chart(v[0], QVector(v.begin() + 1, v.end()));
          Reduction r = reduce(y);
          py::dict d;
          d["element"] = to_string(r.element);
          d["involution"] = r.element.involution;
          d["translation"] = strings(ZVector(r.element.translation));
          d["reduced"] = strings(r.reduced);
          d["chart"] = strings(to_chart(r.reduced));
          return d;
        },
        py::arg("family"), py::arg("coords"), py::arg("sections") = false);

  m.def("chamber_graph",
        [](const std::string& id) {
          FamilySpec s = load_family(id);
          std::vector<MarkedModel> models = enumerate_models(s);
          ChamberGraph g = chamber_graph(s, models);
          py::dict d;
          d["vertices"] = g.vertices;
          d["connected"] = g.connected;
          py::list edges;
          for (const auto& e : g.edges) edges.append(py::make_tuple(models[e.a].label(), models[e.b].label(), e.wall));
          d["edges"] = edges;
          d["problems"] = g.problems;
          return d;
        },
        py::arg("family"));

  m.def("verify_json",
        [](const std::vector<std::string>& ids, std::uint64_t seed, int radius, std::size_t samples) {
          VerifyOptions o;
          o.seed = seed;
          o.radius = radius;
          o.samples = samples;
          VerificationReport rep;
          {
            py::gil_scoped_release release;
            rep = run_all(ids, o);
          }
          return report_to_string(rep, false);
        },
        py::arg("families"), py::arg("seed") = kDefaultSeed, py::arg("radius") = 0, py::arg("samples") = 1000);
}
