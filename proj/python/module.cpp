#include "dsamp/conflict.hpp"
#include "dsamp/error.hpp"
#include "dsamp/formulations.hpp"
#include "dsamp/groups.hpp"
#include "dsamp/layout.hpp"
#include "dsamp/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace dsamp;

namespace {

CatalogMode parse_mode(const std::string &s) {
  if (s == "induced")
    return CatalogMode::Induced;
  if (s == "general")
    return CatalogMode::General;
  throw InvalidArgument("unknown catalog mode '" + s + "'");
}

py::dict stats_dict(const ComponentStats &s) {
  py::dict d;
  d["vertices"] = s.n_vertices;
  d["edges"] = s.n_edges;
  d["dsa_edges"] = s.n_dsa_edges;
  d["density"] = s.density;
  d["omega"] = s.omega;
  d["delta"] = s.delta;
  return d;
}

py::dict solution_dict(const ColoringSolution &s) {
  py::dict d;
  d["num_colors"] = s.num_colors;
  d["optimal"] = s.optimal;
  d["lower_bound"] = s.lower_bound;
  d["color_of"] = s.color_of;
  d["group_of"] = s.group_of;
  std::vector<std::vector<int>> paths;
  for (const auto &g : s.groups)
    paths.push_back(g.path);
  d["groups"] = paths;
  d["elapsed"] = s.elapsed;
  d["time_to_best"] = s.time_to_best;
  d["nodes"] = s.nodes;
  return d;
}

// Model over the whole graph, with the catalog the naive kinds index into.
struct Built {
  ConflictGraph graph;
  GroupCatalog catalog;
  IpModel model;
};

Built build_model(const Layout &layout, const TechRules &rules, const std::string &kind,
                  int colors, const std::string &mode, bool symmetry) {
  Built b;
  b.graph = build_graph(layout, rules);
  ModelOptions o;
  o.colors = colors;
  o.symmetry_breaking = symmetry;
  const auto bends = forbidden_bend_triples(b.graph, rules);
  CatalogOptions co;
  co.mode = parse_mode(mode);
  b.catalog = enumerate_groups(b.graph, rules, co);
  switch (parse_model_kind(kind)) {
  case ModelKind::Pairing:
    b.model = build_pairing(b.graph, o, bends);
    break;
  case ModelKind::InducedPath:
    b.model = build_induced_path(b.graph, rules.k_max, o, bends);
    break;
  case ModelKind::GeneralPath:
    b.model = build_general(b.graph, rules.k_max, o, bends);
    break;
  case ModelKind::Naive:
  case ModelKind::NaiveStrengthened:
    b.model = build_naive(b.catalog, b.graph, o,
                          parse_model_kind(kind) == ModelKind::NaiveStrengthened);
    break;
  }
  return b;
}

} // namespace

PYBIND11_MODULE(_dsamp, m) {
  m.doc() = "Via layouts, DSA-aware conflict graphs, exact coloring and LP export";
  m.attr("__version__") = "0.1.0";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<ModelTooLarge>(m, "ModelTooLarge", base.ptr());

  py::class_<TechRules>(m, "TechRules")
      .def(py::init<>())
      .def_readwrite("litho_dist", &TechRules::litho_dist)
      .def_readwrite("l0", &TechRules::l0)
      .def_readwrite("u0", &TechRules::u0)
      .def_property(
          "tech", [](const TechRules &r) { return to_string(r.tech); },
          [](TechRules &r, const std::string &s) { r.tech = parse_tech(s); })
      .def_readwrite("angle_min_deg", &TechRules::angle_min_deg)
      .def_readwrite("angle_max_deg", &TechRules::angle_max_deg)
      .def_readwrite("k_max", &TechRules::k_max)
      .def_readwrite("color_bound", &TechRules::color_bound)
      .def_readwrite("inclusive_conflict", &TechRules::inclusive_conflict)
      .def_readwrite("forbid_l_shapes", &TechRules::forbid_l_shapes)
      .def("validate", &TechRules::validate);

  py::class_<Layout>(m, "Layout")
      .def(py::init<>())
      .def_static("from_points",
                  [](const std::vector<std::pair<double, double>> &xy, double diameter) {
                    return Layout::from_points(xy, diameter);
                  },
                  py::arg("points"), py::arg("diameter") = 10.0)
      .def_static("load", [](const std::filesystem::path &p) { return load_layout(p); })
      .def("save", [](const Layout &l, const std::filesystem::path &p) { save_layout(p, l); })
      .def("__len__", &Layout::size)
      .def_property_readonly("diameter", &Layout::diameter)
      .def("points", [](const Layout &l) {
        std::vector<std::pair<double, double>> out;
        for (const Via &v : l.vias())
          out.emplace_back(v.x, v.y);
        return out;
      });

  m.def("generate_random_layout", &generate_random_layout, py::arg("n"),
        py::arg("density"), py::arg("seed"), py::arg("rules") = TechRules{},
        py::arg("diameter") = 10.0);
  m.def("generate_cluster_layout", &generate_cluster_layout, py::arg("n"),
        py::arg("density"), py::arg("seed"), py::arg("rules") = TechRules{},
        py::arg("diameter") = 10.0);

  m.def(
      "graph_stats",
      [](const Layout &l, const TechRules &r) {
        const ConflictGraph g = build_graph(l, r);
        py::dict d = stats_dict(component_stats(g));
        py::list comps;
        for (const auto &c : connected_components(g))
          comps.append(stats_dict(component_stats(c.graph)));
        d["components"] = comps;
        return d;
      },
      py::arg("layout"), py::arg("rules") = TechRules{});

  m.def(
      "edges",
      [](const Layout &l, const TechRules &r) {
        std::vector<std::tuple<int, int, bool>> out;
        for (const Edge &e : build_graph(l, r).edges())
          out.emplace_back(e.u, e.v, e.dsa);
        return out;
      },
      py::arg("layout"), py::arg("rules") = TechRules{},
      "Conflict edges (u, v, is_dsa) with u < v.");

  m.def(
      "solve",
      [](const Layout &l, const TechRules &r, const std::string &mode, double time_limit) {
        CatalogOptions co;
        co.mode = parse_mode(mode);
        SolveBudget b;
        b.time_limit = time_limit;
        LayoutSolution s;
        {
          py::gil_scoped_release release;
          s = solve_layout(l, r, co, b);
        }
        return solution_dict(s.merged);
      },
      py::arg("layout"), py::arg("rules") = TechRules{}, py::arg("mode") = "induced",
      py::arg("time_limit") = 3600.0);

  m.def(
      "export_lp",
      [](const Layout &l, const TechRules &r, const std::string &model, int colors,
         const std::string &mode, bool symmetry) {
        std::ostringstream out;
        write_lp(out, build_model(l, r, model, colors, mode, symmetry).model);
        return out.str();
      },
      py::arg("layout"), py::arg("rules") = TechRules{}, py::arg("model") = "naive",
      py::arg("colors") = 5, py::arg("mode") = "induced", py::arg("symmetry") = true,
      "CPLEX LP text of one model over the whole conflict graph.");

  m.def(
      "native_assignment",
      [](const Layout &l, const TechRules &r, const std::string &model, int colors,
         const std::string &mode, bool symmetry) {
        const Built b = build_model(l, r, model, colors, mode, symmetry);
        const ColoringSolution s = solve_exact(b.catalog, b.graph);
        return encode_solution(b.model, b.graph, &b.catalog, s);
      },
      py::arg("layout"), py::arg("rules") = TechRules{}, py::arg("model") = "naive",
      py::arg("colors") = 5, py::arg("mode") = "induced", py::arg("symmetry") = true,
      "Optimal native coloring written as values of the model's variables.");

  m.def(
      "check_lp",
      [](const std::string &lp, const Assignment &a, bool relaxed) {
        std::istringstream in(lp);
        const IpModel model = parse_lp(in);
        CheckOptions o;
        o.relaxed = relaxed;
        const CheckResult res = check_solution(model, a, o);
        py::dict d;
        d["valid"] = res.valid;
        d["objective"] = res.objective;
        d["violations"] = res.violation_count;
        return d;
      },
      py::arg("lp"), py::arg("assignment"), py::arg("relaxed") = false);
}
