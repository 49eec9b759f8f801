#include "cli.hpp"

#include "report.hpp"

#include "dsamp/conflict.hpp"
#include "dsamp/error.hpp"
#include "dsamp/formulations.hpp"
#include "dsamp/groups.hpp"
#include "dsamp/layout.hpp"
#include "dsamp/render.hpp"
#include "dsamp/solver.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace dsamp::cli {

namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::string input;
  std::string output;
  TechRules rules;
  std::string tech = "193i";
  std::string mode = "induced";
  std::string induced_wrt = "E";
  std::size_t max_groups = CatalogOptions{}.max_groups;
  double rescale = 0.0;
  std::string format = "text";
  std::size_t top = 10;

  // generate
  std::size_t n = 0;
  double density = 1.3;
  std::uint64_t seed = 1;
  double diameter = 10.0;
  bool cluster = false;

  // export-lp / verify
  std::string model = "naive";
  bool whole = false;
  bool no_symmetry = false;
  std::size_t max_variables = ModelOptions{}.max_variables;
  int component = -1;
  std::string lp;
  std::string assignment;
  std::string solution;

  // solve
  double time_limit = SolveBudget{}.time_limit;
  std::uint64_t node_limit = 0;
  bool serial = false;
  std::string report;

  // render
  double scale = RenderOptions{}.px_per_nm;
};

void add_rule_flags(CLI::App *sub, RunConfig &c) {
  sub->add_option("--litho", c.rules.litho_dist, "Lithography distance, border to border (nm)");
  sub->add_option("--l0", c.rules.l0, "Lower DSA pairing distance, center to center (nm)");
  sub->add_option("--u0", c.rules.u0, "Upper DSA pairing distance, center to center (nm)");
  sub->add_option("--tech", c.tech, "Technology: 193i, euv or unrestricted");
  sub->add_option("--angle-min", c.rules.angle_min_deg, "EUV angle window lower end (degrees)");
  sub->add_option("--angle-max", c.rules.angle_max_deg, "EUV angle window upper end (degrees)");
  sub->add_option("-k,--k-max", c.rules.k_max, "Maximum vias per group");
  sub->add_option("-L,--colors", c.rules.color_bound, "Maximum number of colors");
  sub->add_flag("--inclusive", c.rules.inclusive_conflict,
                "Count pairs exactly at the lithography distance as conflicts");
  sub->add_flag("--forbid-l-shapes", c.rules.forbid_l_shapes,
                "Drop right-angle groups under unrestricted rules");
  sub->add_option("--rescale", c.rescale, "Rescale the layout to this pitch first (nm)");
}

void add_catalog_flags(CLI::App *sub, RunConfig &c) {
  sub->add_option("--mode", c.mode, "Group catalog: induced or general")
      ->check(CLI::IsMember({"induced", "general"}));
  sub->add_option("--induced-wrt", c.induced_wrt, "Inducedness against E or F")
      ->check(CLI::IsMember({"E", "F"}));
  sub->add_option("--max-groups", c.max_groups, "Catalog size cap");
}

TechRules resolve_rules(RunConfig &c) {
  c.rules.tech = parse_tech(c.tech);
  c.rules.validate();
  return c.rules;
}

CatalogOptions catalog_options(const RunConfig &c) {
  CatalogOptions o;
  o.mode = c.mode == "general" ? CatalogMode::General : CatalogMode::Induced;
  o.induced_wrt = c.induced_wrt == "F" ? InducedWrt::F : InducedWrt::E;
  o.max_groups = c.max_groups;
  return o;
}

Layout read_input(const RunConfig &c) {
  Layout l = load_layout(c.input);
  if (c.rescale > 0.0)
    l = rescale_to_pitch(l, c.rescale);
  return l;
}

// Writes to the named file, or to `fallback` when the name is empty or "-".
template <class F> void emit(const std::string &path, std::ostream &fallback, F &&body) {
  if (path.empty() || path == "-") {
    body(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error("cannot write " + path);
  body(f);
  if (!f)
    throw Error("failed writing " + path);
}

void write_table(std::ostream &out, const Table &t, const std::string &format) {
  if (format == "csv")
    write_csv(out, t);
  else
    write_text(out, t);
}

std::vector<std::string> stats_row(const std::string &scope, const ComponentStats &s) {
  return {scope,
          std::to_string(s.n_vertices),
          std::to_string(s.n_edges),
          std::to_string(s.n_dsa_edges),
          fixed(s.density, 3),
          std::to_string(s.omega),
          std::to_string(s.delta)};
}

int cmd_stats(RunConfig &c, std::ostream &out) {
  const TechRules rules = resolve_rules(c);
  const Layout layout = read_input(c);
  const ConflictGraph g = build_graph(layout, rules);
  const auto comps = connected_components(g);
  Table t;
  t.header = {"scope", "vertices", "edges", "dsa_edges", "density", "omega", "delta"};
  ComponentStats whole;
  whole.n_vertices = static_cast<std::size_t>(g.num_vertices());
  whole.n_edges = g.num_edges();
  whole.n_dsa_edges = g.num_dsa_edges();
  whole.density = whole.n_vertices ? static_cast<double>(whole.n_edges) / whole.n_vertices : 0.0;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    // The largest clique sits in one component; all of them are scanned.
    const ComponentStats s = component_stats(comps[i].graph);
    whole.omega = std::max(whole.omega, s.omega);
    whole.delta = std::max(whole.delta, s.delta);
    if (c.top == 0 || i < c.top)
      rows.push_back(stats_row("c" + std::to_string(i), s));
  }
  t.rows.push_back(stats_row("graph", whole));
  for (auto &r : rows)
    t.rows.push_back(std::move(r));
  emit(c.output, out, [&](std::ostream &o) { write_table(o, t, c.format); });
  return kOk;
}

int cmd_generate(RunConfig &c, std::ostream &out) {
  const TechRules rules = resolve_rules(c);
  const Layout l = c.cluster ? generate_cluster_layout(c.n, c.density, c.seed, rules, c.diameter)
                             : generate_random_layout(c.n, c.density, c.seed, rules, c.diameter);
  emit(c.output, out, [&](std::ostream &o) { write_layout(o, l); });
  return kOk;
}

IpModel build_model(ModelKind kind, const ConflictGraph &g, const TechRules &rules,
                    const CatalogOptions &co, const ModelOptions &mo,
                    std::optional<GroupCatalog> &catalog) {
  const auto bends = forbidden_bend_triples(g, rules);
  switch (kind) {
  case ModelKind::Pairing:
    return build_pairing(g, mo, bends);
  case ModelKind::Naive:
  case ModelKind::NaiveStrengthened:
    catalog = enumerate_groups(g, rules, co);
    return build_naive(*catalog, g, mo, kind == ModelKind::NaiveStrengthened);
  case ModelKind::InducedPath:
    return build_induced_path(g, rules.k_max, mo, bends);
  case ModelKind::GeneralPath:
    return build_general(g, rules.k_max, mo, bends);
  }
  throw InvalidArgument("unknown model kind");
}

ModelOptions model_options(const RunConfig &c) {
  ModelOptions mo;
  mo.colors = c.rules.color_bound;
  mo.symmetry_breaking = !c.no_symmetry;
  mo.max_variables = c.max_variables;
  return mo;
}

// Components as exported: connected components, or the whole graph.
std::vector<Component> model_parts(const ConflictGraph &g, bool whole) {
  if (!whole)
    return connected_components(g);
  Component all;
  all.vertices.resize(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v)
    all.vertices[v] = v;
  all.graph = g;
  return {all};
}

int cmd_export_lp(RunConfig &c, std::ostream &out, std::ostream &err) {
  const TechRules rules = resolve_rules(c);
  const ModelKind kind = parse_model_kind(c.model);
  const Layout layout = read_input(c);
  const ConflictGraph g = build_graph(layout, rules);
  const auto parts = model_parts(g, c.whole);
  const ModelOptions mo = model_options(c);
  if (kind == ModelKind::GeneralPath)
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto &pg = parts[i].graph;
      const std::size_t need =
          general_variable_count(pg.num_vertices(), pg.num_dsa_edges(), rules.k_max, mo.colors);
      if (need > mo.max_variables) {
        err << "refusing to build general-path model for c" << i << " (" << pg.num_vertices()
            << " vertices): " << need << " variables exceed the cap of " << mo.max_variables
            << '\n';
        return kSizeCap;
      }
    }

  const fs::path prefix = c.output.empty() ? fs::path("model") : fs::path(c.output);
  if (prefix.has_parent_path())
    fs::create_directories(prefix.parent_path());
  Table manifest;
  manifest.header = {"component", "file", "vertices", "variables", "constraints"};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::optional<GroupCatalog> catalog;
    IpModel m = build_model(kind, parts[i].graph, rules, catalog_options(c), mo, catalog);
    const fs::path file = prefix.string() + "_c" + std::to_string(i) + ".lp";
    export_lp(m, file);
    const ModelSize sz = model_size(m);
    manifest.rows.push_back({"c" + std::to_string(i), file.filename().string(),
                             std::to_string(parts[i].vertices.size()),
                             std::to_string(sz.variables), std::to_string(sz.constraints)});
  }
  const std::string manifest_path = prefix.string() + "_manifest.csv";
  emit(manifest_path, out, [&](std::ostream &o) { write_csv(o, manifest); });
  out << "wrote " << parts.size() << " model file(s) and " << manifest_path << '\n';
  return kOk;
}

std::vector<std::string> solve_row(const std::string &scope, std::size_t vertices,
                                   std::size_t edges, std::size_t dsa, std::size_t groups,
                                   const ColoringSolution &s, double time_to_best,
                                   double certify) {
  const double gap =
      s.optimal || s.num_colors == 0
          ? 0.0
          : static_cast<double>(s.num_colors - s.lower_bound) / static_cast<double>(s.num_colors);
  return {scope,
          std::to_string(vertices),
          std::to_string(edges),
          std::to_string(dsa),
          std::to_string(groups),
          std::to_string(s.num_colors),
          std::to_string(s.lower_bound),
          s.optimal ? "yes" : "no",
          fixed(time_to_best, 6),
          s.optimal ? fixed(certify, 6) : "",
          fixed(gap, 4),
          std::to_string(s.nodes)};
}

int cmd_solve(RunConfig &c, std::ostream &out) {
  const TechRules rules = resolve_rules(c);
  const Layout layout = read_input(c);
  SolveBudget budget;
  budget.time_limit = c.time_limit;
  if (c.node_limit)
    budget.node_limit = c.node_limit;
  budget.parallel_components = !c.serial;
  const LayoutSolution res = solve_layout(layout, rules, catalog_options(c), budget);

  Table t;
  t.header = {"scope",     "vertices", "edges",        "dsa_edges",       "groups", "best",
              "bound",     "optimal",  "time_to_best", "time_to_certify", "gap",    "nodes"};
  std::size_t ne = 0, nf = 0, ng = 0;
  double ttb_sum = 0, ttb_max = 0, cert_sum = 0, cert_max = 0;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < res.components.size(); ++i) {
    const auto &cr = res.components[i];
    ne += cr.stats.n_edges;
    nf += cr.stats.n_dsa_edges;
    ng += cr.catalog_size;
    ttb_sum += cr.solution.time_to_best;
    ttb_max = std::max(ttb_max, cr.solution.time_to_best);
    cert_sum += cr.solution.elapsed;
    cert_max = std::max(cert_max, cr.solution.elapsed);
    if (c.top == 0 || i < c.top)
      rows.push_back(solve_row("c" + std::to_string(i), cr.vertices.size(), cr.stats.n_edges,
                               cr.stats.n_dsa_edges, cr.catalog_size, cr.solution,
                               cr.solution.time_to_best, cr.solution.elapsed));
  }
  t.rows.push_back(solve_row("total", layout.size(), ne, nf, ng, res.merged, ttb_sum, cert_sum));
  t.rows.push_back(solve_row("max", layout.size(), ne, nf, ng, res.merged, ttb_max, cert_max));
  for (auto &r : rows)
    t.rows.push_back(std::move(r));

  if (!c.output.empty())
    emit(c.output, out, [&](std::ostream &o) { write_solution(o, res.merged); });
  emit(c.report, out, [&](std::ostream &o) { write_table(o, t, c.format); });
  return res.merged.optimal ? kOk : kBudgetExhausted;
}

ColoringSolution restrict_solution(const ColoringSolution &s, const Component &part) {
  std::vector<int> local(s.color_of.size(), -1);
  for (std::size_t j = 0; j < part.vertices.size(); ++j)
    local[part.vertices[j]] = static_cast<int>(j);
  ColoringSolution r;
  for (const PlacedGroup &pg : s.groups) {
    if (local[pg.path[0]] < 0)
      continue;
    PlacedGroup lg{{}, pg.color};
    for (int v : pg.path) {
      if (local[v] < 0)
        throw InvalidArgument("solution group spans two components");
      lg.path.push_back(local[v]);
    }
    r.groups.push_back(std::move(lg));
  }
  r.index(static_cast<int>(part.vertices.size()));
  return r;
}

int cmd_verify(RunConfig &c, std::ostream &out, std::ostream &err) {
  auto usage = [&](const char *msg) {
    err << "error: " << msg << '\n';
    return kUsage;
  };
  if (c.lp.empty() == c.input.empty())
    return usage("give either --lp or a layout with --model");
  if (c.assignment.empty() == c.solution.empty())
    return usage("give exactly one of --assignment and --solution");
  if (!c.lp.empty() && !c.solution.empty())
    return usage("--solution needs the layout to map groups onto variables");

  IpModel model;
  Assignment a;
  std::optional<double> claimed;
  if (!c.lp.empty()) {
    std::ifstream f(c.lp);
    if (!f)
      throw Error("cannot open " + c.lp);
    model = parse_lp(f);
  }
  if (!c.assignment.empty()) {
    std::ifstream f(c.assignment);
    if (!f)
      throw Error("cannot open " + c.assignment);
    a = read_assignment(f, &claimed);
  }
  if (!c.input.empty()) {
    const TechRules rules = resolve_rules(c);
    const Layout layout = read_input(c);
    const ConflictGraph g = build_graph(layout, rules);
    const auto parts = model_parts(g, c.component < 0);
    const std::size_t idx = c.component < 0 ? 0 : static_cast<std::size_t>(c.component);
    if (idx >= parts.size())
      throw InvalidArgument("component index out of range");
    std::optional<GroupCatalog> catalog;
    model = build_model(parse_model_kind(c.model), parts[idx].graph, rules, catalog_options(c),
                        model_options(c), catalog);
    if (!c.solution.empty()) {
      std::ifstream f(c.solution);
      if (!f)
        throw Error("cannot open " + c.solution);
      const ColoringSolution s = restrict_solution(read_solution(f), parts[idx]);
      a = encode_solution(model, parts[idx].graph, catalog ? &*catalog : nullptr, s);
      claimed = s.num_colors;
    }
  }

  CheckResult r;
  try {
    r = check_solution(model, a);
  } catch (const MissingVariables &e) {
    err << "assignment lacks " << e.names().size() << " model variable(s):";
    for (std::size_t i = 0; i < std::min<std::size_t>(e.names().size(), 20); ++i)
      err << ' ' << e.names()[i];
    err << '\n';
    return kInputError;
  }
  bool ok = r.valid;
  out << "valid " << (r.valid ? "yes" : "no") << '\n';
  out << "objective " << r.objective << '\n';
  out << "violations " << r.violation_count << '\n';
  for (const auto &v : r.violations)
    out << "violated " << v.name << " (" << v.family << ") lhs " << v.lhs << ' '
        << (v.sense == Sense::Le ? "<=" : v.sense == Sense::Ge ? ">=" : "=") << ' ' << v.rhs
        << '\n';
  for (const auto &name : r.non_binary)
    out << "non-binary " << name << '\n';
  for (const auto &name : r.unknown) {
    out << "unknown " << name << '\n';
    ok = false;
  }
  if (claimed && std::abs(*claimed - r.objective) > 1e-9) {
    out << "value mismatch: claimed " << *claimed << ", computed " << r.objective << '\n';
    ok = false;
  }
  return ok ? kOk : kInputError;
}

int cmd_render(RunConfig &c, std::ostream &out) {
  const Layout layout = read_input(c);
  std::optional<ColoringSolution> s;
  if (!c.solution.empty()) {
    std::ifstream f(c.solution);
    if (!f)
      throw Error("cannot open " + c.solution);
    s = read_solution(f);
  }
  RenderOptions o;
  o.px_per_nm = c.scale;
  o.max_colors = c.rules.color_bound;
  emit(c.output, out, [&](std::ostream &os) { render_svg(os, layout, s ? &*s : nullptr, o); });
  return kOk;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  RunConfig c;
  CLI::App app{"DSA-aware multiple patterning for via layouts", "dsamp"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  auto *stats = app.add_subcommand("stats", "Conflict graph and component statistics");
  stats->add_option("input", c.input, "Layout file")->required();
  add_rule_flags(stats, c);
  stats->add_option("--format", c.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  stats->add_option("--top", c.top, "Component rows to list (0 for all)");
  stats->add_option("-o,--output", c.output, "Report file (default stdout)");

  auto *gen = app.add_subcommand("generate", "Random grid-snapped layout");
  gen->add_option("-n,--count", c.n, "Number of vias")->required();
  gen->add_option("--density", c.density, "Target |E|/|V| under the given rules");
  gen->add_option("--seed", c.seed, "Random seed");
  gen->add_option("--diameter", c.diameter, "Via diameter (nm)");
  gen->add_flag("--cluster", c.cluster, "Grow one connected cluster instead of scattering");
  gen->add_option("-o,--output", c.output, "Layout file (default stdout)");
  add_rule_flags(gen, c);

  auto *exp = app.add_subcommand("export-lp", "Write one LP file per component plus a manifest");
  exp->add_option("input", c.input, "Layout file")->required();
  exp->add_option("--model", c.model,
                  "pairing, naive, naive-strengthened, induced-path or general-path");
  exp->add_option("-o,--output", c.output, "Output prefix");
  exp->add_flag("--whole", c.whole, "One model for the whole graph");
  exp->add_flag("--no-symmetry", c.no_symmetry, "Omit the color ordering rows");
  exp->add_option("--max-variables", c.max_variables, "Refuse models above this size");
  add_rule_flags(exp, c);
  add_catalog_flags(exp, c);

  auto *solve = app.add_subcommand("solve", "Exact minimum number of colors");
  solve->add_option("input", c.input, "Layout file")->required();
  solve->add_option("-o,--output", c.output, "Solution file");
  solve->add_option("--report", c.report, "Report file (default stdout)");
  solve->add_option("--format", c.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  solve->add_option("--top", c.top, "Component rows to list (0 for all)");
  solve->add_option("--time-limit", c.time_limit, "Seconds per component");
  solve->add_option("--node-limit", c.node_limit, "Search nodes per component (0: unlimited)");
  solve->add_flag("--serial", c.serial, "Solve components one after another");
  add_rule_flags(solve, c);
  add_catalog_flags(solve, c);

  auto *verify = app.add_subcommand("verify", "Check an assignment against a model");
  verify->add_option("input", c.input, "Layout file (rebuilds the model)");
  verify->add_option("--lp", c.lp, "LP file to check against instead of a layout");
  verify->add_option("--model", c.model, "Model kind when rebuilding from a layout");
  verify->add_option("--component", c.component,
                     "Component index as numbered by export-lp (default: whole graph)");
  verify->add_option("--assignment", c.assignment, "Lines '<variable> <value>'");
  verify->add_option("--solution", c.solution, "Native solution file to encode and check");
  verify->add_flag("--no-symmetry", c.no_symmetry, "Model without color ordering rows");
  verify->add_option("--max-variables", c.max_variables, "Refuse models above this size");
  add_rule_flags(verify, c);
  add_catalog_flags(verify, c);

  auto *render = app.add_subcommand("render", "SVG drawing of a layout and its coloring");
  render->add_option("input", c.input, "Layout file")->required();
  render->add_option("--solution", c.solution, "Solution file to color by");
  render->add_option("-o,--output", c.output, "SVG file (default stdout)");
  render->add_option("--scale", c.scale, "Pixels per nm");
  add_rule_flags(render, c);

  std::vector<const char *> argv{"dsamp"};
  for (const auto &a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (stats->parsed())
      return cmd_stats(c, out);
    if (gen->parsed())
      return cmd_generate(c, out);
    if (exp->parsed())
      return cmd_export_lp(c, out, err);
    if (solve->parsed())
      return cmd_solve(c, out);
    if (verify->parsed())
      return cmd_verify(c, out, err);
    if (render->parsed())
      return cmd_render(c, out);
  } catch (const ModelTooLarge &e) {
    err << "error: " << e.what() << '\n';
    return kSizeCap;
  } catch (const CatalogTooLarge &e) {
    err << "error: " << e.what() << '\n';
    return kSizeCap;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kUsage;
}

} // namespace dsamp::cli
