#include "dsamp/formulations.hpp"

#include "dsamp/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace dsamp {

std::string to_string(ModelKind k) {
  switch (k) {
  case ModelKind::Pairing:
    return "pairing";
  case ModelKind::Naive:
    return "naive";
  case ModelKind::NaiveStrengthened:
    return "naive-strengthened";
  case ModelKind::InducedPath:
    return "induced-path";
  case ModelKind::GeneralPath:
    return "general-path";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string &s) {
  for (ModelKind k : {ModelKind::Pairing, ModelKind::Naive,
                      ModelKind::NaiveStrengthened, ModelKind::InducedPath,
                      ModelKind::GeneralPath})
    if (to_string(k) == s)
      return k;
  if (s == "induced")
    return ModelKind::InducedPath;
  if (s == "general")
    return ModelKind::GeneralPath;
  if (s == "strengthened")
    return ModelKind::NaiveStrengthened;
  throw InvalidArgument("unknown model kind '" + s + "'");
}

int IpModel::add_variable(std::string name, VarRole role, int color) {
  if (name.empty() || name.size() > 255)
    throw InvalidArgument("variable name must have 1..255 characters");
  const int id = static_cast<int>(vars_.size());
  if (!index_.emplace(name, id).second)
    throw InvalidArgument("duplicate variable name '" + name + "'");
  vars_.push_back({std::move(name), role, color});
  return id;
}

void IpModel::add_constraint(std::string name, int color,
                             std::vector<Term> terms, Sense sense,
                             std::int64_t rhs) {
  if (name.empty() || name.size() > 255)
    throw InvalidArgument("constraint name must have 1..255 characters");
  if (terms.empty())
    throw InvalidArgument("constraint '" + name + "' has no terms");
  // Merge repeated variables, keeping first-appearance order.
  std::vector<Term> merged;
  for (const Term &t : terms) {
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
      throw InvalidArgument("constraint '" + name + "' references unknown variable");
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Term &m) { return m.var == t.var; });
    if (it == merged.end())
      merged.push_back(t);
    else
      it->coef += t.coef;
  }
  std::erase_if(merged, [](const Term &t) { return t.coef == 0; });
  if (merged.empty())
    throw InvalidArgument("constraint '" + name + "' cancels to nothing");
  if (!cons_index_.emplace(name, static_cast<int>(cons_.size())).second)
    throw InvalidArgument("duplicate constraint name '" + name + "'");
  std::string family = name.substr(0, name.find('_'));
  cons_.push_back({std::move(name), std::move(family), color, std::move(merged),
                   sense, rhs});
}

std::optional<int> IpModel::find(const std::string &name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

int IpModel::at(const std::string &name) const {
  auto id = find(name);
  if (!id)
    throw InvalidArgument("model has no variable '" + name + "'");
  return *id;
}

ModelSize model_size(const IpModel &m) {
  return {m.variables().size(), m.constraints().size()};
}

namespace {

std::string cat(std::initializer_list<std::string_view> parts,
                std::initializer_list<long long> ids) {
  std::string s;
  for (auto p : parts)
    s += p;
  for (long long id : ids) {
    s += '_';
    s += std::to_string(id);
  }
  return s;
}

// Shared naming and the pieces common to the vertex-color models.
class Builder {
public:
  Builder(ModelKind kind, const ModelOptions &opts) : m_(kind), L_(opts.colors) {
    if (opts.colors < 1)
      throw InvalidArgument("color bound must be at least 1");
    for (int i = 1; i <= L_; ++i) {
      const int id = m_.add_variable(cat({"l"}, {i}), VarRole::ColorUsed, 0);
      m_.add_objective(id);
      lam_.push_back(id);
    }
    symmetry_ = opts.symmetry_breaking;
  }

  int L() const { return L_; }
  int lam(int i) const { return lam_[i - 1]; }
  IpModel &model() { return m_; }

  int var(std::string name, VarRole role, int color) {
    return m_.add_variable(std::move(name), role, color);
  }
  int v(const std::string &name) const { return m_.at(name); }

  void row(std::string name, int color, std::vector<Term> terms, Sense s,
           std::int64_t rhs) {
    m_.add_constraint(std::move(name), color, std::move(terms), s, rhs);
  }

  // z, xe and (optionally) the oriented-position variables per color.
  void vertex_edge_vars(const ConflictGraph &g, int i, int positions) {
    for (int u = 0; u < g.num_vertices(); ++u)
      var(cat({"z"}, {i, u}), VarRole::VertexColor, i);
    for (const Edge &e : g.edges())
      if (e.dsa)
        var(cat({"xe"}, {i, e.u, e.v}), VarRole::EdgeColor, i);
    for (int kappa = 0; kappa < positions; ++kappa)
      for (const Edge &e : g.edges())
        if (e.dsa) {
          var(cat({"xo"}, {i, kappa, e.u, e.v}), VarRole::OrientedEdge, i);
          var(cat({"xo"}, {i, kappa, e.v, e.u}), VarRole::OrientedEdge, i);
        }
  }

  int z(int i, int u) const { return v(cat({"z"}, {i, u})); }
  int xe(int i, int u, int w) const {
    return v(cat({"xe"}, {i, std::min(u, w), std::max(u, w)}));
  }
  int xo(int i, int kappa, int from, int to) const {
    return v(cat({"xo"}, {i, kappa, from, to}));
  }

  void assignment_rows(const ConflictGraph &g) {
    for (int u = 0; u < g.num_vertices(); ++u) {
      std::vector<Term> t;
      for (int i = 1; i <= L_; ++i)
        t.push_back({z(i, u), 1});
      row(cat({"assign"}, {u}), 0, std::move(t), Sense::Eq, 1);
    }
  }

  // z_u + z_v - x_uv <= 1 on F, z_u + z_v <= 1 on E \ F.
  void link_and_separation(const ConflictGraph &g, int i) {
    for (const Edge &e : g.edges())
      if (e.dsa)
        row(cat({"link"}, {i, e.u, e.v}), i,
            {{z(i, e.u), 1}, {z(i, e.v), 1}, {xe(i, e.u, e.v), -1}}, Sense::Le, 1);
    for (const Edge &e : g.edges())
      if (!e.dsa)
        row(cat({"sep"}, {i, e.u, e.v}), i, {{z(i, e.u), 1}, {z(i, e.v), 1}},
            Sense::Le, 1);
  }

  void lambda_links(const ConflictGraph &g, int i) {
    for (int u = 0; u < g.num_vertices(); ++u)
      row(cat({"lamz"}, {i, u}), i, {{z(i, u), 1}, {lam(i), -1}}, Sense::Le, 0);
    for (const Edge &e : g.edges())
      if (e.dsa)
        row(cat({"lamxe"}, {i, e.u, e.v}), i,
            {{xe(i, e.u, e.v), 1}, {lam(i), -1}}, Sense::Le, 0);
  }

  void bend_rows(std::span<const Triple> bends, int i) {
    for (const Triple &t : bends)
      row(cat({"bend"}, {i, t[0], t[1], t[2]}), i,
          {{z(i, t[0]), 1}, {z(i, t[1]), 1}, {z(i, t[2]), 1}}, Sense::Le, 2);
  }

  // Start gating, flow conservation, orientation and in-flow rows shared by
  // both path models. `start(i, v)` names the path-start variable.
  template <class StartVar>
  void path_rows(const ConflictGraph &g, int i, int k, StartVar start) {
    for (int u = 0; u < g.num_vertices(); ++u) {
      auto nf = g.dsa_neighbors(u);
      if (nf.empty())
        continue;
      std::vector<Term> t;
      for (int w : nf)
        t.push_back({xo(i, 0, u, w), 1});
      t.push_back({start(i, u), -1});
      row(cat({"start"}, {i, u}), i, std::move(t), Sense::Le, 0);
    }
    for (int kappa = 1; kappa <= k - 2; ++kappa)
      for (int u = 0; u < g.num_vertices(); ++u) {
        auto nf = g.dsa_neighbors(u);
        if (nf.empty())
          continue;
        std::vector<Term> t;
        for (int w : nf)
          t.push_back({xo(i, kappa, u, w), 1});
        for (int w : nf)
          t.push_back({xo(i, kappa - 1, w, u), -1});
        row(cat({"flow"}, {i, kappa, u}), i, std::move(t), Sense::Le, 0);
      }
    for (const Edge &e : g.edges()) {
      if (!e.dsa)
        continue;
      std::vector<Term> t;
      for (int kappa = 0; kappa <= k - 2; ++kappa) {
        t.push_back({xo(i, kappa, e.u, e.v), 1});
        t.push_back({xo(i, kappa, e.v, e.u), 1});
      }
      t.push_back({xe(i, e.u, e.v), -1});
      row(cat({"orient"}, {i, e.u, e.v}), i, std::move(t), Sense::Eq, 0);
    }
    for (int u = 0; u < g.num_vertices(); ++u) {
      std::vector<Term> t{{start(i, u), 1}};
      for (int kappa = 0; kappa <= k - 2; ++kappa)
        for (int w : g.dsa_neighbors(u))
          t.push_back({xo(i, kappa, w, u), 1});
      t.push_back({z(i, u), -1});
      row(cat({"inflow"}, {i, u}), i, std::move(t), Sense::Eq, 0);
    }
  }

  IpModel finish() {
    if (symmetry_)
      for (int i = 1; i < L_; ++i)
        row(cat({"sym"}, {i}), 0, {{lam(i), 1}, {lam(i + 1), -1}}, Sense::Ge, 0);
    return std::move(m_);
  }

private:
  IpModel m_;
  int L_;
  bool symmetry_ = true;
  std::vector<int> lam_;
};

void check_cap(std::size_t vars, const ModelOptions &opts) {
  if (vars > opts.max_variables)
    throw ModelTooLarge(vars, opts.max_variables);
}

} // namespace

IpModel build_pairing(const ConflictGraph &g, const ModelOptions &opts,
                      std::span<const Triple> bends) {
  const std::size_t L = static_cast<std::size_t>(std::max(opts.colors, 0));
  check_cap(L * (g.num_vertices() + g.num_dsa_edges() + 1), opts);
  Builder b(ModelKind::Pairing, opts);
  for (int i = 1; i <= b.L(); ++i)
    b.vertex_edge_vars(g, i, 0);
  b.assignment_rows(g);
  for (int i = 1; i <= b.L(); ++i) {
    b.link_and_separation(g, i);
    for (int u = 0; u < g.num_vertices(); ++u) {
      auto nf = g.dsa_neighbors(u);
      if (nf.empty())
        continue;
      std::vector<Term> t;
      for (int w : nf)
        t.push_back({b.xe(i, u, w), 1});
      b.row(cat({"deg"}, {i, u}), i, std::move(t), Sense::Le, 1);
    }
    b.lambda_links(g, i);
    b.bend_rows(bends, i);
  }
  return b.finish();
}

IpModel build_naive(const GroupCatalog &catalog, const ConflictGraph &g,
                    const ModelOptions &opts, bool strengthened) {
  if (catalog.num_vertices() != g.num_vertices())
    throw InvalidArgument("catalog and graph disagree on vertex count");
  const std::size_t L = static_cast<std::size_t>(std::max(opts.colors, 0));
  check_cap(L * (catalog.size() + 1), opts);
  Builder b(strengthened ? ModelKind::NaiveStrengthened : ModelKind::Naive, opts);
  const int m = static_cast<int>(catalog.size());
  for (int i = 1; i <= b.L(); ++i)
    for (int gi = 0; gi < m; ++gi)
      b.var(cat({"xg"}, {i, gi}), VarRole::GroupColor, i);
  auto xg = [&](int i, int gi) { return b.v(cat({"xg"}, {i, gi})); };

  for (int u = 0; u < g.num_vertices(); ++u) {
    std::vector<Term> t;
    for (int i = 1; i <= b.L(); ++i)
      for (int gi : catalog.membership(u))
        t.push_back({xg(i, gi), 1});
    if (t.empty())
      throw InvalidArgument("catalog does not cover vertex " + std::to_string(u));
    b.row(cat({"cover"}, {u}), 0, std::move(t), Sense::Eq, 1);
  }
  for (int i = 1; i <= b.L(); ++i) {
    if (!strengthened) {
      for (auto [f, h] : catalog.conflicts())
        b.row(cat({"pack"}, {i, f, h}), i, {{xg(i, f), 1}, {xg(i, h), 1}},
              Sense::Le, 1);
    } else {
      // Groups touching either end of a conflict edge pairwise conflict, so
      // at most one of them takes color i. A group holding both ends is
      // counted once.
      for (const Edge &e : g.edges()) {
        std::vector<int> touching;
        for (int gi : catalog.membership(e.u))
          touching.push_back(gi);
        for (int gi : catalog.membership(e.v))
          touching.push_back(gi);
        std::sort(touching.begin(), touching.end());
        touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
        std::vector<Term> t;
        for (int gi : touching)
          t.push_back({xg(i, gi), 1});
        b.row(cat({"clq"}, {i, e.u, e.v}), i, std::move(t), Sense::Le, 1);
      }
    }
    for (int gi = 0; gi < m; ++gi)
      b.row(cat({"lamxg"}, {i, gi}), i, {{xg(i, gi), 1}, {b.lam(i), -1}},
            Sense::Le, 0);
  }
  return b.finish();
}

IpModel build_induced_path(const ConflictGraph &g, int k,
                           const ModelOptions &opts,
                           std::span<const Triple> bends) {
  if (k < 2)
    throw InvalidArgument("path models need k >= 2");
  const std::size_t L = static_cast<std::size_t>(std::max(opts.colors, 0));
  check_cap(L * (1 + 2 * static_cast<std::size_t>(g.num_vertices()) +
                 g.num_dsa_edges() * (1 + 2 * static_cast<std::size_t>(k - 1))),
            opts);
  Builder b(ModelKind::InducedPath, opts);
  for (int i = 1; i <= b.L(); ++i) {
    b.vertex_edge_vars(g, i, k - 1);
    for (int u = 0; u < g.num_vertices(); ++u)
      b.var(cat({"ys"}, {i, u}), VarRole::PathStart, i);
  }
  auto ys = [&](int i, int u) { return b.v(cat({"ys"}, {i, u})); };

  b.assignment_rows(g);
  for (int i = 1; i <= b.L(); ++i) {
    b.path_rows(g, i, k, ys);
    b.link_and_separation(g, i);
    b.lambda_links(g, i);
    b.bend_rows(bends, i);
  }
  return b.finish();
}

std::size_t general_variable_count(std::size_t n, std::size_t dsa_edges, int k,
                                   int colors) {
  const std::size_t L = static_cast<std::size_t>(std::max(colors, 0));
  const std::size_t pos = static_cast<std::size_t>(std::max(k - 1, 0));
  return L * (1 + n + dsa_edges + 2 * pos * dsa_edges + n * n);
}

IpModel build_general(const ConflictGraph &g, int k, const ModelOptions &opts,
                      std::span<const Triple> bends) {
  if (k < 2)
    throw InvalidArgument("path models need k >= 2");
  const int n = g.num_vertices();
  check_cap(general_variable_count(n, g.num_dsa_edges(), k, opts.colors), opts);
  Builder b(ModelKind::GeneralPath, opts);
  for (int i = 1; i <= b.L(); ++i) {
    b.vertex_edge_vars(g, i, k - 1);
    for (int u = 0; u < n; ++u)
      for (int o = 0; o < n; ++o)
        b.var(cat({"yo"}, {i, u, o}), VarRole::PathOrigin, i);
  }
  auto yo = [&](int i, int u, int o) { return b.v(cat({"yo"}, {i, u, o})); };
  auto start = [&](int i, int u) { return yo(i, u, u); };

  for (int i = 1; i <= b.L(); ++i) {
    b.path_rows(g, i, k, start);
    // Origins propagate along chosen edges in both directions.
    for (const Edge &e : g.edges()) {
      if (!e.dsa)
        continue;
      for (int o = 0; o < n; ++o) {
        b.row(cat({"prop"}, {i, e.u, e.v, o}), i,
              {{yo(i, e.u, o), 1}, {b.xe(i, e.u, e.v), 1}, {yo(i, e.v, o), -1}},
              Sense::Le, 1);
        b.row(cat({"propr"}, {i, e.u, e.v, o}), i,
              {{yo(i, e.v, o), 1}, {b.xe(i, e.u, e.v), 1}, {yo(i, e.u, o), -1}},
              Sense::Le, 1);
      }
    }
    for (int u = 0; u < n; ++u) {
      std::vector<Term> t;
      for (int o = 0; o < n; ++o)
        t.push_back({yo(i, u, o), 1});
      t.push_back({b.z(i, u), -1});
      b.row(cat({"origin"}, {i, u}), i, std::move(t), Sense::Eq, 0);
    }
    // Conflicting vias of one color share an origin.
    for (const Edge &e : g.edges())
      for (int o = 0; o < n; ++o) {
        std::vector<Term> t{{yo(i, e.u, o), 1}};
        for (int o2 = 0; o2 < n; ++o2)
          if (o2 != o)
            t.push_back({yo(i, e.v, o2), 1});
        b.row(cat({"sepo"}, {i, e.u, e.v, o}), i, std::move(t), Sense::Le, 1);
      }
  }
  b.assignment_rows(g);
  for (int i = 1; i <= b.L(); ++i) {
    for (int kappa = 0; kappa <= k - 2; ++kappa)
      for (const Edge &e : g.edges())
        if (e.dsa) {
          b.row(cat({"lamxo"}, {i, kappa, e.u, e.v}), i,
                {{b.xo(i, kappa, e.u, e.v), 1}, {b.lam(i), -1}}, Sense::Le, 0);
          b.row(cat({"lamxo"}, {i, kappa, e.v, e.u}), i,
                {{b.xo(i, kappa, e.v, e.u), 1}, {b.lam(i), -1}}, Sense::Le, 0);
        }
    for (int u = 0; u < n; ++u)
      for (int o = 0; o < n; ++o)
        b.row(cat({"lamyo"}, {i, u, o}), i, {{yo(i, u, o), 1}, {b.lam(i), -1}},
              Sense::Le, 0);
    b.lambda_links(g, i);
    b.bend_rows(bends, i);
  }
  return b.finish();
}

// ---------------------------------------------------------------- LP text

namespace {

const char *sense_token(Sense s) {
  switch (s) {
  case Sense::Le:
    return "<=";
  case Sense::Ge:
    return ">=";
  case Sense::Eq:
    return "=";
  }
  return "?";
}

constexpr std::size_t kWrap = 200;

class LineWriter {
public:
  explicit LineWriter(std::ostream &out) : out_(out) {}
  void start(const std::string &head) {
    line_ = head;
  }
  void token(const std::string &tok) {
    if (line_.size() + 1 + tok.size() > kWrap) {
      out_ << line_ << '\n';
      line_ = "  ";
      line_ += tok;
    } else {
      line_ += ' ';
      line_ += tok;
    }
  }
  void flush() {
    out_ << line_ << '\n';
    line_.clear();
  }

private:
  std::ostream &out_;
  std::string line_;
};

void write_terms(LineWriter &w, const IpModel &m, const std::vector<Term> &terms) {
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const Term &t = terms[j];
    const std::string &name = m.variables()[t.var].name;
    const std::int64_t mag = t.coef < 0 ? -t.coef : t.coef;
    std::string tok;
    if (j == 0) {
      tok = t.coef < 0 ? "- " : "";
    } else {
      tok = t.coef < 0 ? "- " : "+ ";
    }
    if (mag != 1)
      tok += std::to_string(mag) + " ";
    tok += name;
    w.token(tok);
  }
}

} // namespace

void write_lp(std::ostream &out, const IpModel &m) {
  out << "\\ dsamp " << to_string(m.kind()) << '\n';
  out << "Minimize\n";
  LineWriter w(out);
  w.start(" obj:");
  for (std::size_t j = 0; j < m.objective().size(); ++j)
    w.token((j ? "+ " : "") + m.variables()[m.objective()[j]].name);
  w.flush();
  out << "Subject To\n";
  for (const Constraint &c : m.constraints()) {
    w.start(" " + c.name + ":");
    write_terms(w, m, c.terms);
    w.token(sense_token(c.sense));
    w.token(std::to_string(c.rhs));
    w.flush();
  }
  out << "Binary\n";
  for (const Variable &v : m.variables())
    out << ' ' << v.name << '\n';
  out << "End\n";
}

void export_lp(const IpModel &m, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write LP file " + path.string());
  write_lp(out, m);
  if (!out)
    throw Error("failed writing LP file " + path.string());
}

namespace {

bool is_cross_color(const std::string &family) {
  return family == "assign" || family == "cover" || family == "sym";
}

std::pair<VarRole, int> role_from_name(const std::string &name, std::size_t line) {
  const auto us = name.find('_');
  if (us == std::string::npos)
    throw ParseError(line, "unrecognised variable '" + name + "'");
  const std::string prefix = name.substr(0, us);
  const auto us2 = name.find('_', us + 1);
  const std::string color_str = name.substr(us + 1, us2 == std::string::npos ? std::string::npos : us2 - us - 1);
  int color = 0;
  try {
    color = std::stoi(color_str);
  } catch (...) {
    throw ParseError(line, "unrecognised variable '" + name + "'");
  }
  static const std::map<std::string, VarRole> roles = {
      {"l", VarRole::ColorUsed},      {"z", VarRole::VertexColor},
      {"xe", VarRole::EdgeColor},     {"xo", VarRole::OrientedEdge},
      {"ys", VarRole::PathStart},     {"yo", VarRole::PathOrigin},
      {"xg", VarRole::GroupColor}};
  auto it = roles.find(prefix);
  if (it == roles.end())
    throw ParseError(line, "unrecognised variable '" + name + "'");
  return {it->second, it->second == VarRole::ColorUsed ? 0 : color};
}

struct RawConstraint {
  std::string name;
  std::vector<std::pair<std::int64_t, std::string>> terms;
  Sense sense = Sense::Le;
  std::int64_t rhs = 0;
  std::size_t line = 0;
};

} // namespace

IpModel parse_lp(std::istream &in) {
  enum class Section { None, Objective, Constraints, Binary, End };
  Section section = Section::None;
  std::optional<ModelKind> kind;
  std::vector<std::string> objective;
  std::vector<RawConstraint> raw;
  std::vector<std::pair<std::string, std::size_t>> binaries;

  // Pending constraint state.
  std::optional<RawConstraint> cur;
  int sign = 1;
  std::int64_t coef = 1;
  bool have_coef = false;
  bool expect_rhs = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '\\') {
      std::istringstream ls(line.substr(1));
      std::string tag, k;
      if (ls >> tag >> k && tag == "dsamp")
        kind = parse_model_kind(k);
      continue;
    }
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first))
      continue;
    std::string lower = first;
    std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
    if (lower == "minimize") {
      section = Section::Objective;
      continue;
    }
    if (lower == "subject") {
      section = Section::Constraints;
      continue;
    }
    if (lower == "binary" || lower == "binaries") {
      if (cur)
        throw ParseError(lineno, "unterminated constraint " + cur->name);
      section = Section::Binary;
      continue;
    }
    if (lower == "end") {
      section = Section::End;
      continue;
    }

    std::vector<std::string> tokens{first};
    for (std::string t; ls >> t;)
      tokens.push_back(t);

    switch (section) {
    case Section::Objective:
      for (const std::string &t : tokens) {
        if (t == "obj:" || t == "+")
          continue;
        objective.push_back(t);
      }
      break;
    case Section::Constraints:
      for (const std::string &t : tokens) {
        if (expect_rhs) {
          try {
            cur->rhs = std::stoll(t);
          } catch (...) {
            throw ParseError(lineno, "bad right-hand side '" + t + "'");
          }
          raw.push_back(std::move(*cur));
          cur.reset();
          expect_rhs = false;
          continue;
        }
        if (!cur) {
          if (t.size() < 2 || t.back() != ':')
            throw ParseError(lineno, "expected constraint name");
          cur = RawConstraint{t.substr(0, t.size() - 1), {}, Sense::Le, 0, lineno};
          sign = 1;
          coef = 1;
          have_coef = false;
          continue;
        }
        if (t == "<=" || t == ">=" || t == "=") {
          cur->sense = t == "<=" ? Sense::Le : t == ">=" ? Sense::Ge : Sense::Eq;
          expect_rhs = true;
          continue;
        }
        if (t == "+" || t == "-") {
          sign = t == "-" ? -1 : 1;
          continue;
        }
        if (std::isdigit(static_cast<unsigned char>(t[0]))) {
          coef = std::stoll(t);
          have_coef = true;
          continue;
        }
        cur->terms.emplace_back(sign * (have_coef ? coef : 1), t);
        sign = 1;
        coef = 1;
        have_coef = false;
      }
      break;
    case Section::Binary:
      for (const std::string &t : tokens)
        binaries.emplace_back(t, lineno);
      break;
    default:
      throw ParseError(lineno, "content outside any section");
    }
  }
  if (section != Section::End)
    throw ParseError(lineno, "missing End");
  if (!kind)
    throw ParseError(1, "missing model kind header");

  IpModel m(*kind);
  for (auto &[name, ln] : binaries) {
    auto [role, color] = role_from_name(name, ln);
    m.add_variable(name, role, color);
  }
  for (const std::string &name : objective) {
    auto id = m.find(name);
    if (!id)
      throw ParseError(2, "objective uses undeclared variable " + name);
    m.add_objective(*id);
  }
  for (RawConstraint &rc : raw) {
    std::vector<Term> terms;
    for (auto &[c, name] : rc.terms) {
      auto id = m.find(name);
      if (!id)
        throw ParseError(rc.line, "undeclared variable " + name);
      terms.push_back({*id, c});
    }
    const std::string family = rc.name.substr(0, rc.name.find('_'));
    int color = 0;
    if (!is_cross_color(family)) {
      const auto a = rc.name.find('_');
      const auto b = rc.name.find('_', a + 1);
      try {
        color = std::stoi(rc.name.substr(a + 1, b - a - 1));
      } catch (...) {
        throw ParseError(rc.line, "constraint name lacks a color: " + rc.name);
      }
    }
    m.add_constraint(rc.name, color, std::move(terms), rc.sense, rc.rhs);
  }
  return m;
}

// ---------------------------------------------------------- checking

CheckResult check_solution(const IpModel &m, const Assignment &a,
                           const CheckOptions &opts) {
  const auto &vars = m.variables();
  std::vector<double> x(vars.size(), 0.0);
  std::vector<std::string> missing;
  CheckResult r;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = a.find(vars[i].name);
    if (it == a.end()) {
      missing.push_back(vars[i].name);
      continue;
    }
    x[i] = it->second;
    if (!opts.relaxed && it->second != 0.0 && it->second != 1.0)
      r.non_binary.push_back(vars[i].name);
  }
  if (!missing.empty())
    throw MissingVariables(std::move(missing));
  if (a.size() != vars.size())
    for (const auto &[name, value] : a)
      if (!m.find(name))
        r.unknown.push_back(name);
  std::sort(r.unknown.begin(), r.unknown.end());

  const double eps = opts.relaxed ? 1e-7 : 1e-9;
  for (const Constraint &c : m.constraints()) {
    if (opts.color && c.color != *opts.color)
      continue;
    double lhs = 0.0;
    for (const Term &t : c.terms)
      lhs += static_cast<double>(t.coef) * x[t.var];
    const double rhs = static_cast<double>(c.rhs);
    const bool ok = c.sense == Sense::Le   ? lhs <= rhs + eps
                    : c.sense == Sense::Ge ? lhs >= rhs - eps
                                           : std::abs(lhs - rhs) <= eps;
    if (ok)
      continue;
    ++r.violation_count;
    if (r.violations.size() < opts.max_violations)
      r.violations.push_back({c.name, c.family, lhs, c.sense, c.rhs});
  }
  for (int id : m.objective())
    r.objective += x[id];
  r.valid = r.violation_count == 0 && r.non_binary.empty() && r.unknown.empty();
  return r;
}

Assignment encode_solution(const IpModel &m, const ConflictGraph &g,
                           const GroupCatalog *catalog,
                           const ColoringSolution &s) {
  Assignment a;
  a.reserve(m.variables().size());
  for (const Variable &v : m.variables())
    a.emplace(v.name, 0.0);
  auto set = [&](const std::string &name) {
    auto it = a.find(name);
    if (it == a.end())
      throw InvalidArgument("solution needs variable '" + name +
                            "' which the model lacks");
    it->second = 1.0;
  };

  std::set<int> colors;
  for (const PlacedGroup &pg : s.groups)
    colors.insert(pg.color);
  for (int c : colors)
    set(cat({"l"}, {c}));

  const ModelKind kind = m.kind();
  for (const PlacedGroup &pg : s.groups) {
    const int i = pg.color;
    const auto &p = pg.path;
    for (std::size_t j = 0; j + 1 < p.size(); ++j)
      if (!g.dsa_adjacent(p[j], p[j + 1]))
        throw InvalidArgument("group path leaves the DSA edges");
    if (kind == ModelKind::Naive || kind == ModelKind::NaiveStrengthened) {
      if (!catalog)
        throw InvalidArgument("naive models need the group catalog");
      auto gi = catalog->find(p);
      if (!gi)
        throw InvalidArgument("group is not in the catalog");
      set(cat({"xg"}, {i, *gi}));
      continue;
    }
    if (kind == ModelKind::Pairing && p.size() > 2)
      throw InvalidArgument("pairing model only admits groups of two");
    for (int v : p)
      set(cat({"z"}, {i, v}));
    for (std::size_t j = 0; j + 1 < p.size(); ++j)
      set(cat({"xe"}, {i, std::min(p[j], p[j + 1]), std::max(p[j], p[j + 1])}));
    if (kind == ModelKind::InducedPath) {
      set(cat({"ys"}, {i, p[0]}));
      for (std::size_t j = 0; j + 1 < p.size(); ++j)
        set(cat({"xo"}, {i, static_cast<long long>(j), p[j], p[j + 1]}));
    } else if (kind == ModelKind::GeneralPath) {
      for (int v : p)
        set(cat({"yo"}, {i, v, p[0]}));
      for (std::size_t j = 0; j + 1 < p.size(); ++j)
        set(cat({"xo"}, {i, static_cast<long long>(j), p[j], p[j + 1]}));
    }
  }
  return a;
}

void write_assignment(std::ostream &out, const IpModel &m, const Assignment &a) {
  double obj = 0.0;
  for (int id : m.objective()) {
    auto it = a.find(m.variables()[id].name);
    if (it != a.end())
      obj += it->second;
  }
  out << "objective " << obj << '\n';
  for (const Variable &v : m.variables()) {
    auto it = a.find(v.name);
    if (it != a.end())
      out << v.name << ' ' << it->second << '\n';
  }
}

Assignment read_assignment(std::istream &in, std::optional<double> *claimed) {
  Assignment a;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name) || name[0] == '#')
      continue;
    double value = 0.0;
    if (!(ls >> value))
      throw ParseError(lineno, "expected '<name> <value>'");
    if (name == "objective") {
      if (claimed)
        *claimed = value;
      continue;
    }
    if (!a.emplace(name, value).second)
      throw ParseError(lineno, "duplicate variable " + name);
  }
  return a;
}

} // namespace dsamp
