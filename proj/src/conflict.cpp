#include "dsamp/conflict.hpp"

#include "dsamp/error.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace dsamp {

ConflictGraph ConflictGraph::from_edges(int n, std::vector<Edge> edges,
                                        std::vector<Point> positions) {
  if (n < 0)
    throw InvalidArgument("vertex count must be nonnegative");
  if (!positions.empty() && positions.size() != static_cast<std::size_t>(n))
    throw InvalidArgument("positions must cover every vertex");
  for (Edge &e : edges) {
    if (e.u == e.v)
      throw InvalidArgument("self-loop on vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw InvalidArgument("edge endpoint out of range");
    if (e.u > e.v)
      std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  std::vector<Edge> merged;
  for (const Edge &e : edges) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
      merged.back().dsa = merged.back().dsa || e.dsa;
    else
      merged.push_back(e);
  }

  ConflictGraph g;
  g.n_ = n;
  g.edges_ = std::move(merged);
  g.adj_.assign(n, {});
  g.adj_f_.assign(n, {});
  for (const Edge &e : g.edges_) {
    g.adj_[e.u].push_back(e.v);
    g.adj_[e.v].push_back(e.u);
    if (e.dsa) {
      g.adj_f_[e.u].push_back(e.v);
      g.adj_f_[e.v].push_back(e.u);
      ++g.n_dsa_;
    }
  }
  for (int u = 0; u < n; ++u) {
    std::sort(g.adj_[u].begin(), g.adj_[u].end());
    std::sort(g.adj_f_[u].begin(), g.adj_f_[u].end());
  }
  g.pos_ = std::move(positions);
  return g;
}

bool ConflictGraph::adjacent(int u, int v) const {
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

bool ConflictGraph::dsa_adjacent(int u, int v) const {
  return std::binary_search(adj_f_[u].begin(), adj_f_[u].end(), v);
}

std::pair<bool, bool> classify_pair(const Via &a, const Via &b,
                                    double diameter, const TechRules &rules) {
  const double gap = border_distance(a, b, diameter);
  const bool conflict = rules.inclusive_conflict
                            ? tol::less_equal(gap, rules.litho_dist)
                            : tol::less(gap, rules.litho_dist);
  if (!conflict)
    return {false, false};
  const double cd = center_distance(a, b);
  bool dsa = tol::less_equal(rules.l0, cd) && tol::less_equal(cd, rules.u0);
  if (dsa && rules.tech == Tech::Axis193i)
    dsa = std::abs(a.x - b.x) <= tol::kAxis || std::abs(a.y - b.y) <= tol::kAxis;
  return {true, dsa};
}

namespace {

struct CellHash {
  std::size_t operator()(const std::pair<std::int64_t, std::int64_t> &c) const {
    return std::hash<std::int64_t>()(c.first * 0x9E3779B97F4A7C15LL ^ c.second);
  }
};

} // namespace

ConflictGraph build_graph(const Layout &layout, const TechRules &rules) {
  rules.validate();
  const auto &vias = layout.vias();
  const int n = static_cast<int>(vias.size());
  // Widened slightly so tolerance-inclusive neighbors stay in adjacent cells.
  const double cell = (rules.litho_dist + layout.diameter()) * (1.0 + 1e-6);

  using Key = std::pair<std::int64_t, std::int64_t>;
  auto key_of = [&](const Via &v) {
    return Key{static_cast<std::int64_t>(std::floor(v.x / cell)),
               static_cast<std::int64_t>(std::floor(v.y / cell))};
  };
  std::unordered_map<Key, std::vector<int>, CellHash> grid;
  grid.reserve(vias.size());
  for (const Via &v : vias)
    grid[key_of(v)].push_back(v.id);

  std::vector<Edge> edges;
  for (const Via &a : vias) {
    const Key k = key_of(a);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid.find({k.first + dx, k.second + dy});
        if (it == grid.end())
          continue;
        for (int b : it->second) {
          if (b <= a.id)
            continue;
          auto [conflict, dsa] =
              classify_pair(a, vias[b], layout.diameter(), rules);
          if (conflict)
            edges.push_back({a.id, b, dsa});
        }
      }
    }
  }

  std::vector<Point> pos;
  pos.reserve(vias.size());
  for (const Via &v : vias)
    pos.push_back({v.x, v.y});
  return ConflictGraph::from_edges(n, std::move(edges), std::move(pos));
}

ConflictGraph induced_subgraph(const ConflictGraph &g,
                               std::span<const int> vertices) {
  std::unordered_map<int, int> local;
  local.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    local.emplace(vertices[i], static_cast<int>(i));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int u = vertices[i];
    for (int v : g.neighbors(u)) {
      auto it = local.find(v);
      if (it == local.end() || it->second <= static_cast<int>(i))
        continue;
      edges.push_back({static_cast<int>(i), it->second, g.dsa_adjacent(u, v)});
    }
  }
  std::vector<Point> pos;
  if (g.has_positions())
    for (int u : vertices)
      pos.push_back(g.position(u));
  return ConflictGraph::from_edges(static_cast<int>(vertices.size()),
                                   std::move(edges), std::move(pos));
}

std::vector<Component> connected_components(const ConflictGraph &g) {
  const int n = g.num_vertices();
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> parts;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0)
      continue;
    const int id = static_cast<int>(parts.size());
    std::vector<int> part{s};
    label[s] = id;
    for (std::size_t head = 0; head < part.size(); ++head)
      for (int v : g.neighbors(part[head]))
        if (label[v] < 0) {
          label[v] = id;
          part.push_back(v);
        }
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }
  std::stable_sort(parts.begin(), parts.end(),
                   [](const auto &a, const auto &b) { return a.size() > b.size(); });

  std::vector<Component> out;
  out.reserve(parts.size());
  for (auto &p : parts) {
    Component c;
    c.graph = induced_subgraph(g, p);
    c.vertices = std::move(p);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

// Vertices ordered by repeatedly removing a minimum-degree vertex.
std::vector<int> degeneracy_order(const std::vector<std::vector<int>> &adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> deg(n);
  int max_deg = 0;
  for (int u = 0; u < n; ++u) {
    deg[u] = static_cast<int>(adj[u].size());
    max_deg = std::max(max_deg, deg[u]);
  }
  std::vector<std::vector<int>> bucket(max_deg + 1);
  for (int u = n - 1; u >= 0; --u)
    bucket[deg[u]].push_back(u);
  std::vector<char> done(n, 0);
  std::vector<int> order;
  order.reserve(n);
  int d = 0;
  while (static_cast<int>(order.size()) < n) {
    d = std::max(0, d - 1);
    while (bucket[d].empty())
      ++d;
    const int u = bucket[d].back();
    bucket[d].pop_back();
    if (done[u] || deg[u] != d)
      continue;
    done[u] = 1;
    order.push_back(u);
    for (int v : adj[u])
      if (!done[v]) {
        --deg[v];
        bucket[deg[v]].push_back(v);
      }
  }
  return order;
}

class CliqueSearch {
public:
  explicit CliqueSearch(const std::vector<std::vector<int>> &adj) : adj_(adj) {}

  bool adjacent(int u, int v) const {
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  void expand(std::vector<int> &current, const std::vector<int> &cand) {
    if (cand.empty()) {
      if (current.size() > best_.size())
        best_ = current;
      return;
    }
    // Greedy coloring of the candidates gives an upper bound per prefix.
    std::vector<int> order;
    std::vector<int> bound;
    std::vector<std::vector<int>> classes;
    for (int v : cand) {
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool ok = true;
        for (int w : classes[c])
          if (adjacent(v, w)) {
            ok = false;
            break;
          }
        if (ok)
          break;
      }
      if (c == classes.size())
        classes.emplace_back();
      classes[c].push_back(v);
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int v : classes[c]) {
        order.push_back(v);
        bound.push_back(static_cast<int>(c) + 1);
      }

    std::vector<char> removed(order.size(), 0);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + bound[i] <= best_.size())
        return;
      const int v = order[i];
      std::vector<int> next;
      for (std::size_t j = 0; j < i; ++j)
        if (adjacent(v, order[j]))
          next.push_back(order[j]);
      current.push_back(v);
      expand(current, next);
      current.pop_back();
    }
  }

  std::vector<int> best_;

private:
  const std::vector<std::vector<int>> &adj_;
};

} // namespace

std::vector<int> maximum_clique(const std::vector<std::vector<int>> &adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0)
    return {};
  const std::vector<int> order = degeneracy_order(adj);
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i)
    rank[order[i]] = i;

  CliqueSearch search(adj);
  search.best_ = {order.front()};
  for (int v : order) {
    std::vector<int> later;
    for (int w : adj[v])
      if (rank[w] > rank[v])
        later.push_back(w);
    if (later.size() + 1 <= search.best_.size())
      continue;
    std::vector<int> current{v};
    search.expand(current, later);
  }
  std::vector<int> best = search.best_;
  std::sort(best.begin(), best.end());
  return best;
}

ComponentStats component_stats(const ConflictGraph &g) {
  ComponentStats s;
  s.n_vertices = static_cast<std::size_t>(g.num_vertices());
  s.n_edges = g.num_edges();
  s.n_dsa_edges = g.num_dsa_edges();
  if (s.n_vertices == 0)
    return s;
  s.density = static_cast<double>(s.n_edges) / static_cast<double>(s.n_vertices);
  s.omega = static_cast<int>(maximum_clique(g).size());
  for (int u = 0; u < g.num_vertices(); ++u)
    s.delta = std::max(s.delta, static_cast<int>(g.degree(u)));
  return s;
}

void write_graph(std::ostream &out, const ConflictGraph &g) {
  out << "n " << g.num_vertices() << '\n';
  for (const Edge &e : g.edges())
    out << "e " << e.u << ' ' << e.v << (e.dsa ? " dsa" : "") << '\n';
}

ConflictGraph read_graph(std::istream &in) {
  std::string line;
  std::size_t lineno = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "n" && n < 0) {
      if (!(ls >> n) || n < 0)
        throw ParseError(lineno, "malformed vertex count");
    } else if (tag == "e" && n >= 0) {
      Edge e;
      std::string flag;
      if (!(ls >> e.u >> e.v))
        throw ParseError(lineno, "malformed edge");
      if (ls >> flag) {
        if (flag != "dsa")
          throw ParseError(lineno, "unknown edge flag '" + flag + "'");
        e.dsa = true;
      }
      edges.push_back(e);
    } else {
      throw ParseError(lineno, "unexpected record '" + tag + "'");
    }
  }
  if (n < 0)
    throw ParseError(lineno, "missing vertex count");
  return ConflictGraph::from_edges(n, std::move(edges));
}

} // namespace dsamp
