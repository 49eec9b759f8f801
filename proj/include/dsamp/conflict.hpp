#pragma once

#include "dsamp/layout.hpp"

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace dsamp {

struct Edge {
  int u = 0; // u < v
  int v = 0;
  bool dsa = false;

  bool operator==(const Edge &) const = default;
  auto operator<=>(const Edge &) const = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Conflict graph G = (V, E) with the DSA-pairable subset F of E.
///
/// Edges are kept sorted by (u, v) with u < v; adjacency lists are sorted.
/// Positions are optional and only needed by geometric predicates such as
/// bend detection.
class ConflictGraph {
public:
  ConflictGraph() = default;

  /// Builds a graph from an explicit edge list. Duplicate pairs collapse; an
  /// edge is DSA if any copy is flagged DSA. Self-loops are rejected.
  static ConflictGraph from_edges(int n, std::vector<Edge> edges,
                                  std::vector<Point> positions = {});

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_dsa_edges() const { return n_dsa_; }
  const std::vector<Edge> &edges() const { return edges_; }

  std::span<const int> neighbors(int u) const { return adj_[u]; }
  std::span<const int> dsa_neighbors(int u) const { return adj_f_[u]; }
  std::size_t degree(int u) const { return adj_[u].size(); }

  bool adjacent(int u, int v) const;
  bool dsa_adjacent(int u, int v) const;

  bool has_positions() const { return !pos_.empty(); }
  const std::vector<Point> &positions() const { return pos_; }
  const Point &position(int u) const { return pos_[u]; }

  /// Adjacency lists in E, convenient for generic graph routines.
  const std::vector<std::vector<int>> &adjacency() const { return adj_; }

private:
  int n_ = 0;
  std::size_t n_dsa_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<int>> adj_f_;
  std::vector<Point> pos_;
};

/// Classifies one vertex pair. Returns {in E, in F}.
std::pair<bool, bool> classify_pair(const Via &a, const Via &b,
                                    double diameter, const TechRules &rules);

/// Builds G from a layout using a uniform grid index with cells of size
/// litho_dist + diameter.
ConflictGraph build_graph(const Layout &layout, const TechRules &rules);

struct Component {
  std::vector<int> vertices; // original ids, ascending; local id = index
  ConflictGraph graph;
};

/// Connected components of (V, E), largest first (ties by smallest vertex).
std::vector<Component> connected_components(const ConflictGraph &g);

/// Subgraph induced by `vertices` (re-indexed in the given order).
ConflictGraph induced_subgraph(const ConflictGraph &g,
                               std::span<const int> vertices);

struct ComponentStats {
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  std::size_t n_dsa_edges = 0;
  double density = 0.0; // |E| / |V|
  int omega = 0;
  int delta = 0;
};

ComponentStats component_stats(const ConflictGraph &g);

/// Exact maximum clique over sorted adjacency lists. Branch and bound with a
/// greedy-coloring bound, run per vertex over its later neighbors in a
/// degeneracy order so sparse graphs stay cheap.
std::vector<int> maximum_clique(const std::vector<std::vector<int>> &adj);

inline std::vector<int> maximum_clique(const ConflictGraph &g) {
  return maximum_clique(g.adjacency());
}

/// Text dump: `n <count>` then `e u v [dsa]` per edge.
void write_graph(std::ostream &out, const ConflictGraph &g);
ConflictGraph read_graph(std::istream &in);

} // namespace dsamp
