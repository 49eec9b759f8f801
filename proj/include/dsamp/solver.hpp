#pragma once

#include "dsamp/conflict.hpp"
#include "dsamp/groups.hpp"
#include "dsamp/layout.hpp"
#include "dsamp/solution.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace dsamp {

struct SolveBudget {
  double time_limit = 3600.0; // seconds, per component
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  bool parallel_components = true;

  void validate() const;
};

/// Minimum number of colors over all ways of covering the vertices with
/// disjoint catalog groups such that groups of one color never conflict.
///
/// Iterative deepening on the color count from a clique-based lower bound;
/// each step is a depth-first search that always branches on the uncovered
/// vertex with the fewest (group, color) options left. The search is
/// deterministic; the budget only truncates it, in which case the greedy
/// incumbent is returned with optimal == false.
///
/// color_bound > 0 caps the number of colors; a proof that more are needed
/// raises Infeasible.
ColoringSolution solve_exact(const GroupCatalog &catalog, const ConflictGraph &g,
                             const SolveBudget &budget = {}, int color_bound = 0);

/// Sound lower bound used by solve_exact.
int coloring_lower_bound(const GroupCatalog &catalog, const ConflictGraph &g);

/// Exhaustive reference: every partition of V into catalog groups, each
/// colored by exhaustive search. Throws InstanceTooLarge above max_n vertices.
int brute_force_oracle(const GroupCatalog &catalog, const ConflictGraph &g,
                       int max_n = 14);

struct ComponentResult {
  std::vector<int> vertices; // original ids
  ComponentStats stats;
  std::size_t catalog_size = 0;
  ColoringSolution solution; // local ids
};

struct LayoutSolution {
  std::vector<ComponentResult> components; // largest first
  ColoringSolution merged;                 // original ids, shared colors
  double total_time = 0.0;                 // sum over components
  double max_time = 0.0;
};

/// Graph construction, per-component enumeration and solving, then a merge
/// where every component reuses colors 1..c.
LayoutSolution solve_layout(const Layout &layout, const TechRules &rules,
                            const CatalogOptions &catalog_options = {},
                            const SolveBudget &budget = {});

/// Same as solve_layout on an already built graph.
LayoutSolution solve_graph(const ConflictGraph &g, const TechRules &rules,
                           const CatalogOptions &catalog_options = {},
                           const SolveBudget &budget = {});

} // namespace dsamp
