#pragma once

#include "dsamp/conflict.hpp"
#include "dsamp/layout.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dsamp {

enum class GroupKind { Singleton, InducedPath, HamiltonianPath };

std::string to_string(GroupKind k);

/// Vias sharing one guiding pattern. `path` is a witnessing traversal along
/// DSA edges; for multi-vertex groups path.front() < path.back().
struct Group {
  std::vector<int> path;
  GroupKind kind = GroupKind::Singleton;

  std::size_t size() const { return path.size(); }
  bool operator==(const Group &) const = default;
};

enum class CatalogMode { Induced, General };
enum class InducedWrt { E, F };

struct CatalogOptions {
  CatalogMode mode = CatalogMode::Induced;
  InducedWrt induced_wrt = InducedWrt::E;
  std::size_t max_groups = 5'000'000;
};

/// Feasible groups (singletons first, in vertex order) with the pairwise
/// group-conflict relation.
class GroupCatalog {
public:
  GroupCatalog() = default;
  GroupCatalog(int n_vertices, std::vector<Group> groups,
               std::vector<std::pair<int, int>> conflicts);

  int num_vertices() const { return n_; }
  const std::vector<Group> &groups() const { return groups_; }
  const Group &group(int g) const { return groups_[g]; }
  std::size_t size() const { return groups_.size(); }

  /// Sorted (f, g) pairs with f < g.
  const std::vector<std::pair<int, int>> &conflicts() const { return conflicts_; }
  std::span<const int> conflicting(int g) const { return conflict_adj_[g]; }
  bool in_conflict(int f, int g) const;

  /// Indices of groups containing vertex v, largest groups first.
  std::span<const int> membership(int v) const { return membership_[v]; }

  /// Index of the group with exactly this vertex set.
  std::optional<int> find(std::vector<int> vertices) const;

private:
  int n_ = 0;
  std::vector<Group> groups_;
  std::vector<std::pair<int, int>> conflicts_;
  std::vector<std::vector<int>> conflict_adj_;
  std::vector<std::vector<int>> membership_;
  std::map<std::vector<int>, int> by_set_;
};

using Triple = std::array<int, 3>;

/// Interior angle at `mid` between the rays to `a` and `b`, in degrees within
/// [0, 360). A straight chain measures 180.
double bend_angle_deg(const Point &a, const Point &mid, const Point &b);

/// Triples (u, v, w) with (u,v), (v,w) in F meeting at a right angle at v.
/// Each unordered triple is reported once, with u < w.
std::vector<Triple> l_shape_triples(const ConflictGraph &g);

/// Triples excluded by the technology, as cuts z_u + z_v + z_w <= 2:
/// right-angle bends for 193i (and for unrestricted rules when L-shapes are
/// forbidden), bends outside the angle window for EUV.
std::vector<Triple> forbidden_bend_triples(const ConflictGraph &g,
                                           const TechRules &rules);

/// Whether a path through the given vertices satisfies the technology rules.
bool path_passes_tech(const ConflictGraph &g, std::span<const int> path,
                      const TechRules &rules);

/// All feasible groups of at most rules.k_max vertices, then their conflicts.
/// Throws CatalogTooLarge when more than options.max_groups are found.
GroupCatalog enumerate_groups(const ConflictGraph &g, const TechRules &rules,
                              const CatalogOptions &options = {});

/// (f, g) conflict iff they share a vertex or some E edge joins them.
std::vector<std::pair<int, int>> group_conflicts(std::span<const Group> groups,
                                                 const ConflictGraph &g);

/// `g <kind> v1 v2 ...` per group, then `c i j` per conflict.
void write_catalog(std::ostream &out, const GroupCatalog &catalog);

} // namespace dsamp
