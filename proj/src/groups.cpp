#include "dsamp/groups.hpp"

#include "dsamp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <set>

namespace dsamp {

std::string to_string(GroupKind k) {
  switch (k) {
  case GroupKind::Singleton:
    return "singleton";
  case GroupKind::InducedPath:
    return "induced";
  case GroupKind::HamiltonianPath:
    return "hamiltonian";
  }
  return "?";
}

GroupCatalog::GroupCatalog(int n_vertices, std::vector<Group> groups,
                           std::vector<std::pair<int, int>> conflicts)
    : n_(n_vertices), groups_(std::move(groups)) {
  const int m = static_cast<int>(groups_.size());
  membership_.assign(n_, {});
  for (int g = 0; g < m; ++g) {
    if (groups_[g].path.empty())
      throw InvalidArgument("empty group");
    std::vector<int> key = groups_[g].path;
    for (int v : key) {
      if (v < 0 || v >= n_)
        throw InvalidArgument("group vertex out of range");
      membership_[v].push_back(g);
    }
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end())
      throw InvalidArgument("group repeats a vertex");
    by_set_.emplace(std::move(key), g);
  }
  for (auto &mem : membership_)
    std::stable_sort(mem.begin(), mem.end(), [this](int a, int b) {
      return groups_[a].size() > groups_[b].size();
    });

  for (auto &[f, g] : conflicts) {
    if (f == g || f < 0 || g < 0 || f >= m || g >= m)
      throw InvalidArgument("invalid group conflict pair");
    if (f > g)
      std::swap(f, g);
  }
  std::sort(conflicts.begin(), conflicts.end());
  conflicts.erase(std::unique(conflicts.begin(), conflicts.end()), conflicts.end());
  conflicts_ = std::move(conflicts);
  conflict_adj_.assign(m, {});
  for (auto [f, g] : conflicts_) {
    conflict_adj_[f].push_back(g);
    conflict_adj_[g].push_back(f);
  }
  for (auto &a : conflict_adj_)
    std::sort(a.begin(), a.end());
}

bool GroupCatalog::in_conflict(int f, int g) const {
  const auto &a = conflict_adj_[f];
  return std::binary_search(a.begin(), a.end(), g);
}

std::optional<int> GroupCatalog::find(std::vector<int> vertices) const {
  std::sort(vertices.begin(), vertices.end());
  auto it = by_set_.find(vertices);
  if (it == by_set_.end())
    return std::nullopt;
  return it->second;
}

double bend_angle_deg(const Point &a, const Point &mid, const Point &b) {
  const double ax = a.x - mid.x, ay = a.y - mid.y;
  const double bx = b.x - mid.x, by = b.y - mid.y;
  double deg = std::atan2(ax * by - ay * bx, ax * bx + ay * by) * 180.0 /
               std::numbers::pi;
  if (deg < 0.0)
    deg += 360.0;
  if (deg >= 360.0)
    deg -= 360.0;
  return deg;
}

namespace {

bool is_right_angle(const Point &a, const Point &mid, const Point &b) {
  const double ax = a.x - mid.x, ay = a.y - mid.y;
  const double bx = b.x - mid.x, by = b.y - mid.y;
  const double na = std::hypot(ax, ay), nb = std::hypot(bx, by);
  if (na == 0.0 || nb == 0.0)
    return false;
  const double c = std::clamp((ax * bx + ay * by) / (na * nb), -1.0, 1.0);
  return std::abs(std::acos(c) - std::numbers::pi / 2.0) <= tol::kAngleRad;
}

bool angle_in_window(const Point &a, const Point &mid, const Point &b,
                     const TechRules &rules) {
  const double deg = bend_angle_deg(a, mid, b);
  const double slack = tol::kAngleRad * 180.0 / std::numbers::pi;
  return deg >= rules.angle_min_deg - slack && deg <= rules.angle_max_deg + slack;
}

void require_positions(const ConflictGraph &g) {
  if (!g.has_positions())
    throw InvalidArgument("technology rules need via positions");
}

bool collinear_on_axis(const ConflictGraph &g, std::span<const int> path) {
  bool same_x = true, same_y = true;
  const Point &p0 = g.position(path[0]);
  for (int v : path) {
    same_x = same_x && std::abs(g.position(v).x - p0.x) <= tol::kAxis;
    same_y = same_y && std::abs(g.position(v).y - p0.y) <= tol::kAxis;
  }
  return same_x || same_y;
}

bool has_l_shape(const ConflictGraph &g, std::span<const int> members) {
  for (int v : members)
    for (int u : members)
      for (int w : members)
        if (u < w && u != v && w != v && g.dsa_adjacent(u, v) &&
            g.dsa_adjacent(v, w) &&
            is_right_angle(g.position(u), g.position(v), g.position(w)))
          return true;
  return false;
}

} // namespace

std::vector<Triple> l_shape_triples(const ConflictGraph &g) {
  std::vector<Triple> out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    auto nf = g.dsa_neighbors(v);
    if (nf.size() < 2)
      continue;
    require_positions(g);
    for (std::size_t i = 0; i < nf.size(); ++i)
      for (std::size_t j = i + 1; j < nf.size(); ++j)
        if (is_right_angle(g.position(nf[i]), g.position(v), g.position(nf[j])))
          out.push_back({nf[i], v, nf[j]});
  }
  return out;
}

std::vector<Triple> forbidden_bend_triples(const ConflictGraph &g,
                                           const TechRules &rules) {
  switch (rules.tech) {
  case Tech::Axis193i:
    return l_shape_triples(g);
  case Tech::Unrestricted:
    return rules.forbid_l_shapes ? l_shape_triples(g) : std::vector<Triple>{};
  case Tech::EuvAngle:
    break;
  }
  std::vector<Triple> out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    auto nf = g.dsa_neighbors(v);
    if (nf.size() < 2)
      continue;
    require_positions(g);
    for (std::size_t i = 0; i < nf.size(); ++i)
      for (std::size_t j = i + 1; j < nf.size(); ++j)
        if (!angle_in_window(g.position(nf[i]), g.position(v),
                             g.position(nf[j]), rules))
          out.push_back({nf[i], v, nf[j]});
  }
  return out;
}

bool path_passes_tech(const ConflictGraph &g, std::span<const int> path,
                      const TechRules &rules) {
  if (path.size() < 2)
    return true;
  switch (rules.tech) {
  case Tech::Axis193i:
    require_positions(g);
    return collinear_on_axis(g, path);
  case Tech::EuvAngle:
    if (path.size() < 3)
      return true;
    require_positions(g);
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
      if (!angle_in_window(g.position(path[i - 1]), g.position(path[i]),
                           g.position(path[i + 1]), rules))
        return false;
    return true;
  case Tech::Unrestricted:
    if (!rules.forbid_l_shapes || path.size() < 3)
      return true;
    require_positions(g);
    return !has_l_shape(g, path);
  }
  return true;
}

namespace {

class PathEnumerator {
public:
  PathEnumerator(const ConflictGraph &g, const TechRules &rules,
                 const CatalogOptions &options)
      : g_(g), rules_(rules), options_(options) {}

  std::vector<Group> run() {
    const int n = g_.num_vertices();
    for (int v = 0; v < n; ++v)
      out_.push_back({{v}, GroupKind::Singleton});
    if (rules_.k_max >= 2) {
      for (int s = 0; s < n; ++s) {
        path_ = {s};
        extend();
      }
    }
    // Deterministic order: singletons, then by size and vertex set.
    std::sort(out_.begin() + n, out_.end(), [](const Group &a, const Group &b) {
      if (a.size() != b.size())
        return a.size() < b.size();
      std::vector<int> sa = a.path, sb = b.path;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      return sa < sb;
    });
    return std::move(out_);
  }

private:
  bool blocked_by_chord(int w) const {
    // w may only touch the current endpoint.
    for (std::size_t i = 0; i + 1 < path_.size(); ++i) {
      const int p = path_[i];
      if (options_.induced_wrt == InducedWrt::E ? g_.adjacent(p, w)
                                                : g_.dsa_adjacent(p, w))
        return true;
    }
    return false;
  }

  bool induced_in_e(const std::vector<int> &path) const {
    for (std::size_t i = 0; i < path.size(); ++i)
      for (std::size_t j = i + 2; j < path.size(); ++j)
        if (g_.adjacent(path[i], path[j]))
          return false;
    return true;
  }

  void emit() {
    if (path_.front() > path_.back())
      return;
    if (options_.mode == CatalogMode::Induced) {
      push({path_, GroupKind::InducedPath});
      return;
    }
    std::vector<int> key = path_;
    std::sort(key.begin(), key.end());
    if (!seen_.insert(std::move(key)).second)
      return;
    push({path_, induced_in_e(path_) ? GroupKind::InducedPath
                                     : GroupKind::HamiltonianPath});
  }

  void push(Group g) {
    if (out_.size() >= options_.max_groups) {
      std::vector<std::size_t> count(g_.num_vertices(), 0);
      for (const Group &h : out_)
        for (int v : h.path)
          ++count[v];
      const auto worst = std::max_element(count.begin(), count.end());
      throw CatalogTooLarge(out_.size() + 1,
                            static_cast<int>(worst - count.begin()), *worst);
    }
    out_.push_back(std::move(g));
  }

  void extend() {
    if (static_cast<int>(path_.size()) >= rules_.k_max)
      return;
    const int last = path_.back();
    for (int w : g_.dsa_neighbors(last)) {
      if (std::find(path_.begin(), path_.end(), w) != path_.end())
        continue;
      if (options_.mode == CatalogMode::Induced && blocked_by_chord(w))
        continue;
      path_.push_back(w);
      // Every technology filter is inherited by sub-paths, so prune early.
      if (path_passes_tech(g_, path_, rules_)) {
        emit();
        extend();
      }
      path_.pop_back();
    }
  }

  const ConflictGraph &g_;
  const TechRules &rules_;
  const CatalogOptions &options_;
  std::vector<int> path_;
  std::vector<Group> out_;
  std::set<std::vector<int>> seen_;
};

} // namespace

std::vector<std::pair<int, int>> group_conflicts(std::span<const Group> groups,
                                                 const ConflictGraph &g) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> member(n);
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (int v : groups[i].path)
      member[v].push_back(static_cast<int>(i));

  std::vector<std::pair<int, int>> out;
  std::vector<int> cand;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    cand.clear();
    for (int u : groups[i].path) {
      cand.insert(cand.end(), member[u].begin(), member[u].end());
      for (int w : g.neighbors(u))
        cand.insert(cand.end(), member[w].begin(), member[w].end());
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (int j : cand)
      if (j > static_cast<int>(i))
        out.emplace_back(static_cast<int>(i), j);
  }
  return out;
}

GroupCatalog enumerate_groups(const ConflictGraph &g, const TechRules &rules,
                              const CatalogOptions &options) {
  if (rules.k_max < 1)
    throw InvalidArgument("k_max must be at least 1");
  PathEnumerator walker(g, rules, options);
  std::vector<Group> groups = walker.run();
  auto conflicts = group_conflicts(groups, g);
  return GroupCatalog(g.num_vertices(), std::move(groups), std::move(conflicts));
}

void write_catalog(std::ostream &out, const GroupCatalog &catalog) {
  for (const Group &g : catalog.groups()) {
    out << "g " << to_string(g.kind);
    for (int v : g.path)
      out << ' ' << v;
    out << '\n';
  }
  for (auto [f, g] : catalog.conflicts())
    out << "c " << f << ' ' << g << '\n';
}

} // namespace dsamp
