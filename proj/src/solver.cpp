#include "dsamp/solver.hpp"

#include "dsamp/error.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <set>
#include <thread>

namespace dsamp {

void SolveBudget::validate() const {
  if (!(time_limit > 0.0))
    throw InvalidArgument("time limit must be positive");
  if (node_limit == 0)
    throw InvalidArgument("node limit must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_cover(const GroupCatalog &catalog, const ConflictGraph &g) {
  if (catalog.num_vertices() != g.num_vertices())
    throw InvalidArgument("catalog and graph disagree on vertex count");
  for (int v = 0; v < g.num_vertices(); ++v)
    if (catalog.membership(v).empty())
      throw InvalidArgument("catalog does not cover vertex " + std::to_string(v));
}

// Fewest traces g ∩ K partitioning the clique K. Exact for small cliques.
int clique_cover_bound(const GroupCatalog &catalog, const std::vector<int> &clique) {
  const int q = static_cast<int>(clique.size());
  if (q == 0)
    return 0;
  std::size_t largest = 1;
  for (const Group &grp : catalog.groups())
    largest = std::max(largest, grp.size());
  if (q > 20)
    return static_cast<int>((clique.size() + largest - 1) / largest);

  std::set<std::uint32_t> traces;
  for (int j = 0; j < q; ++j)
    for (int gi : catalog.membership(clique[j])) {
      std::uint32_t mask = 0;
      for (int u : catalog.group(gi).path) {
        auto it = std::find(clique.begin(), clique.end(), u);
        if (it != clique.end())
          mask |= 1u << (it - clique.begin());
      }
      traces.insert(mask);
    }
  const std::uint32_t full = (q == 32) ? ~0u : ((1u << q) - 1);
  std::vector<int> best(std::size_t{1} << q, q + 1);
  best[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int low = std::countr_zero(s);
    for (std::uint32_t t : traces)
      if ((t >> low) & 1u && (t & ~s) == 0)
        best[s] = std::min(best[s], best[s & ~t] + 1);
  }
  return best[full];
}

} // namespace

int coloring_lower_bound(const GroupCatalog &catalog, const ConflictGraph &g) {
  const int n = g.num_vertices();
  if (n == 0)
    return 0;
  int bound = 1;

  // (a) Vertices that can only stand alone: pairwise conflicting singletons
  // need distinct colors.
  std::vector<int> solo(n, -1);
  std::vector<int> solo_ids;
  for (int v = 0; v < n; ++v) {
    auto mem = catalog.membership(v);
    if (mem.size() == 1 && catalog.group(mem[0]).size() == 1) {
      solo[v] = static_cast<int>(solo_ids.size());
      solo_ids.push_back(v);
    }
  }
  if (!solo_ids.empty()) {
    std::vector<std::vector<int>> adj(solo_ids.size());
    for (std::size_t a = 0; a < solo_ids.size(); ++a) {
      const int ga = catalog.membership(solo_ids[a])[0];
      for (int w : g.neighbors(solo_ids[a]))
        if (solo[w] >= 0 && catalog.in_conflict(ga, catalog.membership(w)[0]))
          adj[a].push_back(solo[w]);
      std::sort(adj[a].begin(), adj[a].end());
    }
    bound = std::max(bound, static_cast<int>(maximum_clique(adj).size()));
  }

  // (b) A color class meets a clique of G inside a single group, provided any
  // two groups holding distinct clique members conflict.
  const std::vector<int> clique = maximum_clique(g);
  bool separated = true;
  for (std::size_t a = 0; a < clique.size() && separated; ++a)
    for (std::size_t b = a + 1; b < clique.size() && separated; ++b)
      for (int f : catalog.membership(clique[a]))
        for (int h : catalog.membership(clique[b]))
          if (f != h && !catalog.in_conflict(f, h))
            separated = false;
  if (separated)
    bound = std::max(bound, clique_cover_bound(catalog, clique));
  return bound;
}

namespace {

class GroupColoringSearch {
public:
  GroupColoringSearch(const GroupCatalog &catalog, const ConflictGraph &g,
                      const SolveBudget &budget, Clock::time_point t0)
      : cat_(catalog), g_(g), budget_(budget), t0_(t0), n_(g.num_vertices()),
        m_(static_cast<int>(catalog.size())) {}

  // Greedy descent with unlimited colors; always succeeds.
  std::vector<PlacedGroup> greedy() {
    reset(n_);
    std::vector<PlacedGroup> out;
    for (int covered = 0; covered < n_;) {
      const int v = pick_vertex();
      const auto [gi, c] = first_option(v);
      place(gi, c);
      covered += static_cast<int>(cat_.group(gi).size());
    }
    for (const auto &[gi, c] : stack_)
      out.push_back({cat_.group(gi).path, c + 1});
    return out;
  }

  enum class Outcome { Found, Exhausted, Aborted };

  Outcome decide(int colors) {
    reset(colors);
    found_.clear();
    aborted_ = false;
    const bool ok = dfs(0);
    if (ok)
      return Outcome::Found;
    return aborted_ ? Outcome::Aborted : Outcome::Exhausted;
  }

  const std::vector<PlacedGroup> &found() const { return found_; }
  std::uint64_t nodes() const { return nodes_; }

private:
  void reset(int colors) {
    colors_ = colors;
    used_ = 0;
    gcolor_.assign(m_, -1);
    vcolor_.assign(n_, -1);
    touched_.assign(m_, 0);
    blocked_.assign(static_cast<std::size_t>(m_) * colors, 0);
    stack_.clear();
  }

  int &blocked(int gi, int c) { return blocked_[static_cast<std::size_t>(gi) * colors_ + c]; }

  int color_limit() const { return std::min(used_ + 1, colors_); }

  int count_options(int v, int cap) {
    int count = 0;
    const int lim = color_limit();
    for (int gi : cat_.membership(v)) {
      if (touched_[gi])
        continue;
      for (int c = 0; c < lim; ++c)
        if (blocked(gi, c) == 0 && ++count >= cap)
          return count;
    }
    return count;
  }

  // Uncovered vertex with the fewest options; ties by degree, then id.
  // Returns -1 when some vertex has none.
  int pick_vertex() {
    int best = -2, best_count = std::numeric_limits<int>::max();
    for (int v = 0; v < n_; ++v) {
      if (vcolor_[v] >= 0)
        continue;
      const int cnt = count_options(v, best_count);
      if (cnt == 0)
        return -1;
      if (cnt < best_count ||
          (cnt == best_count && g_.degree(v) > g_.degree(best))) {
        best = v;
        best_count = cnt;
      }
    }
    return best;
  }

  std::pair<int, int> first_option(int v) {
    const int lim = color_limit();
    for (int gi : cat_.membership(v)) {
      if (touched_[gi])
        continue;
      for (int c = 0; c < lim; ++c)
        if (blocked(gi, c) == 0)
          return {gi, c};
    }
    throw Error("internal: no option for vertex " + std::to_string(v));
  }

  void place(int gi, int c) {
    gcolor_[gi] = c;
    for (int u : cat_.group(gi).path) {
      vcolor_[u] = c;
      for (int f : cat_.membership(u))
        ++touched_[f];
    }
    for (int f : cat_.conflicting(gi))
      ++blocked(f, c);
    stack_.emplace_back(gi, c);
    used_ = std::max(used_, c + 1);
    ++nodes_;
  }

  void unplace(int prev_used) {
    const auto [gi, c] = stack_.back();
    stack_.pop_back();
    for (int f : cat_.conflicting(gi))
      --blocked(f, c);
    for (int u : cat_.group(gi).path) {
      vcolor_[u] = -1;
      for (int f : cat_.membership(u))
        --touched_[f];
    }
    gcolor_[gi] = -1;
    used_ = prev_used;
  }

  bool out_of_budget() {
    if (nodes_ >= budget_.node_limit)
      return true;
    if ((nodes_ & 255) == 0 && seconds_since(t0_) > budget_.time_limit)
      return true;
    return false;
  }

  bool dfs(int covered) {
    if (covered == n_) {
      for (const auto &[gi, c] : stack_)
        found_.push_back({cat_.group(gi).path, c + 1});
      return true;
    }
    if (out_of_budget()) {
      aborted_ = true;
      return false;
    }
    const int v = pick_vertex();
    if (v < 0)
      return false;
    const int lim = color_limit();
    for (int gi : cat_.membership(v)) {
      if (touched_[gi])
        continue;
      for (int c = 0; c < lim; ++c) {
        if (blocked(gi, c) != 0)
          continue;
        const int prev_used = used_;
        place(gi, c);
        const bool ok = dfs(covered + static_cast<int>(cat_.group(gi).size()));
        unplace(prev_used);
        if (ok)
          return true;
        if (aborted_)
          return false;
      }
    }
    return false;
  }

  const GroupCatalog &cat_;
  const ConflictGraph &g_;
  const SolveBudget &budget_;
  Clock::time_point t0_;
  int n_;
  int m_;
  int colors_ = 0;
  int used_ = 0;
  std::vector<int> gcolor_, vcolor_, touched_, blocked_;
  std::vector<std::pair<int, int>> stack_;
  std::vector<PlacedGroup> found_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

} // namespace

ColoringSolution solve_exact(const GroupCatalog &catalog, const ConflictGraph &g,
                             const SolveBudget &budget, int color_bound) {
  budget.validate();
  require_cover(catalog, g);
  const auto t0 = Clock::now();
  const int n = g.num_vertices();
  ColoringSolution sol;
  if (n == 0) {
    sol.optimal = true;
    sol.index(0);
    return sol;
  }

  int lower = coloring_lower_bound(catalog, g);
  if (color_bound > 0 && lower > color_bound)
    throw Infeasible(color_bound, lower);

  GroupColoringSearch search(catalog, g, budget, t0);
  sol.groups = search.greedy();
  sol.index(n);
  sol.time_to_best = seconds_since(t0);

  bool proven = true;
  for (int c = lower; c < sol.num_colors; ++c) {
    if (color_bound > 0 && c > color_bound)
      break;
    const auto outcome = search.decide(c);
    if (outcome == GroupColoringSearch::Outcome::Found) {
      sol.groups = search.found();
      sol.index(n);
      sol.time_to_best = seconds_since(t0);
      break;
    }
    if (outcome == GroupColoringSearch::Outcome::Aborted) {
      proven = false;
      break;
    }
    lower = c + 1;
  }
  if (proven && (color_bound <= 0 || sol.num_colors <= color_bound))
    lower = sol.num_colors;
  sol.optimal = proven && lower == sol.num_colors;
  sol.lower_bound = lower;
  sol.nodes = search.nodes();
  sol.elapsed = seconds_since(t0);
  if (color_bound > 0 && lower > color_bound)
    throw Infeasible(color_bound, lower);
  return sol;
}

namespace {

// Reference search kept deliberately plain: partitions first, then colors.
class Oracle {
public:
  Oracle(const GroupCatalog &cat, int n) : cat_(cat), n_(n) {
    for (const Group &grp : cat.groups()) {
      std::uint32_t mask = 0;
      for (int v : grp.path)
        mask |= 1u << v;
      masks_.push_back(mask);
    }
    best_ = n;
  }

  int run() {
    partition(0);
    return best_;
  }

private:
  void partition(std::uint32_t covered) {
    const std::uint32_t full = (1u << n_) - 1;
    if (covered == full) {
      best_ = std::min(best_, chromatic(best_ - 1));
      return;
    }
    const int v = std::countr_zero(~covered);
    for (std::size_t gi = 0; gi < masks_.size(); ++gi) {
      if (!((masks_[gi] >> v) & 1u) || (masks_[gi] & covered))
        continue;
      chosen_.push_back(static_cast<int>(gi));
      partition(covered | masks_[gi]);
      chosen_.pop_back();
    }
  }

  // Smallest proper coloring of the chosen groups using at most `limit`
  // colors, or limit + 1 when none exists.
  int chromatic(int limit) {
    for (int c = 1; c <= limit; ++c) {
      colors_.assign(chosen_.size(), -1);
      if (colorable(0, c, 0))
        return c;
    }
    return limit + 1;
  }

  bool colorable(std::size_t idx, int c, int used) {
    if (idx == chosen_.size())
      return true;
    for (int col = 0; col < std::min(used + 1, c); ++col) {
      bool ok = true;
      for (std::size_t j = 0; j < idx && ok; ++j)
        if (colors_[j] == col && cat_.in_conflict(chosen_[j], chosen_[idx]))
          ok = false;
      if (!ok)
        continue;
      colors_[idx] = col;
      if (colorable(idx + 1, c, std::max(used, col + 1)))
        return true;
    }
    colors_[idx] = -1;
    return false;
  }

  const GroupCatalog &cat_;
  int n_;
  std::vector<std::uint32_t> masks_;
  std::vector<int> chosen_;
  std::vector<int> colors_;
  int best_;
};

} // namespace

int brute_force_oracle(const GroupCatalog &catalog, const ConflictGraph &g,
                       int max_n) {
  const int n = g.num_vertices();
  if (n > max_n || n > 31)
    throw InstanceTooLarge("oracle accepts at most " + std::to_string(std::min(max_n, 31)) +
                           " vertices, got " + std::to_string(n));
  require_cover(catalog, g);
  if (n == 0)
    return 0;
  return Oracle(catalog, n).run();
}

LayoutSolution solve_graph(const ConflictGraph &g, const TechRules &rules,
                           const CatalogOptions &catalog_options,
                           const SolveBudget &budget) {
  rules.validate();
  budget.validate();
  std::vector<Component> comps = connected_components(g);
  LayoutSolution out;
  out.components.resize(comps.size());
  std::vector<double> times(comps.size(), 0.0);
  std::vector<std::exception_ptr> errors(comps.size());

  auto work = [&](std::size_t idx) {
    try {
      const auto t0 = Clock::now();
      const Component &c = comps[idx];
      ComponentResult &r = out.components[idx];
      r.vertices = c.vertices;
      r.stats = component_stats(c.graph);
      GroupCatalog catalog = enumerate_groups(c.graph, rules, catalog_options);
      r.catalog_size = catalog.size();
      r.solution = solve_exact(catalog, c.graph, budget, rules.color_bound);
      times[idx] = seconds_since(t0);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  };

  const std::size_t workers =
      budget.parallel_components
          ? std::min<std::size_t>(comps.size(),
                                  std::max(1u, std::thread::hardware_concurrency()))
          : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < comps.size(); ++i)
      work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < comps.size();)
          work(i);
      });
  }
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);

  ColoringSolution &merged = out.merged;
  merged.optimal = true;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const ComponentResult &r = out.components[i];
    for (const PlacedGroup &pg : r.solution.groups) {
      PlacedGroup mapped{{}, pg.color};
      for (int v : pg.path)
        mapped.path.push_back(r.vertices[v]);
      merged.groups.push_back(std::move(mapped));
    }
    merged.optimal = merged.optimal && r.solution.optimal;
    merged.lower_bound = std::max(merged.lower_bound, r.solution.lower_bound);
    merged.nodes += r.solution.nodes;
    merged.time_to_best = std::max(merged.time_to_best, r.solution.time_to_best);
    out.total_time += times[i];
    out.max_time = std::max(out.max_time, times[i]);
  }
  merged.index(g.num_vertices());
  merged.elapsed = out.total_time;
  return out;
}

LayoutSolution solve_layout(const Layout &layout, const TechRules &rules,
                            const CatalogOptions &catalog_options,
                            const SolveBudget &budget) {
  return solve_graph(build_graph(layout, rules), rules, catalog_options, budget);
}

} // namespace dsamp
