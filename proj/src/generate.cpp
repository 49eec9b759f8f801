#include "dsamp/conflict.hpp"
#include "dsamp/error.hpp"
#include "dsamp/layout.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <unordered_set>

namespace dsamp {

namespace {

// Unbiased draw in [0, bound) straight from the engine output, so layouts are
// identical across standard library implementations.
std::uint64_t draw(std::mt19937_64 &rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

// Places n vias on an m x m lattice of pitch `step`, never closer than two
// steps (center to center). Returns nullopt when the square is too crowded.
std::optional<std::vector<std::pair<double, double>>>
place(std::size_t n, std::int64_t m, double step, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(m));
  std::unordered_set<std::int64_t> taken;
  auto cell = [m](std::int64_t ix, std::int64_t iy) { return ix * m + iy; };
  std::vector<std::pair<double, double>> xy;
  xy.reserve(n);
  std::size_t attempts = 0;
  const std::size_t max_attempts = 200 * n + 1000;
  while (xy.size() < n) {
    if (++attempts > max_attempts)
      return std::nullopt;
    const auto ix = static_cast<std::int64_t>(draw(rng, m));
    const auto iy = static_cast<std::int64_t>(draw(rng, m));
    bool clear = true;
    for (std::int64_t dx = -1; dx <= 1 && clear; ++dx)
      for (std::int64_t dy = -1; dy <= 1 && clear; ++dy) {
        const std::int64_t jx = ix + dx, jy = iy + dy;
        if (jx >= 0 && jy >= 0 && jx < m && jy < m && taken.count(cell(jx, jy)))
          clear = false;
      }
    if (!clear)
      continue;
    taken.insert(cell(ix, iy));
    xy.emplace_back(static_cast<double>(ix) * step, static_cast<double>(iy) * step);
  }
  return xy;
}

} // namespace

Layout generate_random_layout(std::size_t n, double density_target,
                              std::uint64_t seed, const TechRules &rules,
                              double diameter) {
  rules.validate();
  if (!(diameter > 0.0))
    throw InvalidArgument("via diameter must be positive");
  if (n == 0)
    return Layout({}, diameter, seed);
  if (!(density_target >= 0.0))
    throw InvalidArgument("density target must be nonnegative");
  const double max_density = (static_cast<double>(n) - 1.0) / 2.0;
  if (density_target > max_density + 1e-12)
    throw DensityUnreachable(density_target, max_density);

  // Lattice pitch equals the diameter; the two-step exclusion keeps centers at
  // least two diameters apart, so vias never touch.
  const double step = diameter;
  const double reach = rules.litho_dist + diameter;
  const double annulus =
      std::numbers::pi * std::max(reach * reach - 4.0 * step * step, step * step);
  const double guess_side =
      std::sqrt(static_cast<double>(n) * annulus / (2.0 * std::max(density_target, 0.05)));

  struct Candidate {
    std::int64_t m;
    Layout layout;
    double density;
  };
  std::optional<Candidate> best;
  auto consider = [&](std::int64_t m) -> std::optional<double> {
    auto xy = place(n, m, step, seed);
    if (!xy)
      return std::nullopt;
    Layout layout = Layout::from_points(*xy, diameter, seed);
    const double d = static_cast<double>(build_graph(layout, rules).num_edges()) /
                     static_cast<double>(n);
    if (!best || std::abs(d - density_target) < std::abs(best->density - density_target) ||
        (std::abs(d - density_target) == std::abs(best->density - density_target) &&
         m < best->m))
      best = Candidate{m, std::move(layout), d};
    return d;
  };

  // Smallest square that can hold n vias at the exclusion spacing.
  const auto min_m = static_cast<std::int64_t>(std::ceil(std::sqrt(4.0 * static_cast<double>(n)))) + 1;
  std::int64_t lo = min_m;
  std::int64_t hi = std::max<std::int64_t>(lo + 1, static_cast<std::int64_t>(std::ceil(4.0 * guess_side / step)) + 2);
  while (!consider(lo))
    lo = lo + std::max<std::int64_t>(1, lo / 8);
  // Density falls as the square grows: bisect on the lattice width.
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    auto d = consider(mid);
    if (d && *d > density_target)
      lo = mid;
    else if (d)
      hi = mid;
    else
      lo = mid;
  }
  consider(hi);

  const double achieved = best->density;
  if (n >= 100 && std::abs(achieved - density_target) > 0.2 * density_target)
    throw DensityUnreachable(density_target, achieved);
  return std::move(best->layout);
}

Layout generate_cluster_layout(std::size_t n, double density_target,
                               std::uint64_t seed, const TechRules &rules,
                               double diameter) {
  rules.validate();
  if (!(diameter > 0.0))
    throw InvalidArgument("via diameter must be positive");
  if (!(density_target >= 0.0))
    throw InvalidArgument("density target must be nonnegative");
  if (n == 0)
    return Layout({}, diameter, seed);

  const double step = diameter;
  const auto reach = static_cast<std::int64_t>(std::ceil((rules.litho_dist + diameter) / step));
  std::mt19937_64 rng(seed ^ 0xC2B2AE3D27D4EB4FULL);
  std::map<std::pair<std::int64_t, std::int64_t>, int> taken;
  std::vector<std::pair<std::int64_t, std::int64_t>> cells{{0, 0}};
  taken[{0, 0}] = 0;
  std::vector<Via> vias{{0, 0.0, 0.0}};
  std::size_t edges = 0;

  auto conflicts_at = [&](std::int64_t x, std::int64_t y) {
    const Via cand{-1, static_cast<double>(x) * step, static_cast<double>(y) * step};
    int c = 0;
    for (std::int64_t dx = -reach; dx <= reach; ++dx)
      for (std::int64_t dy = -reach; dy <= reach; ++dy) {
        auto it = taken.find({x + dx, y + dy});
        if (it != taken.end() && classify_pair(cand, vias[it->second], diameter, rules).first)
          ++c;
      }
    return c;
  };
  auto clear = [&](std::int64_t x, std::int64_t y) {
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy)
        if (taken.count({x + dx, y + dy}))
          return false;
    return true;
  };

  const auto span = static_cast<std::uint64_t>(2 * reach + 1);
  while (vias.size() < n) {
    std::optional<std::pair<std::int64_t, std::int64_t>> best;
    int best_c = 0;
    double best_score = 0.0;
    for (int attempt = 0; attempt < 20000 && !(best && attempt >= 64); ++attempt) {
      const auto &base = cells[draw(rng, cells.size())];
      const std::int64_t x = base.first + static_cast<std::int64_t>(draw(rng, span)) - reach;
      const std::int64_t y = base.second + static_cast<std::int64_t>(draw(rng, span)) - reach;
      if (!clear(x, y))
        continue;
      const int c = conflicts_at(x, y);
      if (c == 0)
        continue;
      const double score = std::abs(static_cast<double>(edges + c) /
                                        static_cast<double>(vias.size() + 1) -
                                    density_target);
      if (!best || score < best_score) {
        best = std::make_pair(x, y);
        best_c = c;
        best_score = score;
      }
    }
    if (!best)
      throw DensityUnreachable(density_target,
                               static_cast<double>(edges) / static_cast<double>(vias.size()));
    const int id = static_cast<int>(vias.size());
    taken[*best] = id;
    cells.push_back(*best);
    vias.push_back({id, static_cast<double>(best->first) * step,
                    static_cast<double>(best->second) * step});
    edges += static_cast<std::size_t>(best_c);
  }
  const double achieved = static_cast<double>(edges) / static_cast<double>(n);
  if (n >= 100 && std::abs(achieved - density_target) > 0.2 * density_target)
    throw DensityUnreachable(density_target, achieved);
  return Layout(std::move(vias), diameter, seed);
}

} // namespace dsamp
