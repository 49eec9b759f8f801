#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace dsamp {

struct PlacedGroup {
  std::vector<int> path; // witnessing order along DSA edges
  int color = 1;         // 1-based

  bool operator==(const PlacedGroup &) const = default;
};

/// Vias partitioned into groups, each group given one patterning step.
struct ColoringSolution {
  std::vector<int> color_of;      // vertex -> color (1-based)
  std::vector<int> group_of;      // vertex -> index into groups
  std::vector<PlacedGroup> groups;
  int num_colors = 0;
  bool optimal = false;
  int lower_bound = 0;
  double elapsed = 0.0;      // seconds
  double time_to_best = 0.0; // seconds
  std::uint64_t nodes = 0;

  /// Rebuilds color_of, group_of and num_colors from `groups`.
  void index(int n_vertices);
};

/// Header (`num_colors`, `optimal`, `lower_bound`, `elapsed`, `time_to_best`)
/// then one `v <id> color <c> group <members...>` line per vertex.
void write_solution(std::ostream &out, const ColoringSolution &s);
ColoringSolution read_solution(std::istream &in);

} // namespace dsamp
