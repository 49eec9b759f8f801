#include "dsamp/solution.hpp"

#include "dsamp/error.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace dsamp {

void ColoringSolution::index(int n_vertices) {
  color_of.assign(n_vertices, 0);
  group_of.assign(n_vertices, -1);
  std::set<int> used;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int v : groups[g].path) {
      if (v < 0 || v >= n_vertices)
        throw InvalidArgument("solution vertex out of range");
      if (group_of[v] >= 0)
        throw InvalidArgument("vertex " + std::to_string(v) +
                              " placed in two groups");
      group_of[v] = static_cast<int>(g);
      color_of[v] = groups[g].color;
    }
    used.insert(groups[g].color);
  }
  num_colors = static_cast<int>(used.size());
}

void write_solution(std::ostream &out, const ColoringSolution &s) {
  out << "num_colors " << s.num_colors << '\n'
      << "optimal " << (s.optimal ? 1 : 0) << '\n'
      << "lower_bound " << s.lower_bound << '\n'
      << "elapsed " << s.elapsed << '\n'
      << "time_to_best " << s.time_to_best << '\n';
  for (std::size_t v = 0; v < s.color_of.size(); ++v) {
    out << "v " << v << " color " << s.color_of[v] << " group";
    for (int u : s.groups[s.group_of[v]].path)
      out << ' ' << u;
    out << '\n';
  }
}

ColoringSolution read_solution(std::istream &in) {
  ColoringSolution s;
  std::map<std::vector<int>, int> group_index;
  std::map<int, int> color_of;
  std::string line;
  std::size_t lineno = 0;
  int claimed_colors = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "num_colors") {
      ls >> claimed_colors;
    } else if (tag == "optimal") {
      int f = 0;
      ls >> f;
      s.optimal = f != 0;
    } else if (tag == "lower_bound") {
      ls >> s.lower_bound;
    } else if (tag == "elapsed") {
      ls >> s.elapsed;
    } else if (tag == "time_to_best") {
      ls >> s.time_to_best;
    } else if (tag == "v") {
      int v = -1, c = 0;
      std::string kw1, kw2;
      if (!(ls >> v >> kw1 >> c >> kw2) || kw1 != "color" || kw2 != "group" ||
          v < 0 || c < 1)
        throw ParseError(lineno, "expected 'v <id> color <c> group <members>'");
      std::vector<int> path;
      for (int u; ls >> u;)
        path.push_back(u);
      if (std::find(path.begin(), path.end(), v) == path.end())
        throw ParseError(lineno, "group does not contain its vertex");
      color_of[v] = c;
      auto [it, fresh] =
          group_index.emplace(path, static_cast<int>(s.groups.size()));
      if (fresh)
        s.groups.push_back({path, c});
      else if (s.groups[it->second].color != c)
        throw ParseError(lineno, "group members disagree on color");
    } else {
      throw ParseError(lineno, "unknown record '" + tag + "'");
    }
    if (ls.fail() && !ls.eof())
      throw ParseError(lineno, "malformed record");
  }
  const int n = color_of.empty() ? 0 : color_of.rbegin()->first + 1;
  if (static_cast<int>(color_of.size()) != n)
    throw ParseError(lineno, "solution does not list every vertex");
  s.index(n);
  if (claimed_colors >= 0 && claimed_colors != s.num_colors)
    throw ParseError(lineno, "num_colors header disagrees with assignments");
  return s;
}

} // namespace dsamp
