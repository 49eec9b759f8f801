#include "dsamp/layout.hpp"

#include "dsamp/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dsamp {

namespace tol {

bool less(double a, double b) {
  return a < b - kRelative * std::max(1.0, std::abs(b));
}

bool less_equal(double a, double b) {
  return a <= b + kRelative * std::max(1.0, std::abs(b));
}

} // namespace tol

Layout::Layout(std::vector<Via> vias, double diameter,
               std::optional<std::uint64_t> seed)
    : vias_(std::move(vias)), diameter_(diameter), seed_(seed) {
  if (!(diameter_ > 0.0) || !std::isfinite(diameter_))
    throw InvalidArgument("via diameter must be positive");
  for (std::size_t i = 0; i < vias_.size(); ++i) {
    if (vias_[i].id != static_cast<int>(i))
      throw InvalidArgument("via ids must be contiguous from 0");
    if (!std::isfinite(vias_[i].x) || !std::isfinite(vias_[i].y))
      throw InvalidArgument("via coordinates must be finite");
  }

  std::map<std::pair<double, double>, std::vector<int>> at;
  for (const Via &v : vias_)
    at[{v.x, v.y}].push_back(v.id);
  std::vector<int> dup;
  for (auto &[xy, ids] : at)
    if (ids.size() > 1)
      dup.insert(dup.end(), ids.begin(), ids.end());
  if (!dup.empty()) {
    std::sort(dup.begin(), dup.end());
    throw DuplicateViaError(std::move(dup));
  }
}

Layout Layout::from_points(const std::vector<std::pair<double, double>> &xy,
                           double diameter,
                           std::optional<std::uint64_t> seed) {
  std::vector<Via> vias;
  vias.reserve(xy.size());
  for (std::size_t i = 0; i < xy.size(); ++i)
    vias.push_back({static_cast<int>(i), xy[i].first, xy[i].second});
  return Layout(std::move(vias), diameter, seed);
}

std::string to_string(Tech t) {
  switch (t) {
  case Tech::Axis193i:
    return "193i";
  case Tech::EuvAngle:
    return "euv";
  case Tech::Unrestricted:
    return "unrestricted";
  }
  return "?";
}

Tech parse_tech(const std::string &s) {
  if (s == "193i" || s == "axis")
    return Tech::Axis193i;
  if (s == "euv")
    return Tech::EuvAngle;
  if (s == "unrestricted" || s == "none")
    return Tech::Unrestricted;
  throw InvalidArgument("unknown technology '" + s + "'");
}

void TechRules::validate() const {
  if (!(litho_dist > 0.0))
    throw InvalidArgument("litho_dist must be positive");
  if (!(l0 > 0.0) || !(l0 <= u0))
    throw InvalidArgument("DSA window requires 0 < l0 <= u0");
  if (k_max < 1)
    throw InvalidArgument("k_max must be at least 1");
  if (color_bound < 1)
    throw InvalidArgument("color bound must be at least 1");
  if (angle_min_deg < 0.0 || angle_max_deg > 360.0 ||
      angle_min_deg > angle_max_deg)
    throw InvalidArgument("angle window must lie within [0, 360]");
  if (std::abs((angle_min_deg + angle_max_deg) - 360.0) > 1e-9)
    throw InvalidArgument("angle window must be symmetric about 180");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
      ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t')
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T> bool parse_number(std::string_view s, T &out) {
  const char *end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && p == end;
}

} // namespace

Layout parse_layout(std::istream &in, LayoutFormat format) {
  std::optional<double> diameter;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<double, double>> xy;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#')
      continue;
    auto tok = split_ws(line);
    if (tok[0] == "diameter") {
      if (diameter || !xy.empty())
        throw ParseError(lineno, "unexpected diameter header");
      double d = 0;
      if (tok.size() != 2 || !parse_number(tok[1], d))
        throw ParseError(lineno, "malformed diameter header");
      if (!(d > 0.0))
        throw ParseError(lineno, "diameter must be positive");
      diameter = d;
      continue;
    }
    if (tok[0] == "seed") {
      std::uint64_t s = 0;
      if (seed || !xy.empty() || tok.size() != 2 || !parse_number(tok[1], s))
        throw ParseError(lineno, "malformed seed header");
      seed = s;
      continue;
    }
    if (!diameter)
      throw ParseError(lineno, "missing diameter header");
    double x = 0, y = 0;
    if (tok.size() != 2 || !parse_number(tok[0], x) || !parse_number(tok[1], y))
      throw ParseError(lineno, "expected '<x> <y>'");
    xy.emplace_back(x, y);
  }
  if (!diameter)
    throw ParseError(lineno, "missing diameter header");
  if (format == LayoutFormat::GeneratedManifest && !seed)
    throw ParseError(lineno, "generated manifest lacks a seed header");
  return Layout::from_points(xy, *diameter, seed);
}

Layout load_layout(const std::filesystem::path &path, LayoutFormat format) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open layout file " + path.string());
  return parse_layout(in, format);
}

std::string format_coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  while (!s.empty() && s.back() == '0')
    s.pop_back();
  if (!s.empty() && s.back() == '.')
    s.pop_back();
  if (s == "-0")
    s = "0";
  return s;
}

void write_layout(std::ostream &out, const Layout &layout) {
  out << "diameter " << format_coord(layout.diameter()) << '\n';
  if (layout.seed())
    out << "seed " << *layout.seed() << '\n';
  for (const Via &v : layout.vias())
    out << format_coord(v.x) << ' ' << format_coord(v.y) << '\n';
}

void save_layout(const std::filesystem::path &path, const Layout &layout) {
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write layout file " + path.string());
  write_layout(out, layout);
}

double center_distance(const Via &a, const Via &b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double border_distance(const Via &a, const Via &b, double diameter) {
  return std::max(0.0, center_distance(a, b) - diameter);
}

double min_center_distance(const Layout &layout) {
  const auto &vias = layout.vias();
  std::vector<int> order(vias.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(vias[a].x, vias[a].y) < std::tie(vias[b].x, vias[b].y);
  });
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Via &a = vias[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Via &b = vias[order[j]];
      if (b.x - a.x >= best)
        break;
      best = std::min(best, center_distance(a, b));
    }
  }
  return best;
}

Layout rescale_to_pitch(const Layout &layout, double target_pitch) {
  if (!(target_pitch > 0.0))
    throw InvalidArgument("target pitch must be positive");
  if (layout.size() < 2)
    throw InvalidArgument("rescaling needs at least two vias");
  const double dmin = min_center_distance(layout);
  if (!(dmin > 0.0))
    throw InvalidArgument("coincident vias cannot be rescaled");

  // Centers at 2 * pitch apart leave a border gap of exactly one pitch once
  // the diameter is set to the pitch.
  double scale = 2.0 * target_pitch / dmin;
  if (std::abs(scale - 1.0) < 1e-12)
    scale = 1.0;
  std::vector<Via> vias = layout.vias();
  for (Via &v : vias) {
    v.x *= scale;
    v.y *= scale;
  }
  return Layout(std::move(vias), target_pitch, layout.seed());
}

} // namespace dsamp
