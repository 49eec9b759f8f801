#include "dsamp/render.hpp"

#include "dsamp/error.hpp"

#include <algorithm>
#include <ostream>

namespace dsamp {

const std::vector<std::string> &svg_palette() {
  static const std::vector<std::string> p{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                          "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  return p;
}

void render_svg(std::ostream &out, const Layout &layout, const ColoringSolution *solution,
                const RenderOptions &options) {
  const auto &vias = layout.vias();
  if (solution) {
    if (solution->color_of.size() != vias.size())
      throw InvalidArgument("solution covers " + std::to_string(solution->color_of.size()) +
                            " vias, layout has " + std::to_string(vias.size()));
    const int limit = std::min<int>(options.max_colors, static_cast<int>(svg_palette().size()));
    for (int c : solution->color_of)
      if (c < 1 || c > limit)
        throw InvalidArgument("color " + std::to_string(c) + " exceeds the palette of " +
                              std::to_string(limit));
  }

  const double r = layout.diameter() / 2.0;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  if (!vias.empty()) {
    x0 = x1 = vias[0].x;
    y0 = y1 = vias[0].y;
    for (const Via &v : vias) {
      x0 = std::min(x0, v.x);
      x1 = std::max(x1, v.x);
      y0 = std::min(y0, v.y);
      y1 = std::max(y1, v.y);
    }
  }
  const double pad = r + options.margin;
  const double vx = x0 - pad, vy = -y1 - pad;
  const double w = x1 - x0 + 2 * pad, h = y1 - y0 + 2 * pad;
  auto f = [](double v) { return format_coord(v); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << f(vx) << ' ' << f(vy) << ' '
      << f(w) << ' ' << f(h) << "\" width=\"" << f(w * options.px_per_nm) << "\" height=\""
      << f(h * options.px_per_nm) << "\">\n";
  out << "<rect class=\"background\" x=\"" << f(vx) << "\" y=\"" << f(vy) << "\" width=\""
      << f(w) << "\" height=\"" << f(h) << "\" fill=\"white\"/>\n";

  auto fill_of = [&](int v) {
    return solution ? svg_palette()[solution->color_of[v] - 1] : kUncoloredFill;
  };
  if (solution) {
    // Guiding patterns: a thick round-capped stroke along the witnessing path.
    for (const PlacedGroup &g : solution->groups) {
      if (g.path.size() < 2)
        continue;
      out << "<polyline class=\"hull\" points=\"";
      for (std::size_t j = 0; j < g.path.size(); ++j)
        out << (j ? " " : "") << f(vias[g.path[j]].x) << ',' << f(-vias[g.path[j]].y);
      out << "\" fill=\"none\" stroke=\"" << fill_of(g.path[0])
          << "\" stroke-opacity=\"0.35\" stroke-width=\"" << f(layout.diameter() * 1.6)
          << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>\n";
    }
  }
  for (const Via &v : vias)
    out << "<circle class=\"via\" data-id=\"" << v.id << "\" cx=\"" << f(v.x) << "\" cy=\""
        << f(-v.y) << "\" r=\"" << f(r) << "\" fill=\"" << fill_of(v.id) << "\"/>\n";
  out << "</svg>\n";
}

} // namespace dsamp
