#pragma once

#include "dsamp/layout.hpp"
#include "dsamp/solution.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dsamp {

/// Fill colors by patterning step; index 0 is step 1.
const std::vector<std::string> &svg_palette();
inline const std::string kUncoloredFill = "#b0b0b0";

struct RenderOptions {
  double margin = 20.0;     // nm around the bounding box
  double px_per_nm = 2.0;   // width/height attributes only
  int max_colors = 5;       // colors beyond this are an error
};

/// SVG in layout units (y up). Vias are circles of the true diameter, filled
/// by color; multi-via groups get a rounded hull drawn underneath. Without a
/// solution every via is gray. Output bytes depend only on the inputs.
void render_svg(std::ostream &out, const Layout &layout,
                const ColoringSolution *solution = nullptr,
                const RenderOptions &options = {});

} // namespace dsamp
