#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bundlekit/drawing.hpp"

namespace bundlekit {

struct RenderStyle {
  std::string stroke = "#1f3a93";
  double alpha = 0.35;
  double line_width = 1.0;
  double vertex_radius = 2.0;  // 0 disables vertex circles
  std::string vertex_fill = "#2c3e50";
  std::vector<std::uint32_t> highlight;  // edge indices drawn on top, emphasized
  std::string highlight_stroke = "#c0392b";
  double canvas_width = 1024.0;
};

// One path per polyline (plus optional vertex circles), y flipped to screen
// orientation, viewBox covering all coordinates with a 2% margin. Output is
// byte-stable for identical inputs.
std::string to_svg(const Drawing& drawing, const RenderStyle& style = {});

}  // namespace bundlekit
