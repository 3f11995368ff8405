#include "bundlekit/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace bundlekit {

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::string to_svg(const Drawing& drawing, const RenderStyle& style) {
  validate_drawing(drawing);
  if (drawing.positions.empty()) throw std::invalid_argument("to_svg: drawing has no vertices");
  if (style.alpha < 0.0 || style.alpha > 1.0)
    throw std::invalid_argument("to_svg: alpha must lie in [0,1]");
  if (!(style.canvas_width > 0.0) || style.line_width < 0.0 || style.vertex_radius < 0.0)
    throw std::invalid_argument("to_svg: sizes must be positive");

  double min_x = drawing.positions[0].x, max_x = min_x;
  double min_y = drawing.positions[0].y, max_y = min_y;
  auto grow = [&](const Vec2& p) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const Vec2& p : drawing.positions) grow(p);
  for (const Polyline& pl : drawing.polylines)
    for (const Vec2& p : pl) grow(p);

  const double extent = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double margin = 0.02 * extent;
  const double world_w = (max_x - min_x) + 2.0 * margin;
  const double world_h = (max_y - min_y) + 2.0 * margin;
  const double scale = style.canvas_width / world_w;
  const double canvas_h = world_h * scale;

  const auto to_px = [&](const Vec2& p) -> Vec2 {
    return {(p.x - (min_x - margin)) * scale, ((max_y + margin) - p.y) * scale};
  };

  std::vector<char> emphasized(drawing.edges.size(), 0);
  for (std::uint32_t e : style.highlight)
    if (e < emphasized.size()) emphasized[e] = 1;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(style.canvas_width)
      << "\" height=\"" << px(canvas_h) << "\" viewBox=\"0 0 " << px(style.canvas_width) << " "
      << px(canvas_h) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto emit_path = [&](std::size_t i, bool emphasis) {
    const Polyline& pl = drawing.polylines[i];
    out << "<path d=\"";
    for (std::size_t k = 0; k < pl.size(); ++k) {
      const Vec2 p = to_px(pl[k]);
      out << (k == 0 ? "M" : " L") << px(p.x) << " " << px(p.y);
    }
    out << "\" fill=\"none\" stroke=\"" << (emphasis ? style.highlight_stroke : style.stroke)
        << "\" stroke-width=\"" << px(emphasis ? style.line_width * 2.0 : style.line_width)
        << "\" stroke-opacity=\"" << px(emphasis ? std::min(1.0, style.alpha * 2.0) : style.alpha)
        << "\" stroke-linecap=\"round\"/>\n";
  };
  for (std::size_t i = 0; i < drawing.polylines.size(); ++i)
    if (!emphasized[i]) emit_path(i, false);
  for (std::size_t i = 0; i < drawing.polylines.size(); ++i)
    if (emphasized[i]) emit_path(i, true);

  if (style.vertex_radius > 0.0) {
    for (const Vec2& p : drawing.positions) {
      const Vec2 c = to_px(p);
      out << "<circle cx=\"" << px(c.x) << "\" cy=\"" << px(c.y) << "\" r=\""
          << px(style.vertex_radius) << "\" fill=\"" << style.vertex_fill << "\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace bundlekit
