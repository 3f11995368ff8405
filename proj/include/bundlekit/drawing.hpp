#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bundlekit/geometry.hpp"
#include "bundlekit/graph.hpp"

namespace bundlekit {

// A drawing of a graph: one position per vertex and one polyline per edge.
// Polyline i belongs to edges[i] and runs from positions[edges[i].first] to
// positions[edges[i].second]. A straight-line drawing has two-point
// polylines; bundling replaces them with curved ones but never moves the
// endpoints.
struct Drawing {
  std::vector<Vec2> positions;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<Polyline> polylines;
};

inline Drawing straight_drawing(const Graph& g, std::vector<Vec2> positions) {
  if (positions.size() != g.vertex_count())
    throw std::invalid_argument("position count " + std::to_string(positions.size()) +
                                " does not match vertex count " +
                                std::to_string(g.vertex_count()));
  Drawing d;
  d.positions = std::move(positions);
  d.edges.reserve(g.edge_count());
  d.polylines.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    d.edges.emplace_back(e.u, e.v);
    d.polylines.push_back({d.positions[e.u], d.positions[e.v]});
  }
  return d;
}

inline void validate_drawing(const Drawing& d) {
  if (d.edges.size() != d.polylines.size())
    throw std::invalid_argument("drawing has " + std::to_string(d.edges.size()) +
                                " edges but " + std::to_string(d.polylines.size()) +
                                " polylines");
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const auto [u, v] = d.edges[i];
    if (u >= d.positions.size() || v >= d.positions.size())
      throw std::invalid_argument("edge " + std::to_string(i) + " references missing vertex");
    const Polyline& p = d.polylines[i];
    if (p.size() < 2)
      throw std::invalid_argument("polyline " + std::to_string(i) + " has fewer than 2 points");
    if (!(p.front() == d.positions[u]) || !(p.back() == d.positions[v]))
      throw std::invalid_argument("polyline " + std::to_string(i) +
                                  " does not run between its edge endpoints");
  }
}

// Diagonal of the bounding box of the vertex positions.
inline double drawing_diagonal(const Drawing& d) {
  if (d.positions.empty()) return 0.0;
  double min_x = d.positions[0].x, max_x = d.positions[0].x;
  double min_y = d.positions[0].y, max_y = d.positions[0].y;
  for (const Vec2& p : d.positions) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  return norm({max_x - min_x, max_y - min_y});
}

}  // namespace bundlekit
