#pragma once

#include <cstdint>
#include <vector>

#include "bundlekit/drawing.hpp"
#include "bundlekit/graph.hpp"

namespace bundlekit {

struct EpbParams {
  double distortion_limit = 2.0;  // k: accept a path up to k times the edge length
  std::uint32_t smoothing = 2;    // corner-cutting rounds on rerouted polylines
  double spanner_stretch = 2.0;   // t: spanner-restricted variant only
};

// Trace of one bundling run, for tests and instrumentation.
struct EpbStats {
  std::vector<std::uint32_t> processing_order;        // edge indices, longest first
  std::vector<std::uint32_t> rerouted;                // edges given a control path
  std::vector<std::vector<std::uint32_t>> paths;      // control vertices per rerouted edge
  std::size_t searches = 0;                           // shortest-path runs
  std::size_t max_search_edges = 0;                   // edges relaxed in the widest run
  std::uint32_t spanner_edges = 0;                    // spanner size (spanner variant)
};

// Edge-path bundling. Edges are processed by descending drawn length (ties
// in canonical edge order). An unlocked edge (u,v) is rerouted along the
// shortest path between u and v over the straight drawn lengths of the
// remaining edges (the edge itself and previously rerouted edges are
// excluded) whenever that path is at most distortion_limit times the
// straight distance; its polyline becomes the smoothed path through the
// control vertices and every path edge is locked straight. Deterministic:
// among equally short paths the lexicographically smallest vertex sequence
// wins.
Drawing epb_bundle(const Graph& graph, const Drawing& drawing, const EpbParams& params,
                   EpbStats* stats = nullptr);

// Same procedure with path searches confined to a greedy t-spanner of the
// graph (built once, over drawn lengths). A stretch-1 spanner keeps every
// edge whose endpoints lack an equally short detour, so for drawings in
// general position t = 1 reproduces epb_bundle.
Drawing sepb_bundle(const Graph& graph, const Drawing& drawing, const EpbParams& params,
                    EpbStats* stats = nullptr);

// Greedy t-spanner over the given per-edge lengths: edges ascending by
// length join the spanner unless it already connects their endpoints within
// t times the length. Returns a keep-flag per edge.
std::vector<char> greedy_spanner(const Graph& graph, const std::vector<double>& lengths,
                                 double stretch);

}  // namespace bundlekit
