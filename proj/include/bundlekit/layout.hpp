#pragma once

#include <cstdint>
#include <vector>

#include "bundlekit/drawing.hpp"
#include "bundlekit/graph.hpp"
#include "bundlekit/parallel.hpp"

namespace bundlekit {

enum class LayoutAlgorithm { import, force };

struct LayoutParams {
  LayoutAlgorithm algorithm = LayoutAlgorithm::force;
  std::uint32_t iterations = 100;
  std::uint64_t seed = 1;
  double width = 1000.0;
  double height = 1000.0;
  // Pipeline flag: when a base drawing exists, reuse its positions for the
  // sparsified graph instead of computing a fresh layout, so bundled
  // drawings of G and G' differ only by bundling.
  bool reuse_positions = true;
};

// Straight-line drawing of g. 'import' passes `imported` through (one
// position per vertex, required). 'force' runs a spring embedder: repulsion
// k^2/d between all vertex pairs, attraction d^2/k along edges,
// k = sqrt(area/n), temperature decaying linearly from width/10 to 0,
// positions clamped to [0,width]x[0,height]. Updates are Jacobi-style from a
// per-iteration snapshot with a fixed accumulation order, so serial and
// parallel execution produce identical bytes for any worker count.
Drawing compute_layout(const Graph& g, const LayoutParams& params,
                       const std::vector<Vec2>* imported = nullptr,
                       Exec exec = Exec::openmp);

}  // namespace bundlekit
