#pragma once

#include <cstdint>

#include "bundlekit/graph.hpp"
#include "bundlekit/resistance.hpp"

namespace bundlekit {

struct SparsifyParams {
  double factor = 4.0;  // edge budget ceil(factor * n * ln n)
  std::uint64_t seed = 1;
  bool ensure_connected = true;
};

std::uint32_t sparsify_budget(std::uint32_t vertex_count, double factor);

// Subsamples edges without replacement with probability proportional to
// w_e * ER(e), keeping the vertex set and at most the budget of edges. When
// the graph is already within budget it is returned unchanged. With
// ensure_connected a spanning forest (greedy by descending w*ER) is kept
// unconditionally, so the sparsifier never disconnects a component; the
// budget is raised to the forest size if necessary. Deterministic per seed.
Graph spectral_sparsify(const Graph& g, const ERMap& er, const SparsifyParams& params);

}  // namespace bundlekit
