#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bundlekit/graph.hpp"

namespace bundlekit {

enum class ERMethod { exact, approximate };

// Per-edge effective resistances, indexed like Graph::edges(). `raw` holds
// ER(e) = (chi_u - chi_v)^T L+ (chi_u - chi_v) computed on e's component;
// `normalized` is the global min-max rescale to [0,1] (all 1 when every raw
// value is equal).
struct ERMap {
  std::vector<double> raw;
  std::vector<double> normalized;
  ERMethod method = ERMethod::exact;
  double tolerance = 0.0;
};

// Exact method grounds one vertex per component and inverts the dense
// reduced Laplacian; refuses components larger than `exact_cap` vertices.
// Approximate method sketches the edge-incidence image of L+ with
// k = ceil(24 ln(n) / tol^2) random +-1 projections and one sparse Cholesky
// solve per projection; relative error <= tol holds with high probability.
// Both methods parallelize over independent units (edges resp. projections)
// and return worker-count-independent bytes.
ERMap effective_resistances(const Graph& g, ERMethod method, double tol = 0.1,
                            std::uint32_t exact_cap = 5000);

// Method choice used by the pipeline when the caller does not care: exact up
// to 2000 vertices, approximate above.
ERMethod recommended_method(std::uint32_t vertex_count);

// Fills `normalized` from `raw` (global min-max; degenerate spread -> all 1).
void normalize_er(ERMap& er);

// ER map for a subgraph, carrying over the parent's raw values and
// re-normalizing over the surviving edges. Every subgraph edge must exist in
// the parent.
ERMap restrict_er(const ERMap& parent_er, const Graph& parent, const Graph& subgraph);

// Per-component |sum_e w_e ER(e) - (n_c - 1)|, the conservation identity
// exact resistances satisfy; used as a self-check and in tests.
std::vector<double> foster_residuals(const Graph& g, const ERMap& er);

// CSV lines "u,v,raw,normalized", one per edge, preceded by '#' comment
// lines from `header` (one per entry, already without the '#').
void save_er_csv(const Graph& g, const ERMap& er, const std::string& path,
                 const std::vector<std::string>& header = {});

}  // namespace bundlekit
