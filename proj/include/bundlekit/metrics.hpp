#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bundlekit/drawing.hpp"
#include "bundlekit/graph.hpp"

namespace bundlekit {

// Partition of the drawing's edges into bundles with a consistent
// orientation: every member has one endpoint assigned to bundle end A and
// the other to end B. The lowest-indexed member of each bundle is the
// reference and is unflipped by definition.
struct BundleAssignment {
  std::vector<std::uint32_t> bundle_of;             // per edge -> bundle id
  std::vector<std::vector<std::uint32_t>> members;  // per bundle, ascending edge ids
  std::vector<char> flipped;  // per edge: 0 -> canonical u at end A, 1 -> v at end A

  std::uint32_t end_a(const Graph& g, std::uint32_t edge) const {
    const Edge& e = g.edge(edge);
    return flipped[edge] ? e.v : e.u;
  }
  std::uint32_t end_b(const Graph& g, std::uint32_t edge) const {
    const Edge& e = g.edge(edge);
    return flipped[edge] ? e.u : e.v;
  }
};

// Graph of visually implied adjacencies: the source edges plus, per bundle,
// the cross pairs (end-A endpoint of one member, end-B endpoint of another).
struct GeometricGraph {
  Graph graph;
  std::vector<char> implied;  // per graph edge: 1 when absent from the source
  BundleAssignment bundles;
};

// Two edges land in one bundle when the shorter polyline stays within
// distance epsilon of the longer for at least fraction tau of its sampled
// points; the relation is closed transitively. Orientation follows endpoint
// proximity to the bundle's reference member. `samples` points are tested
// per pair.
BundleAssignment detect_bundles(const Drawing& bundled, double epsilon, double tau,
                                std::uint32_t samples = 64);

BundleAssignment singleton_bundles(std::uint32_t edge_count);

GeometricGraph geometric_graph(const Graph& graph, const BundleAssignment& bundles);

// Fraction of falsely implied neighbors: for every vertex v and incident
// source edge e, the reachable set N(v,e) collects vertices within gamma
// hops in the geometric graph whose first hop leaves v along e's bundle
// (e itself or an implied edge to the opposite bundle end); neighbors
// farther than gamma hops from v in the source graph are false. Returns
// (sum of false) / (sum of reachable), 0 when nothing is reachable.
double ambiguity(const Graph& graph, const GeometricGraph& geo, std::uint32_t gamma);

// Mean per-vertex Jaccard similarity of neighborhoods of two geometric
// graphs on the same vertex set; vertices isolated in both count as 1.
double fbq_js(const GeometricGraph& gb, const GeometricGraph& gb_prime);

enum class VertexProperty { avg_neighbor_degree, local_clustering };

struct DistributionSummary {
  VertexProperty property = VertexProperty::avg_neighbor_degree;
  std::vector<double> values;  // sorted ascending
};

DistributionSummary property_distribution(const GeometricGraph& geo, VertexProperty property);

// Supremum distance between the empirical CDFs of two summaries.
double ks_distance(const DistributionSummary& a, const DistributionSummary& b);

double fbq_sq(const GeometricGraph& gb, const GeometricGraph& gb_prime, VertexProperty property);

// Mean over edges of arc length / endpoint distance; `reported` is raw - 1.
struct DistortionResult {
  double raw = 1.0;
  double reported = 0.0;
};
DistortionResult distortion(const Drawing& drawing);

struct MetricsReport {
  double ink = 1.0;
  double distortion_raw = 1.0;
  double distortion = 0.0;
  double amb1 = 0.0;
  double amb2 = 0.0;
  std::optional<double> fbq_js;
  std::optional<double> fbq_sq_dg;
  std::optional<double> fbq_sq_cc;
  double bundling_time_seconds = 0.0;
};

// JSON object with every metric plus the supplied config object (verbatim)
// under "config"; optional fields appear as null when absent.
std::string metrics_report_json(const MetricsReport& report, const std::string& config_json = "");
// Two CSV lines (header, row) in the fixed column order ink, dist_raw, dist,
// amb1, amb2, fbq_js, fbq_sq_dg, fbq_sq_cc, t_bundle_s; empty cells for
// absent optionals. '#'-prefixed comment lines from `header` come first.
std::string metrics_report_csv(const MetricsReport& report,
                               const std::vector<std::string>& header = {});

}  // namespace bundlekit
