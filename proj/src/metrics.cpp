#include "bundlekit/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bundlekit/io.hpp"

namespace bundlekit {

namespace {

struct Box {
  double min_x, min_y, max_x, max_y;
};

Box polyline_box(const Polyline& p) {
  Box b{p[0].x, p[0].y, p[0].x, p[0].y};
  for (const Vec2& q : p) {
    b.min_x = std::min(b.min_x, q.x);
    b.min_y = std::min(b.min_y, q.y);
    b.max_x = std::max(b.max_x, q.x);
    b.max_y = std::max(b.max_y, q.y);
  }
  return b;
}

bool boxes_within(const Box& a, const Box& b, double eps) {
  return a.min_x <= b.max_x + eps && b.min_x <= a.max_x + eps && a.min_y <= b.max_y + eps &&
         b.min_y <= a.max_y + eps;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Fixed-size bitset rows over the vertex set.
class BitRows {
 public:
  BitRows(std::uint32_t rows, std::uint32_t bits)
      : words_((bits + 63) / 64), data_(static_cast<std::size_t>(rows) * words_, 0) {}
  std::uint64_t* row(std::uint32_t r) { return data_.data() + static_cast<std::size_t>(r) * words_; }
  const std::uint64_t* row(std::uint32_t r) const {
    return data_.data() + static_cast<std::size_t>(r) * words_;
  }
  std::uint32_t words() const { return words_; }
  static void set(std::uint64_t* row, std::uint32_t bit) { row[bit >> 6] |= 1ULL << (bit & 63); }
  static bool test(const std::uint64_t* row, std::uint32_t bit) {
    return (row[bit >> 6] >> (bit & 63)) & 1ULL;
  }

 private:
  std::uint32_t words_;
  std::vector<std::uint64_t> data_;
};

// Rows = balls of radius `depth` around each vertex (vertex included).
BitRows hop_balls(const Graph& g, std::uint32_t depth) {
  const std::uint32_t n = g.vertex_count();
  BitRows rows(n, n);
  std::vector<std::uint32_t> dist(n);
  std::queue<std::uint32_t> q;
  for (std::uint32_t s = 0; s < n; ++s) {
    std::uint64_t* row = rows.row(s);
    std::fill(dist.begin(), dist.end(), UINT32_MAX);
    dist[s] = 0;
    BitRows::set(row, s);
    q.push(s);
    while (!q.empty()) {
      const std::uint32_t v = q.front();
      q.pop();
      if (dist[v] >= depth) continue;
      for (const AdjEntry& a : g.neighbors(v)) {
        if (dist[a.neighbor] != UINT32_MAX) continue;
        dist[a.neighbor] = dist[v] + 1;
        BitRows::set(row, a.neighbor);
        q.push(a.neighbor);
      }
    }
  }
  return rows;
}

std::string csv_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

}  // namespace

BundleAssignment singleton_bundles(std::uint32_t edge_count) {
  BundleAssignment b;
  b.bundle_of.resize(edge_count);
  std::iota(b.bundle_of.begin(), b.bundle_of.end(), 0u);
  b.members.resize(edge_count);
  for (std::uint32_t i = 0; i < edge_count; ++i) b.members[i] = {i};
  b.flipped.assign(edge_count, 0);
  return b;
}

BundleAssignment detect_bundles(const Drawing& bundled, double epsilon, double tau,
                                std::uint32_t samples) {
  validate_drawing(bundled);
  if (!(epsilon > 0.0)) throw std::invalid_argument("detect_bundles: epsilon must be positive");
  if (!(tau > 0.0) || tau > 1.0)
    throw std::invalid_argument("detect_bundles: tau must lie in (0,1]");
  if (samples < 2) throw std::invalid_argument("detect_bundles: need at least 2 sample points");

  const std::uint32_t m = static_cast<std::uint32_t>(bundled.edges.size());
  std::vector<double> length(m);
  std::vector<Box> box(m);
  std::vector<Polyline> sampled(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    length[i] = polyline_length(bundled.polylines[i]);
    box[i] = polyline_box(bundled.polylines[i]);
    sampled[i] = resample_polyline(bundled.polylines[i], samples);
  }

  UnionFind uf(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = i + 1; j < m; ++j) {
      if (!boxes_within(box[i], box[j], epsilon)) continue;
      const std::uint32_t shorter = length[i] <= length[j] ? i : j;
      const std::uint32_t longer = shorter == i ? j : i;
      std::uint32_t close = 0;
      for (const Vec2& p : sampled[shorter])
        if (point_polyline_distance(p, bundled.polylines[longer]) <= epsilon) ++close;
      if (static_cast<double>(close) >= tau * static_cast<double>(samples)) uf.unite(i, j);
    }
  }

  BundleAssignment out;
  out.bundle_of.assign(m, UINT32_MAX);
  out.flipped.assign(m, 0);
  std::vector<std::uint32_t> root_to_id(m, UINT32_MAX);
  for (std::uint32_t i = 0; i < m; ++i) {
    const std::uint32_t r = uf.find(i);
    if (root_to_id[r] == UINT32_MAX) {
      root_to_id[r] = static_cast<std::uint32_t>(out.members.size());
      out.members.emplace_back();
    }
    out.bundle_of[i] = root_to_id[r];
    out.members[out.bundle_of[i]].push_back(i);
  }

  for (const auto& members : out.members) {
    const std::uint32_t ref = members[0];
    const Vec2 ref_a = bundled.polylines[ref].front();
    const Vec2 ref_b = bundled.polylines[ref].back();
    for (std::uint32_t e : members) {
      if (e == ref) continue;
      const Vec2 a = bundled.polylines[e].front();
      const Vec2 b = bundled.polylines[e].back();
      const double keep = dist(a, ref_a) + dist(b, ref_b);
      const double flip = dist(a, ref_b) + dist(b, ref_a);
      out.flipped[e] = flip < keep ? 1 : 0;
    }
  }
  return out;
}

GeometricGraph geometric_graph(const Graph& graph, const BundleAssignment& bundles) {
  if (bundles.bundle_of.size() != graph.edge_count())
    throw std::invalid_argument("geometric_graph: assignment does not cover the graph");

  std::set<std::pair<std::uint32_t, std::uint32_t>> implied;
  for (const auto& members : bundles.members) {
    for (std::uint32_t e : members) {
      for (std::uint32_t f : members) {
        if (e == f) continue;
        std::uint32_t a = bundles.end_a(graph, e);
        std::uint32_t b = bundles.end_b(graph, f);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (graph.edge_index(a, b)) continue;
        implied.emplace(a, b);
      }
    }
  }

  std::vector<Edge> edges = graph.edges();
  for (const auto& [a, b] : implied) edges.push_back({a, b, 1.0});

  GeometricGraph geo;
  geo.graph = Graph(graph.vertex_count(), std::move(edges));
  geo.implied.assign(geo.graph.edge_count(), 0);
  for (std::uint32_t i = 0; i < geo.graph.edge_count(); ++i) {
    const Edge& e = geo.graph.edge(i);
    if (!graph.edge_index(e.u, e.v)) geo.implied[i] = 1;
  }
  geo.bundles = bundles;
  return geo;
}

double ambiguity(const Graph& graph, const GeometricGraph& geo, std::uint32_t gamma) {
  if (gamma < 1) throw std::invalid_argument("ambiguity: gamma must be >= 1");
  if (geo.graph.vertex_count() != graph.vertex_count())
    throw std::invalid_argument("ambiguity: vertex sets differ");
  const std::uint32_t n = graph.vertex_count();

  const BitRows geo_balls = hop_balls(geo.graph, gamma - 1);
  const BitRows graph_balls = hop_balls(graph, gamma);
  const std::uint32_t words = geo_balls.words();

  std::vector<std::uint64_t> reach(words);
  std::uint64_t total = 0, false_count = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    for (const AdjEntry& inc : graph.neighbors(v)) {
      const std::uint32_t e = inc.edge;
      const std::uint32_t bundle = geo.bundles.bundle_of[e];
      const bool v_at_a = geo.bundles.end_a(graph, e) == v;
      std::fill(reach.begin(), reach.end(), 0);
      // First hop: from v along e's bundle to the opposite end of any
      // member, then freely for the remaining gamma-1 hops.
      for (std::uint32_t f : geo.bundles.members[bundle]) {
        const std::uint32_t target =
            v_at_a ? geo.bundles.end_b(graph, f) : geo.bundles.end_a(graph, f);
        if (target == v) continue;
        const std::uint64_t* ball = geo_balls.row(target);
        for (std::uint32_t w = 0; w < words; ++w) reach[w] |= ball[w];
      }
      // v itself is never its own neighbor.
      reach[v >> 6] &= ~(1ULL << (v & 63));

      const std::uint64_t* near = graph_balls.row(v);
      for (std::uint32_t w = 0; w < words; ++w) {
        total += std::popcount(reach[w]);
        false_count += std::popcount(reach[w] & ~near[w]);
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(false_count) / static_cast<double>(total);
}

double fbq_js(const GeometricGraph& gb, const GeometricGraph& gb_prime) {
  const Graph& a = gb.graph;
  const Graph& b = gb_prime.graph;
  if (a.vertex_count() != b.vertex_count())
    throw std::invalid_argument("fbq_js: vertex sets differ");
  const std::uint32_t n = a.vertex_count();
  double sum = 0.0;
  std::vector<std::uint32_t> na, nb;
  for (std::uint32_t v = 0; v < n; ++v) {
    na.clear();
    nb.clear();
    for (const AdjEntry& x : a.neighbors(v)) na.push_back(x.neighbor);
    for (const AdjEntry& x : b.neighbors(v)) nb.push_back(x.neighbor);
    std::sort(na.begin(), na.end());
    std::sort(nb.begin(), nb.end());
    if (na.empty() && nb.empty()) {
      sum += 1.0;
      continue;
    }
    std::size_t inter = 0, i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
      if (na[i] == nb[j]) {
        ++inter;
        ++i;
        ++j;
      } else if (na[i] < nb[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    const std::size_t uni = na.size() + nb.size() - inter;
    sum += static_cast<double>(inter) / static_cast<double>(uni);
  }
  return sum / static_cast<double>(n);
}

DistributionSummary property_distribution(const GeometricGraph& geo, VertexProperty property) {
  const Graph& g = geo.graph;
  if (g.vertex_count() == 0)
    throw std::invalid_argument("property_distribution: empty graph");
  DistributionSummary out;
  out.property = property;
  out.values.reserve(g.vertex_count());
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const auto nbrs = g.neighbors(v);
    if (property == VertexProperty::avg_neighbor_degree) {
      if (nbrs.empty()) {
        out.values.push_back(0.0);
        continue;
      }
      double acc = 0.0;
      for (const AdjEntry& a : nbrs) acc += g.degree(a.neighbor);
      out.values.push_back(acc / static_cast<double>(nbrs.size()));
    } else {
      const std::size_t deg = nbrs.size();
      if (deg < 2) {
        out.values.push_back(0.0);
        continue;
      }
      std::uint64_t tri = 0;
      for (std::size_t i = 0; i < deg; ++i)
        for (std::size_t j = i + 1; j < deg; ++j)
          if (g.edge_index(nbrs[i].neighbor, nbrs[j].neighbor)) ++tri;
      out.values.push_back(static_cast<double>(tri) /
                           (static_cast<double>(deg) * (deg - 1) / 2.0));
    }
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

double ks_distance(const DistributionSummary& a, const DistributionSummary& b) {
  if (a.property != b.property)
    throw std::invalid_argument("ks_distance: property tags differ");
  if (a.values.empty() || b.values.empty())
    throw std::invalid_argument("ks_distance: empty sample");
  const double na = static_cast<double>(a.values.size());
  const double nb = static_cast<double>(b.values.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < a.values.size() || j < b.values.size()) {
    double x;
    if (j >= b.values.size() || (i < a.values.size() && a.values[i] <= b.values[j]))
      x = a.values[i];
    else
      x = b.values[j];
    while (i < a.values.size() && a.values[i] <= x) ++i;
    while (j < b.values.size() && b.values[j] <= x) ++j;
    best = std::max(best, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

double fbq_sq(const GeometricGraph& gb, const GeometricGraph& gb_prime, VertexProperty property) {
  return ks_distance(property_distribution(gb, property),
                     property_distribution(gb_prime, property));
}

DistortionResult distortion(const Drawing& drawing) {
  validate_drawing(drawing);
  if (drawing.edges.empty()) throw std::invalid_argument("distortion: drawing has no edges");
  double acc = 0.0;
  for (std::size_t i = 0; i < drawing.edges.size(); ++i) {
    const double chord =
        dist(drawing.positions[drawing.edges[i].first], drawing.positions[drawing.edges[i].second]);
    if (!(chord > 0.0))
      throw std::invalid_argument("distortion: edge " + std::to_string(i) +
                                  " has coincident endpoints");
    acc += polyline_length(drawing.polylines[i]) / chord;
  }
  DistortionResult r;
  r.raw = acc / static_cast<double>(drawing.edges.size());
  r.reported = r.raw - 1.0;
  return r;
}

std::string metrics_report_json(const MetricsReport& report, const std::string& config_json) {
  std::ostringstream out;
  out << "{\n";
  if (!config_json.empty()) out << "  \"config\": " << config_json << ",\n";
  out << "  \"ink\": " << format_double(report.ink) << ",\n";
  out << "  \"distortion_raw\": " << format_double(report.distortion_raw) << ",\n";
  out << "  \"distortion\": " << format_double(report.distortion) << ",\n";
  out << "  \"amb1\": " << format_double(report.amb1) << ",\n";
  out << "  \"amb2\": " << format_double(report.amb2) << ",\n";
  auto opt = [&](const char* key, const std::optional<double>& v) {
    out << "  \"" << key << "\": " << (v ? format_double(*v) : "null") << ",\n";
  };
  opt("fbq_js", report.fbq_js);
  opt("fbq_sq_dg", report.fbq_sq_dg);
  opt("fbq_sq_cc", report.fbq_sq_cc);
  out << "  \"bundling_time_seconds\": " << format_double(report.bundling_time_seconds) << "\n";
  out << "}\n";
  return out.str();
}

std::string metrics_report_csv(const MetricsReport& report,
                               const std::vector<std::string>& header) {
  std::ostringstream out;
  for (const std::string& h : header) out << "# " << h << "\n";
  out << "ink,dist_raw,dist,amb1,amb2,fbq_js,fbq_sq_dg,fbq_sq_cc,t_bundle_s\n";
  out << format_double(report.ink) << "," << format_double(report.distortion_raw) << ","
      << format_double(report.distortion) << "," << format_double(report.amb1) << ","
      << format_double(report.amb2) << "," << csv_cell(report.fbq_js) << ","
      << csv_cell(report.fbq_sq_dg) << "," << csv_cell(report.fbq_sq_cc) << ","
      << format_double(report.bundling_time_seconds) << "\n";
  return out.str();
}

}  // namespace bundlekit
