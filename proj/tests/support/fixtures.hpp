#pragma once

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bundlekit/drawing.hpp"
#include "bundlekit/graph.hpp"
#include "bundlekit/metrics.hpp"
#include "bundlekit/rng.hpp"

namespace bundlekit::testing {

inline Graph k3() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }

inline Graph complete_graph(std::uint32_t n) {
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  return Graph(n, std::move(edges));
}

// Star with the center at vertex 0 and `leaves` leaves.
inline Graph star(std::uint32_t leaves) {
  std::vector<Edge> edges;
  for (std::uint32_t v = 1; v <= leaves; ++v) edges.push_back({0, v, 1.0});
  return Graph(leaves + 1, std::move(edges));
}

// Unit square 0-1-2-3 plus the diagonal (0,2): the canonical path-bundling
// fixture. The diagonal's straight length is sqrt(2); the detour through
// vertex 1 has length 2.
struct SquareDiagonal {
  Graph graph{4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}};
  std::vector<Vec2> positions{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  Drawing drawing = straight_drawing(graph, positions);
};

// Uniform random connected simple graph (spanning-tree edges first, then
// uniform extra pairs).
inline Graph random_connected_graph(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  SeededRng rng(SeededRng::mix(seed));
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  std::vector<Edge> edges;
  for (std::uint32_t v = 1; v < n; ++v) {
    const auto u = static_cast<std::uint32_t>(rng.next_index(v));
    used.insert({u, v});
    edges.push_back({u, v, 1.0});
  }
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t target = std::min<std::uint64_t>(m, max_edges);
  while (edges.size() < target) {
    auto a = static_cast<std::uint32_t>(rng.next_index(n));
    auto b = static_cast<std::uint32_t>(rng.next_index(n));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!used.insert({a, b}).second) continue;
    edges.push_back({a, b, 1.0});
  }
  return Graph(n, std::move(edges));
}

// Random graph that may be disconnected (uniform pairs, no spanning tree).
inline Graph random_graph(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  SeededRng rng(SeededRng::mix(seed));
  std::set<std::pair<std::uint32_t, std::uint32_t>> used;
  std::vector<Edge> edges;
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t target = std::min<std::uint64_t>(m, max_edges);
  std::uint32_t guard = 0;
  while (edges.size() < target && ++guard < 100000) {
    auto a = static_cast<std::uint32_t>(rng.next_index(n));
    auto b = static_cast<std::uint32_t>(rng.next_index(n));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!used.insert({a, b}).second) continue;
    edges.push_back({a, b, 1.0});
  }
  return Graph(n, std::move(edges));
}

// Independent effective-resistance oracle: full Laplacian pseudoinverse via
// Eigen's complete orthogonal decomposition, ER(e) = (chi_u - chi_v)^T L+
// (chi_u - chi_v). O(n^3); for small n only.
inline std::vector<double> er_pinv_oracle(const Graph& g) {
  const std::uint32_t n = g.vertex_count();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    lap(e.u, e.u) += e.w;
    lap(e.v, e.v) += e.w;
    lap(e.u, e.v) -= e.w;
    lap(e.v, e.u) -= e.w;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lap);
  const Eigen::MatrixXd pinv = cod.pseudoInverse();
  std::vector<double> er;
  er.reserve(g.edge_count());
  for (const Edge& e : g.edges())
    er.push_back(pinv(e.u, e.u) + pinv(e.v, e.v) - 2.0 * pinv(e.u, e.v));
  return er;
}

// Exhaustive ambiguity oracle. For every vertex v and incident source edge
// e: the first hop goes to an opposite-bundle-end endpoint of any member of
// e's bundle, the remaining gamma-1 hops walk freely in the geometric graph
// (path enumeration); a reached vertex is false when its BFS distance in the
// source graph exceeds gamma. Returns false/total, 0 when total is 0.
inline double ambiguity_oracle(const Graph& g, const GeometricGraph& geo, std::uint32_t gamma) {
  const std::uint32_t n = g.vertex_count();
  auto bfs_dist = [&](const Graph& graph, std::uint32_t s) {
    std::vector<std::uint32_t> d(graph.vertex_count(), UINT32_MAX);
    std::queue<std::uint32_t> q;
    d[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::uint32_t v = q.front();
      q.pop();
      for (const AdjEntry& a : graph.neighbors(v))
        if (d[a.neighbor] == UINT32_MAX) {
          d[a.neighbor] = d[v] + 1;
          q.push(a.neighbor);
        }
    }
    return d;
  };

  std::uint64_t total = 0, false_count = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    const std::vector<std::uint32_t> dist_g = bfs_dist(g, v);
    for (const AdjEntry& inc : g.neighbors(v)) {
      const std::uint32_t e = inc.edge;
      const std::uint32_t b = geo.bundles.bundle_of[e];
      const bool v_at_end_a = geo.bundles.end_a(g, e) == v;
      // First-hop targets: every member's endpoint at the bundle end
      // opposite to v's.
      std::set<std::uint32_t> targets;
      for (std::uint32_t member : geo.bundles.members[b]) {
        const std::uint32_t t =
            v_at_end_a ? geo.bundles.end_b(g, member) : geo.bundles.end_a(g, member);
        if (t != v) targets.insert(t);
      }
      // Free walk of up to gamma-1 further hops in the geometric graph.
      std::set<std::uint32_t> reached;
      for (std::uint32_t t : targets) {
        std::vector<std::uint32_t> frontier{t};
        std::set<std::uint32_t> seen{t};
        reached.insert(t);
        for (std::uint32_t hop = 1; hop < gamma; ++hop) {
          std::vector<std::uint32_t> next;
          for (std::uint32_t x : frontier)
            for (const AdjEntry& a : geo.graph.neighbors(x))
              if (seen.insert(a.neighbor).second) {
                next.push_back(a.neighbor);
                reached.insert(a.neighbor);
              }
          frontier = std::move(next);
        }
      }
      reached.erase(v);
      total += reached.size();
      for (std::uint32_t w : reached)
        if (dist_g[w] > gamma) ++false_count;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(false_count) / static_cast<double>(total);
}

// Random but valid bundle assignment: edges are shuffled into groups, each
// edge gets a random orientation except the lowest-indexed member of every
// bundle (the reference stays unflipped).
inline BundleAssignment random_bundles(const Graph& g, std::uint64_t seed) {
  SeededRng rng(SeededRng::mix(seed));
  const std::uint32_t m = g.edge_count();
  BundleAssignment out;
  out.bundle_of.resize(m);
  out.flipped.assign(m, 0);
  if (m == 0) return out;
  const std::uint32_t bundle_count = 1 + static_cast<std::uint32_t>(rng.next_index(m));
  for (std::uint32_t e = 0; e < m; ++e)
    out.bundle_of[e] = static_cast<std::uint32_t>(rng.next_index(bundle_count));
  // Compact ids in first-occurrence order, as detect_bundles produces them.
  std::vector<std::uint32_t> remap(bundle_count, UINT32_MAX);
  std::uint32_t next_id = 0;
  for (std::uint32_t e = 0; e < m; ++e) {
    if (remap[out.bundle_of[e]] == UINT32_MAX) remap[out.bundle_of[e]] = next_id++;
    out.bundle_of[e] = remap[out.bundle_of[e]];
  }
  out.members.resize(next_id);
  for (std::uint32_t e = 0; e < m; ++e) out.members[out.bundle_of[e]].push_back(e);
  for (const auto& mem : out.members)
    for (std::size_t i = 1; i < mem.size(); ++i)
      out.flipped[mem[i]] = static_cast<char>(rng.next_index(2));
  return out;
}

inline bool same_polylines(const Drawing& a, const Drawing& b) {
  if (a.polylines.size() != b.polylines.size()) return false;
  for (std::size_t i = 0; i < a.polylines.size(); ++i) {
    if (a.polylines[i].size() != b.polylines[i].size()) return false;
    for (std::size_t j = 0; j < a.polylines[i].size(); ++j)
      if (!(a.polylines[i][j] == b.polylines[i][j])) return false;
  }
  return true;
}

inline bool same_edge_sets(const Graph& a, const Graph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  for (std::uint32_t i = 0; i < a.edge_count(); ++i) {
    const Edge &ea = a.edge(i), &eb = b.edge(i);
    if (ea.u != eb.u || ea.v != eb.v || ea.w != eb.w) return false;
  }
  return true;
}

// Scratch directory unique to the running test binary.
class TempDir {
 public:
  explicit TempDir(const std::string& label) {
    dir_ = std::filesystem::temp_directory_path() /
           ("bundlekit_" + label + "_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace bundlekit::testing
