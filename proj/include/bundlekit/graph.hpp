#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bundlekit {

// Undirected weighted edge in canonical form (u < v after normalization).
struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double w = 1.0;
};

struct AdjEntry {
  std::uint32_t neighbor = 0;
  std::uint32_t edge = 0;  // index into edges()
};

// Simple undirected weighted graph. Construction normalizes endpoint order,
// sorts edges canonically by (u, v), builds the adjacency index, and labels
// connected components. Self-loops, duplicate edges, and non-positive
// weights are rejected; the loaders in io.hpp clean raw input first and
// report what they dropped.
class Graph {
 public:
  Graph() = default;
  Graph(std::uint32_t vertex_count, std::vector<Edge> edges);

  std::uint32_t vertex_count() const { return n_; }
  std::uint32_t edge_count() const { return static_cast<std::uint32_t>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::uint32_t i) const { return edges_[i]; }

  std::span<const AdjEntry> neighbors(std::uint32_t v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }

  // Index of canonical edge (min(u,v), max(u,v)), if present.
  std::optional<std::uint32_t> edge_index(std::uint32_t u, std::uint32_t v) const;

  std::uint32_t component_of(std::uint32_t v) const { return comp_[v]; }
  std::uint32_t component_count() const { return comp_count_; }
  // Vertices of each component, in ascending order.
  const std::vector<std::vector<std::uint32_t>>& components() const { return comp_vertices_; }

  bool connected() const { return n_ == 0 || comp_count_ == 1; }

 private:
  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_;
  std::vector<AdjEntry> adj_;
  std::vector<std::uint32_t> comp_;
  std::vector<std::vector<std::uint32_t>> comp_vertices_;
  std::uint32_t comp_count_ = 0;
};

}  // namespace bundlekit
