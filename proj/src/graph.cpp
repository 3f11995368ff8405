#include "bundlekit/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace bundlekit {

Graph::Graph(std::uint32_t vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    if (e.u >= n_ || e.v >= n_)
      throw std::invalid_argument("edge endpoint " + std::to_string(std::max(e.u, e.v)) +
                                  " out of range for " + std::to_string(n_) + " vertices");
    if (e.u == e.v)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0))
      throw std::invalid_argument("non-positive weight on edge (" + std::to_string(e.u) +
                                  ", " + std::to_string(e.v) + ")");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
      throw std::invalid_argument("duplicate edge (" + std::to_string(edges_[i].u) + ", " +
                                  std::to_string(edges_[i].v) + ")");
  }

  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::uint32_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  adj_.resize(2 * edges_.size());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adj_[cursor[e.u]++] = {e.v, i};
    adj_[cursor[e.v]++] = {e.u, i};
  }

  comp_.assign(n_, UINT32_MAX);
  comp_count_ = 0;
  for (std::uint32_t start = 0; start < n_; ++start) {
    if (comp_[start] != UINT32_MAX) continue;
    const std::uint32_t id = comp_count_++;
    comp_vertices_.emplace_back();
    std::queue<std::uint32_t> q;
    comp_[start] = id;
    q.push(start);
    while (!q.empty()) {
      const std::uint32_t v = q.front();
      q.pop();
      comp_vertices_[id].push_back(v);
      for (const AdjEntry& a : neighbors(v)) {
        if (comp_[a.neighbor] == UINT32_MAX) {
          comp_[a.neighbor] = id;
          q.push(a.neighbor);
        }
      }
    }
    std::sort(comp_vertices_[id].begin(), comp_vertices_[id].end());
  }
}

std::optional<std::uint32_t> Graph::edge_index(std::uint32_t u, std::uint32_t v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v),
                             [](const Edge& e, const std::pair<std::uint32_t, std::uint32_t>& key) {
                               return e.u != key.first ? e.u < key.first : e.v < key.second;
                             });
  if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
  return static_cast<std::uint32_t>(it - edges_.begin());
}

}  // namespace bundlekit
