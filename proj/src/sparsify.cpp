#include "bundlekit/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bundlekit/rng.hpp"

namespace bundlekit {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::uint32_t sparsify_budget(std::uint32_t vertex_count, double factor) {
  if (vertex_count < 2) return 0;
  const double b = std::ceil(factor * vertex_count * std::log(static_cast<double>(vertex_count)));
  if (b >= static_cast<double>(UINT32_MAX)) return UINT32_MAX;
  return static_cast<std::uint32_t>(b);
}

Graph spectral_sparsify(const Graph& g, const ERMap& er, const SparsifyParams& params) {
  if (er.raw.size() != g.edge_count())
    throw std::invalid_argument("spectral_sparsify: ER map does not cover the graph");
  if (!(params.factor > 0.0))
    throw std::invalid_argument("spectral_sparsify: factor must be positive");

  const std::uint32_t m = g.edge_count();
  std::uint32_t budget = sparsify_budget(g.vertex_count(), params.factor);
  if (m <= budget) return g;

  std::vector<double> mass(m);
  for (std::uint32_t i = 0; i < m; ++i) mass[i] = g.edge(i).w * er.raw[i];

  std::vector<char> keep(m, 0);
  std::uint32_t kept = 0;

  if (params.ensure_connected) {
    // Greedy spanning forest favoring high-mass edges; ties fall back to
    // canonical order so the choice is deterministic.
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return mass[a] > mass[b]; });
    UnionFind uf(g.vertex_count());
    for (std::uint32_t i : order) {
      const Edge& e = g.edge(i);
      if (uf.unite(e.u, e.v)) {
        keep[i] = 1;
        ++kept;
      }
    }
    budget = std::max(budget, kept);
  }

  // Weighted sampling without replacement via exponential keys: edge i gets
  // key u^(1/mass_i), u uniform in (0,1]; the top keys are the sample. Keys
  // are assigned in canonical edge order from one seeded stream.
  SeededRng rng(SeededRng::mix(params.seed));
  std::vector<double> key(m, -1.0);
  for (std::uint32_t i = 0; i < m; ++i) {
    const double u = rng.next_unit_open_low();
    if (keep[i]) continue;  // already forced in
    key[i] = mass[i] > 0.0 ? std::pow(u, 1.0 / mass[i]) : -1.0;
  }
  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return key[a] > key[b]; });
  for (std::uint32_t i : order) {
    if (kept >= budget) break;
    if (keep[i] || key[i] < 0.0) continue;
    keep[i] = 1;
    ++kept;
  }

  std::vector<Edge> edges;
  edges.reserve(kept);
  for (std::uint32_t i = 0; i < m; ++i)
    if (keep[i]) edges.push_back(g.edge(i));
  return Graph(g.vertex_count(), std::move(edges));
}

}  // namespace bundlekit
