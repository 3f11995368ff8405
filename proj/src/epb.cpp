#include "bundlekit/epb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace bundlekit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HeapItem {
  double dist;
  std::uint32_t vertex;
  bool operator>(const HeapItem& o) const {
    return dist != o.dist ? dist > o.dist : vertex > o.vertex;
  }
};

using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>>;

// Distinct-edge counter for search instrumentation: generation marks avoid
// clearing between searches. Only allocated when stats are requested.
struct EdgeCounter {
  std::vector<std::uint32_t> mark;
  std::uint32_t generation = 0;
  std::size_t distinct = 0;

  explicit EdgeCounter(std::uint32_t edges) : mark(edges, 0) {}
  void begin() {
    ++generation;
    distinct = 0;
  }
  void touch(std::uint32_t e) {
    if (mark[e] != generation) {
      mark[e] = generation;
      ++distinct;
    }
  }
};

// Dijkstra over the edges enabled in `usable`, pruned at `bound`; fills
// dist and, when given, counts the distinct edges examined.
void dijkstra(const Graph& g, const std::vector<double>& weight, const std::vector<char>& usable,
              std::uint32_t source, double bound, std::vector<double>& dist,
              std::vector<std::uint32_t>& touched, EdgeCounter* counter) {
  for (std::uint32_t v : touched) dist[v] = kInf;
  touched.clear();
  MinHeap heap;
  dist[source] = 0.0;
  touched.push_back(source);
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [dv, v] = heap.top();
    heap.pop();
    if (dv > dist[v]) continue;
    if (dv > bound) break;
    for (const AdjEntry& a : g.neighbors(v)) {
      if (!usable[a.edge]) continue;
      if (counter) counter->touch(a.edge);
      const double cand = dv + weight[a.edge];
      if (cand < dist[a.neighbor]) {
        if (dist[a.neighbor] == kInf) touched.push_back(a.neighbor);
        dist[a.neighbor] = cand;
        heap.push({cand, a.neighbor});
      }
    }
  }
}

// Among paths whose relaxation sums match the shortest distance exactly,
// walks the lexicographically smallest vertex sequence from s to t. Returns
// empty on the (rounding-induced) case that no neighbor continues the walk.
std::vector<std::uint32_t> lex_walk(const Graph& g, const std::vector<double>& weight,
                                    const std::vector<char>& usable,
                                    const std::vector<double>& dist_s,
                                    const std::vector<double>& dist_t, std::uint32_t s,
                                    std::uint32_t t) {
  const double total = dist_s[t];
  std::vector<std::uint32_t> path{s};
  std::uint32_t x = s;
  while (x != t) {
    std::uint32_t best = UINT32_MAX;
    for (const AdjEntry& a : g.neighbors(x)) {
      if (!usable[a.edge]) continue;
      const std::uint32_t y = a.neighbor;
      if (dist_s[y] == dist_s[x] + weight[a.edge] && dist_s[y] + dist_t[y] == total)
        best = std::min(best, y);
    }
    if (best == UINT32_MAX) return {};
    path.push_back(best);
    x = best;
  }
  return path;
}

// Fallback when float rounding defeats the exact-equality walk: one more
// Dijkstra recording parent pointers with smallest-parent tie-breaks.
std::vector<std::uint32_t> parent_path(const Graph& g, const std::vector<double>& weight,
                                       const std::vector<char>& usable, std::uint32_t s,
                                       std::uint32_t t) {
  const std::uint32_t n = g.vertex_count();
  std::vector<double> dist(n, kInf);
  std::vector<std::uint32_t> parent(n, UINT32_MAX);
  MinHeap heap;
  dist[s] = 0.0;
  heap.push({0.0, s});
  while (!heap.empty()) {
    const auto [dv, v] = heap.top();
    heap.pop();
    if (dv > dist[v]) continue;
    if (v == t) break;
    for (const AdjEntry& a : g.neighbors(v)) {
      if (!usable[a.edge]) continue;
      const double cand = dv + weight[a.edge];
      if (cand < dist[a.neighbor] ||
          (cand == dist[a.neighbor] && v < parent[a.neighbor])) {
        dist[a.neighbor] = cand;
        parent[a.neighbor] = v;
        heap.push({cand, a.neighbor});
      }
    }
  }
  std::vector<std::uint32_t> path;
  for (std::uint32_t x = t; x != UINT32_MAX; x = parent[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

Polyline smooth_path(const std::vector<Vec2>& control, std::uint32_t rounds) {
  Polyline p = control;
  for (std::uint32_t r = 0; r < rounds; ++r) p = chaikin_round(p);
  return p;
}

Drawing epb_core(const Graph& g, const Drawing& d, const EpbParams& params,
                 const std::vector<char>* spanner, EpbStats* stats) {
  validate_drawing(d);
  if (d.edges.size() != g.edge_count() || d.positions.size() != g.vertex_count())
    throw std::invalid_argument("epb_bundle: drawing does not match the graph");
  if (!(params.distortion_limit > 1.0))
    throw std::invalid_argument("epb_bundle: distortion limit must exceed 1");

  const std::uint32_t m = g.edge_count();
  const std::uint32_t n = g.vertex_count();

  std::vector<double> drawn(m);
  for (std::uint32_t i = 0; i < m; ++i) drawn[i] = polyline_length(d.polylines[i]);

  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return drawn[a] > drawn[b]; });

  // Path searches run over straight segments only: the processed edge and
  // anything already rerouted is unusable; spanner mode further confines
  // them to the spanner.
  std::vector<char> usable(m);
  for (std::uint32_t i = 0; i < m; ++i) usable[i] = spanner ? (*spanner)[i] : 1;
  std::vector<char> locked(m, 0), rerouted(m, 0);

  Drawing out = d;
  std::vector<double> dist_s(n, kInf), dist_t(n, kInf);
  std::vector<std::uint32_t> touched_s, touched_t;
  std::unique_ptr<EdgeCounter> counter;

  if (stats) {
    stats->processing_order = order;
    stats->searches = 0;
    stats->max_search_edges = 0;
    stats->rerouted.clear();
    stats->paths.clear();
    counter = std::make_unique<EdgeCounter>(m);
  }

  for (std::uint32_t e : order) {
    if (locked[e] || rerouted[e]) continue;
    const auto [u, v] = d.edges[e];
    const double straight = dist(d.positions[u], d.positions[v]);
    if (straight <= 0.0) continue;
    const double bound = params.distortion_limit * straight;

    const char saved = usable[e];
    usable[e] = 0;
    if (counter) counter->begin();
    dijkstra(g, drawn, usable, u, bound, dist_s, touched_s, counter.get());
    if (stats) {
      ++stats->searches;
      stats->max_search_edges = std::max(stats->max_search_edges, counter->distinct);
    }
    if (dist_s[v] <= bound) {
      dijkstra(g, drawn, usable, v, bound, dist_t, touched_t, nullptr);
      std::vector<std::uint32_t> path = lex_walk(g, drawn, usable, dist_s, dist_t, u, v);
      if (path.empty()) path = parent_path(g, drawn, usable, u, v);
      if (path.size() >= 2) {
        std::vector<Vec2> control;
        control.reserve(path.size());
        for (std::uint32_t x : path) control.push_back(d.positions[x]);
        out.polylines[e] = smooth_path(control, params.smoothing);
        rerouted[e] = 1;
        usable[e] = 0;
        for (std::size_t i = 1; i < path.size(); ++i) {
          const auto idx = g.edge_index(path[i - 1], path[i]);
          locked[*idx] = 1;
        }
        if (stats) {
          stats->rerouted.push_back(e);
          stats->paths.push_back(std::move(path));
        }
        continue;
      }
    }
    usable[e] = saved;
  }
  return out;
}

}  // namespace

std::vector<char> greedy_spanner(const Graph& g, const std::vector<double>& lengths,
                                 double stretch) {
  if (lengths.size() != g.edge_count())
    throw std::invalid_argument("greedy_spanner: length per edge required");
  if (!(stretch >= 1.0)) throw std::invalid_argument("greedy_spanner: stretch must be >= 1");
  const std::uint32_t m = g.edge_count();
  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return lengths[a] < lengths[b]; });
  std::vector<char> keep(m, 0);
  std::vector<double> dist(g.vertex_count(), kInf);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t e : order) {
    const Edge& ed = g.edge(e);
    const double bound = stretch * lengths[e];
    dijkstra(g, lengths, keep, ed.u, bound, dist, touched, nullptr);
    if (!(dist[ed.v] <= bound)) keep[e] = 1;
  }
  return keep;
}

Drawing epb_bundle(const Graph& graph, const Drawing& drawing, const EpbParams& params,
                   EpbStats* stats) {
  return epb_core(graph, drawing, params, nullptr, stats);
}

Drawing sepb_bundle(const Graph& graph, const Drawing& drawing, const EpbParams& params,
                    EpbStats* stats) {
  std::vector<double> drawn(graph.edge_count());
  for (std::uint32_t i = 0; i < graph.edge_count(); ++i)
    drawn[i] = polyline_length(drawing.polylines[i]);
  const std::vector<char> spanner = greedy_spanner(graph, drawn, params.spanner_stretch);
  if (stats)
    stats->spanner_edges =
        static_cast<std::uint32_t>(std::count(spanner.begin(), spanner.end(), 1));
  return epb_core(graph, drawing, params, &spanner, stats);
}

}  // namespace bundlekit
