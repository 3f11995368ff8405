#include "bundlekit/force_bundle.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "bundlekit/compat.hpp"

namespace bundlekit {

namespace {

struct Pair {
  std::uint32_t partner = 0;
  float score = 0.0f;
  bool flipped = false;  // partner runs the opposite way; mirror its indices
};

struct Workspace {
  std::vector<std::vector<Pair>> pairs;       // per edge, ascending partner
  std::vector<std::vector<Vec2>> points;      // current polylines
  std::vector<std::vector<Vec2>> snapshot;
  std::vector<double> length;                 // straight endpoint distance
  std::vector<char> active;                   // zero-length edges sit out
};

void build_pairs(const Drawing& d, const ERMap* er, SebVariant variant, double threshold,
                 Workspace& ws, Exec exec) {
  const std::int64_t m = static_cast<std::int64_t>(d.edges.size());
  ws.pairs.assign(m, {});
  auto row = [&](std::int64_t i) {
    if (!ws.active[i]) return;
    const Vec2 p0 = d.positions[d.edges[i].first];
    const Vec2 p1 = d.positions[d.edges[i].second];
    auto& list = ws.pairs[i];
    for (std::int64_t j = 0; j < m; ++j) {
      if (j == i || !ws.active[j]) continue;
      const Vec2 q0 = d.positions[d.edges[j].first];
      const Vec2 q1 = d.positions[d.edges[j].second];
      double score = c_geometric(p0, p1, q0, q1);
      if (er) {
        const double a = er->normalized[i], b = er->normalized[j];
        score *= variant == SebVariant::er1 ? c_er1(a, b) : c_er2(a, b);
      }
      if (score < threshold || score <= 0.0) continue;
      Pair pr;
      pr.partner = static_cast<std::uint32_t>(j);
      pr.score = static_cast<float>(score);
      pr.flipped = dot(p1 - p0, q1 - q0) < 0.0;
      list.push_back(pr);
    }
  };
  if (exec == Exec::openmp) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < m; ++i) row(i);
  } else {
    for (std::int64_t i = 0; i < m; ++i) row(i);
  }
}

void iterate(Workspace& ws, double kp, double step, Exec exec) {
  const std::int64_t m = static_cast<std::int64_t>(ws.points.size());
  ws.snapshot = ws.points;
  auto move_edge = [&](std::int64_t i) {
    if (!ws.active[i]) return;
    const auto& cur = ws.snapshot[i];
    auto& next = ws.points[i];
    const std::size_t count = cur.size();
    if (count < 3) return;
    const double stiffness = kp / (ws.length[i] * static_cast<double>(count - 1));
    for (std::size_t t = 1; t + 1 < count; ++t) {
      const Vec2 pt = cur[t];
      Vec2 force = (cur[t - 1] - pt + (cur[t + 1] - pt)) * stiffness;
      for (const Pair& pr : ws.pairs[i]) {
        const auto& other = ws.snapshot[pr.partner];
        const Vec2 q = pr.flipped ? other[count - 1 - t] : other[t];
        const Vec2 delta = q - pt;
        const double dist2 = dot(delta, delta);
        if (dist2 > 1e-12)
          force += delta * (static_cast<double>(pr.score) / dist2);
      }
      next[t] = pt + force * step;
    }
  };
  if (exec == Exec::openmp) {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < m; ++i) move_edge(i);
  } else {
    for (std::int64_t i = 0; i < m; ++i) move_edge(i);
  }
}

Drawing force_bundle(const Drawing& d, const ERMap* er, SebVariant variant,
                     const FdebParams& p, Exec exec) {
  validate_drawing(d);
  if (er && er->normalized.size() != d.edges.size())
    throw std::invalid_argument("seb_bundle: resistance map does not cover the drawing");
  if (p.cycles < 1 || p.iterations_per_cycle < 1 || !(p.initial_step > 0.0) ||
      !(p.spring_constant > 0.0))
    throw std::invalid_argument("force bundling: parameters must be positive");
  if (p.compatibility_threshold < 0.0 || p.compatibility_threshold > 1.0)
    throw std::invalid_argument("force bundling: threshold must lie in [0,1]");

  const std::size_t m = d.edges.size();
  Workspace ws;
  ws.length.resize(m);
  ws.active.resize(m);
  ws.points.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a = d.positions[d.edges[i].first];
    const Vec2 b = d.positions[d.edges[i].second];
    ws.length[i] = dist(a, b);
    ws.active[i] = ws.length[i] > 0.0 ? 1 : 0;
    ws.points[i] = {a, b};
  }
  build_pairs(d, er, variant, p.compatibility_threshold, ws, exec);

  double step = p.initial_step * drawing_diagonal(d);
  std::uint32_t iterations = p.iterations_per_cycle;
  std::uint32_t interior = 1;
  for (std::uint32_t cycle = 0; cycle < p.cycles; ++cycle) {
    for (std::size_t i = 0; i < m; ++i)
      if (ws.active[i]) ws.points[i] = resample_polyline(ws.points[i], interior + 2);
    for (std::uint32_t it = 0; it < iterations; ++it)
      iterate(ws, p.spring_constant, step, exec);
    interior *= 2;
    step *= 0.5;
    iterations = std::max<std::uint32_t>(1, iterations / 2);
  }

  Drawing out;
  out.positions = d.positions;
  out.edges = d.edges;
  out.polylines.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    Polyline pl = std::move(ws.points[i]);
    // Endpoint pinning is exact by construction; restate it against the
    // original coordinates to be safe against resampling arithmetic.
    pl.front() = d.positions[d.edges[i].first];
    pl.back() = d.positions[d.edges[i].second];
    out.polylines[i] = std::move(pl);
  }
  return out;
}

}  // namespace

Drawing fdeb_bundle(const Drawing& drawing, const FdebParams& params, Exec exec) {
  return force_bundle(drawing, nullptr, SebVariant::er1, params, exec);
}

Drawing seb_bundle(const Drawing& drawing, const ERMap& er, SebVariant variant,
                   const FdebParams& params, Exec exec) {
  return force_bundle(drawing, &er, variant, params, exec);
}

}  // namespace bundlekit
