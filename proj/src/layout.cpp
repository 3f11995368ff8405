#include "bundlekit/layout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bundlekit/rng.hpp"

namespace bundlekit {

namespace {

constexpr double kMinDist = 1e-9;

// Deterministic stand-in direction for coincident points.
Vec2 jitter_direction(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t h = SeededRng::mix((static_cast<std::uint64_t>(a) << 32) | b);
  const double angle = 2.0 * M_PI * (static_cast<double>(h >> 11) * 0x1.0p-53);
  return {std::cos(angle), std::sin(angle)};
}

Vec2 displacement_for(const Graph& g, const std::vector<Vec2>& pos, std::uint32_t v, double k) {
  Vec2 disp{0.0, 0.0};
  const std::uint32_t n = g.vertex_count();
  for (std::uint32_t u = 0; u < n; ++u) {
    if (u == v) continue;
    Vec2 delta = pos[v] - pos[u];
    double d = norm(delta);
    if (d < kMinDist) {
      delta = jitter_direction(v, u) * kMinDist;
      d = kMinDist;
    }
    disp += delta * ((k * k / d) / d);
  }
  for (const AdjEntry& a : g.neighbors(v)) {
    Vec2 delta = pos[a.neighbor] - pos[v];
    double d = norm(delta);
    if (d < kMinDist) {
      delta = jitter_direction(a.neighbor, v) * kMinDist;
      d = kMinDist;
    }
    disp += delta * (d / k);
  }
  return disp;
}

}  // namespace

Drawing compute_layout(const Graph& g, const LayoutParams& params,
                       const std::vector<Vec2>* imported, Exec exec) {
  const std::uint32_t n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("compute_layout: empty graph");
  if (!(params.width > 0.0) || !(params.height > 0.0))
    throw std::invalid_argument("compute_layout: area must be positive");

  if (params.algorithm == LayoutAlgorithm::import) {
    if (!imported) throw std::invalid_argument("compute_layout: import mode needs coordinates");
    if (imported->size() != n)
      throw std::invalid_argument("compute_layout: imported coordinate count mismatch");
    return straight_drawing(g, *imported);
  }
  if (params.iterations < 1)
    throw std::invalid_argument("compute_layout: iterations must be >= 1");

  std::vector<Vec2> pos(n);
  SeededRng rng(SeededRng::mix(params.seed));
  for (std::uint32_t v = 0; v < n; ++v) {
    const double x = params.width * rng.next_unit();
    const double y = params.height * rng.next_unit();
    pos[v] = {x, y};
  }

  const double k = std::sqrt(params.width * params.height / static_cast<double>(n));
  std::vector<Vec2> disp(n);
  for (std::uint32_t it = 0; it < params.iterations; ++it) {
    const double temp =
        (params.width / 10.0) * (1.0 - static_cast<double>(it) / params.iterations);
    const std::int64_t nn = n;
    if (exec == Exec::openmp) {
#pragma omp parallel for schedule(static)
      for (std::int64_t v = 0; v < nn; ++v)
        disp[v] = displacement_for(g, pos, static_cast<std::uint32_t>(v), k);
    } else {
      for (std::int64_t v = 0; v < nn; ++v)
        disp[v] = displacement_for(g, pos, static_cast<std::uint32_t>(v), k);
    }
    for (std::uint32_t v = 0; v < n; ++v) {
      const double len = norm(disp[v]);
      if (len > kMinDist) pos[v] += disp[v] * (std::min(len, temp) / len);
      pos[v].x = std::clamp(pos[v].x, 0.0, params.width);
      pos[v].y = std::clamp(pos[v].y, 0.0, params.height);
    }
  }
  return straight_drawing(g, std::move(pos));
}

}  // namespace bundlekit
