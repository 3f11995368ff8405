#include "bundlekit/geometry.hpp"

#include <algorithm>

namespace bundlekit {

double polyline_length(const Polyline& p) {
  double len = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) len += dist(p[i - 1], p[i]);
  return len;
}

Polyline resample_polyline(const Polyline& p, std::size_t count) {
  if (count < 2) count = 2;
  Polyline out;
  out.reserve(count);
  if (p.empty()) return Polyline(count);
  if (p.size() == 1) return Polyline(count, p.front());

  const double total = polyline_length(p);
  if (total <= 0.0) return Polyline(count, p.front());

  out.push_back(p.front());
  const double step = total / static_cast<double>(count - 1);
  double want = step;
  double walked = 0.0;
  std::size_t seg = 1;
  while (out.size() + 1 < count) {
    const double seg_len = dist(p[seg - 1], p[seg]);
    if (walked + seg_len >= want && seg_len > 0.0) {
      const double t = (want - walked) / seg_len;
      out.push_back(lerp(p[seg - 1], p[seg], t));
      want += step;
    } else {
      walked += seg_len;
      ++seg;
      if (seg >= p.size()) {
        // Numerical shortfall at the very end; pad with the last point.
        while (out.size() + 1 < count) out.push_back(p.back());
        break;
      }
    }
  }
  out.push_back(p.back());
  return out;
}

Polyline chaikin_round(const Polyline& p) {
  if (p.size() < 3) return p;
  Polyline out;
  out.reserve(2 * p.size());
  out.push_back(p.front());
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Vec2 q = lerp(p[i], p[i + 1], 0.25);
    const Vec2 r = lerp(p[i], p[i + 1], 0.75);
    if (i > 0) out.push_back(q);
    if (i + 2 < p.size()) out.push_back(r);
  }
  out.push_back(p.back());
  return out;
}

double point_segment_distance(const Vec2& pt, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return dist(pt, a);
  double t = dot(pt - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(pt, a + ab * t);
}

double point_polyline_distance(const Vec2& pt, const Polyline& p) {
  if (p.empty()) return 0.0;
  if (p.size() == 1) return dist(pt, p.front());
  double best = point_segment_distance(pt, p[0], p[1]);
  for (std::size_t i = 2; i < p.size(); ++i)
    best = std::min(best, point_segment_distance(pt, p[i - 1], p[i]));
  return best;
}

}  // namespace bundlekit
