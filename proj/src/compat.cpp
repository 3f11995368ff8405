#include "bundlekit/compat.hpp"

#include <algorithm>
#include <cmath>

namespace bundlekit {

namespace {

// V(P,Q): project Q's endpoints onto P's supporting line; 1 when the
// projected midpoint coincides with P's midpoint, falling off linearly and
// clamped at 0. Degenerate projections (Q perpendicular to P) see nothing.
double visibility_one_way(const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1) {
  const Vec2 dir = p1 - p0;
  const double len2 = dot(dir, dir);
  const Vec2 i0 = p0 + dir * (dot(q0 - p0, dir) / len2);
  const Vec2 i1 = p0 + dir * (dot(q1 - p0, dir) / len2);
  const double span = dist(i0, i1);
  if (span <= 0.0) return 0.0;
  const Vec2 im = midpoint(i0, i1);
  const Vec2 pm = midpoint(p0, p1);
  return std::max(0.0, 1.0 - 2.0 * dist(pm, im) / span);
}

}  // namespace

double c_geometric(const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1) {
  const Vec2 dp = p1 - p0;
  const Vec2 dq = q1 - q0;
  const double lp = norm(dp);
  const double lq = norm(dq);
  if (lp <= 0.0 || lq <= 0.0) return 0.0;

  const double angle = std::abs(dot(dp, dq)) / (lp * lq);
  const double l_avg = 0.5 * (lp + lq);
  const double scale =
      2.0 / (l_avg / std::min(lp, lq) + std::max(lp, lq) / l_avg);
  const double position = l_avg / (l_avg + dist(midpoint(p0, p1), midpoint(q0, q1)));
  const double vis =
      std::min(visibility_one_way(p0, p1, q0, q1), visibility_one_way(q0, q1, p0, p1));
  const double c = angle * scale * position * vis;
  return std::clamp(c, 0.0, 1.0);
}

double c_er1(double er_p, double er_q) { return 1.0 - std::abs(er_p - er_q); }

double c_er2(double er_p, double er_q) {
  const double lo = std::min(er_p, er_q);
  const double hi = std::max(er_p, er_q);
  if (hi <= 0.0) return 1.0;
  return lo / hi;
}

}  // namespace bundlekit
