#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace bundlekit {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }
inline Vec2 lerp(const Vec2& a, const Vec2& b, double t) {
  return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}
inline Vec2 midpoint(const Vec2& a, const Vec2& b) { return lerp(a, b, 0.5); }

using Polyline = std::vector<Vec2>;

double polyline_length(const Polyline& p);

// Resamples to `count` points (count >= 2) spaced evenly by arc length.
// Endpoints are preserved exactly. A zero-length polyline yields copies of
// its first point.
Polyline resample_polyline(const Polyline& p, std::size_t count);

// One round of corner cutting (1/4, 3/4 subdivision) that keeps both
// endpoints fixed. Polylines with fewer than three points pass through.
Polyline chaikin_round(const Polyline& p);

// Distance from a point to the segment [a, b].
double point_segment_distance(const Vec2& pt, const Vec2& a, const Vec2& b);

// Distance from a point to a polyline (min over its segments).
double point_polyline_distance(const Vec2& pt, const Polyline& p);

}  // namespace bundlekit
