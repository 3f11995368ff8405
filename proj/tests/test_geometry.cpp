#include <cmath>

#include "doctest.h"

#include "bundlekit/geometry.hpp"

using namespace bundlekit;

TEST_CASE("polyline length sums segment lengths") {
  CHECK(polyline_length({{0, 0}, {3, 4}}) == doctest::Approx(5.0));
  CHECK(polyline_length({{0, 0}, {1, 0}, {1, 1}}) == doctest::Approx(2.0));
  CHECK(polyline_length({{2, 2}}) == 0.0);
}

TEST_CASE("resampling spaces points evenly and keeps endpoints exact") {
  const Polyline p{{0, 0}, {10, 0}};
  const Polyline r = resample_polyline(p, 5);
  REQUIRE(r.size() == 5);
  CHECK(r.front() == p.front());
  CHECK(r.back() == p.back());
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i].x == doctest::Approx(2.5 * i));

  SUBCASE("bent polyline keeps arc-length spacing") {
    const Polyline bent{{0, 0}, {1, 0}, {1, 1}};
    const Polyline rb = resample_polyline(bent, 5);
    REQUIRE(rb.size() == 5);
    CHECK(rb[2] == Vec2{1, 0});  // midpoint of the 2-unit arc is the corner
    CHECK(rb[1] == Vec2{0.5, 0});
    CHECK(rb[3].y == doctest::Approx(0.5));
  }

  SUBCASE("zero-length polyline duplicates the point") {
    const Polyline z = resample_polyline({{3, 3}, {3, 3}}, 4);
    REQUIRE(z.size() == 4);
    for (const Vec2& q : z) CHECK(q == Vec2{3, 3});
  }
}

TEST_CASE("corner cutting keeps endpoints and shortens corners") {
  const Polyline p{{0, 0}, {1, 0}, {1, 1}};
  const Polyline c = chaikin_round(p);
  REQUIRE(c.size() == 4);
  CHECK(c.front() == p.front());
  CHECK(c.back() == p.back());
  CHECK(c[1] == Vec2{0.75, 0});
  CHECK(c[2] == Vec2{1, 0.25});
  CHECK(polyline_length(c) < polyline_length(p));

  SUBCASE("two-point polylines pass through") {
    const Polyline s{{0, 0}, {1, 1}};
    CHECK(chaikin_round(s) == s);
  }
}

TEST_CASE("point-segment distance") {
  CHECK(point_segment_distance({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
  CHECK(point_segment_distance({5, 0}, {-1, 0}, {1, 0}) == doctest::Approx(4.0));
  CHECK(point_segment_distance({0.5, 0}, {0, 0}, {1, 0}) == doctest::Approx(0.0));
  SUBCASE("degenerate segment is a point") {
    CHECK(point_segment_distance({3, 4}, {0, 0}, {0, 0}) == doctest::Approx(5.0));
  }
}

TEST_CASE("point-polyline distance is the min over segments") {
  const Polyline p{{0, 0}, {1, 0}, {1, 1}};
  CHECK(point_polyline_distance({2, 1}, p) == doctest::Approx(1.0));
  CHECK(point_polyline_distance({0.5, -0.25}, p) == doctest::Approx(0.25));
}
