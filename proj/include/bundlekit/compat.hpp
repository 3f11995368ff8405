#pragma once

#include "bundlekit/geometry.hpp"

namespace bundlekit {

struct CompatibilityScore {
  double geometric = 0.0;  // C_G in [0,1]
  double spectral = 1.0;   // C_ER in [0,1]
  double combined = 0.0;   // product of the two
};

// Geometric compatibility of two straight edges (p0,p1) and (q0,q1): the
// product of the four standard force-bundling terms.
//   angle      |cos| between the segment directions
//   scale      2 / (l_avg/min(|P|,|Q|) + max(|P|,|Q|)/l_avg)
//   position   l_avg / (l_avg + ||Pm - Qm||)
//   visibility min(V(P,Q), V(Q,P)), V from projected-endpoint overlap
// Symmetric; zero-length edges score 0.
double c_geometric(const Vec2& p0, const Vec2& p1, const Vec2& q0, const Vec2& q1);

// Resistance compatibility, variant 1: 1 - |erP - erQ| on normalized values.
double c_er1(double er_p, double er_q);

// Resistance compatibility, variant 2: min/max ratio on normalized values.
// Both zero -> 1 (indistinguishable edges); exactly one zero -> 0.
double c_er2(double er_p, double er_q);

}  // namespace bundlekit
