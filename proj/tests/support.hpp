#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rayvor/loci.hpp"

// Shared helpers for the test binaries.
namespace rayvor::test {

/// Approximate distance from a point to a bounded primitive, accurate to
/// well below 1e-10 for the curve scales used in the tests: closed forms for
/// lines and arcs, dense scan plus ternary refinement for hyperbolae.
inline double distance_to_primitive(const LocusPrimitive& primitive, Point z) {
  if (const auto* line = std::get_if<LinearPiece>(&primitive)) {
    const Point d = direction_vector(line->direction);
    const double t = std::clamp(dot(z - line->anchor, d), line->t_min, line->t_max);
    return distance(z, line->anchor + t * d);
  }
  if (const auto* arc = std::get_if<CircularArc>(&primitive)) {
    const double sweep = arc_sweep(*arc);
    const double raw = polar_angle(arc->center, z);
    const double t = arc->orientation == ArcOrientation::ccw ? wrap_ccw(raw - arc->start_angle)
                                                             : wrap_ccw(arc->start_angle - raw);
    if (t <= sweep) {
      return std::fabs(distance(z, arc->center) - arc->radius);
    }
    return std::min(distance(z, circular_arc_point(*arc, 0.0)),
                    distance(z, circular_arc_point(*arc, sweep)));
  }
  const auto& hyp = std::get<HyperbolicArc>(primitive);
  const int n = 512;
  double best_u = hyp.u_min;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double u = hyp.u_min + (hyp.u_max - hyp.u_min) * static_cast<double>(i) / n;
    const double d = distance(z, hyperbola_point(hyp, u));
    if (d < best) {
      best = d;
      best_u = u;
    }
  }
  double lo = std::max(hyp.u_min, best_u - (hyp.u_max - hyp.u_min) / n);
  double hi = std::min(hyp.u_max, best_u + (hyp.u_max - hyp.u_min) / n);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (distance(z, hyperbola_point(hyp, m1)) < distance(z, hyperbola_point(hyp, m2))) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return distance(z, hyperbola_point(hyp, 0.5 * (lo + hi)));
}

inline std::string test_dir() { return RAYVOR_TEST_DIR; }
inline std::string test_out() { return RAYVOR_TEST_OUT; }

}  // namespace rayvor::test
