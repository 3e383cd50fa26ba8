#pragma once

#include <limits>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "rayvor/geometry.hpp"

namespace rayvor {

// Angle gaps below this are treated as exact degeneracies when classifying
// locus families (parallel rays, mirror pairs). Far below anything a random
// configuration produces, far above double rounding.
inline constexpr double kDegenerateAngleEps = 1e-12;

enum class ArcOrientation { ccw, cw };
enum class ArcSide { left, right };
enum class HyperbolaBranch { positive_x, negative_x };

/// Circle arc swept from start_angle to end_angle in the given orientation.
struct CircularArc {
  Point center{};
  double radius = 1.0;
  double start_angle = 0.0;
  double end_angle = 0.0;
  ArcOrientation orientation = ArcOrientation::ccw;
};

/// One branch of the rectangular hyperbola x*y = h, carried from its
/// canonical frame into world coordinates. Points are parametrized by the
/// log-parameter u with canonical x = (+/-) h*e^u and y = h/x; u bounds may
/// be infinite until the arc is clipped.
struct HyperbolicArc {
  double h = 1.0;
  SimilarityTransform frame{};
  HyperbolaBranch branch = HyperbolaBranch::positive_x;
  double u_min = -std::numeric_limits<double>::infinity();
  double u_max = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool bounded() const { return std::isfinite(u_min) && std::isfinite(u_max); }
};

/// Straight piece: anchor + t * (cos dir, sin dir) over a signed arc-length
/// interval; either bound may be infinite.
struct LinearPiece {
  Point anchor{};
  double direction = 0.0;
  double t_min = -std::numeric_limits<double>::infinity();
  double t_max = std::numeric_limits<double>::infinity();

  [[nodiscard]] bool bounded() const { return std::isfinite(t_min) && std::isfinite(t_max); }
};

using LocusPrimitive = std::variant<CircularArc, HyperbolicArc, LinearPiece>;

// ---------------------------------------------------------------------------
// Constant angle-sum locus (inscribed-angle circle).
// ---------------------------------------------------------------------------

/// Open circle arc through p and q (endpoints excluded from the locus) whose
/// points z strictly on the chosen side of the directed line p->q see the
/// base angles sum to sigma. Radius is |pq| / (2 sin sigma); sigma must lie
/// in (0, pi).
[[nodiscard]] CircularArc constant_angle_sum_locus(Point p, Point q, double sigma, ArcSide side);

// ---------------------------------------------------------------------------
// Constant angle-difference locus.
//
// In the canonical frame with p = (h, 1) and q = (-h, -1) the locus lies on
// x*y = h, but the base-angle difference is constant only per half branch:
// it equals 2*atan(h) beyond the site (u > 0) and pi - 2*atan(h) before it
// (u < 0). The exact level set for a signed difference delta therefore glues
// the u >= 0 half of the h = tan(|delta|/2) branch to the u <= 0 half of the
// h = cot(|delta|/2) branch; both halves meet at the site the branch passes
// through. See docs/hdelta_calibration.txt for the measured table.
// ---------------------------------------------------------------------------

struct AngleDifferenceLocus {
  /// Perpendicular bisector of pq; present exactly when delta is degenerate
  /// (|delta| below kDegenerateAngleEps), in which case arcs is empty.
  std::optional<LinearPiece> line;
  /// Two glued halves: arcs[0] covers u in [0, +inf) with h = tan(|delta|/2),
  /// arcs[1] covers u in (-inf, 0] with h = cot(|delta|/2). delta > 0 selects
  /// the branch through p, delta < 0 the branch through q.
  std::vector<HyperbolicArc> arcs;
};

/// delta is the signed base-angle difference (angle at p minus angle at q),
/// restricted to (-pi, pi) with |delta| = pi rejected.
[[nodiscard]] AngleDifferenceLocus constant_angle_difference_locus(Point p, Point q, double delta);

/// Samples the glued locus at n parameters uniformly spaced over
/// [u_lo, u_hi]; for the degenerate case the parameter is the signed
/// arc length along the perpendicular bisector.
[[nodiscard]] std::vector<Point> sample_angle_difference_locus(const AngleDifferenceLocus& locus,
                                                               double u_lo, double u_hi, int n);

/// Canonical frame mapping (h, 1) to p and (-h, -1) to q by rotation, scale
/// and translation only.
[[nodiscard]] SimilarityTransform make_canonical_frame(Point p, Point q, double h);

// ---------------------------------------------------------------------------
// Evaluation and sampling.
// ---------------------------------------------------------------------------

/// World point at log-parameter u.
[[nodiscard]] Point hyperbola_point(const HyperbolicArc& arc, double u);

/// World point at the sweep parameter t in [0, arc_sweep(arc)].
[[nodiscard]] Point circular_arc_point(const CircularArc& arc, double t);

/// Total swept angle, in [0, 2*pi).
[[nodiscard]] double arc_sweep(const CircularArc& arc);

[[nodiscard]] Point linear_piece_point(const LinearPiece& piece, double t);

/// n >= 2 points uniformly spaced in u over the arc's bounded range.
[[nodiscard]] std::vector<Point> sample_hyperbolic_arc(const HyperbolicArc& arc, int n);

[[nodiscard]] std::vector<Point> sample_circular_arc(const CircularArc& arc, int n);

/// Requires a bounded piece.
[[nodiscard]] std::vector<Point> sample_linear_piece(const LinearPiece& piece, int n);

/// Sampler over any bounded primitive.
[[nodiscard]] std::vector<Point> sample_primitive(const LocusPrimitive& primitive, int n);

/// World images of the canonical foci (+/-sqrt(2h), +/-sqrt(2h)) of the
/// arc's underlying hyperbola.
[[nodiscard]] std::pair<Point, Point> hyperbola_foci(const HyperbolicArc& arc);

/// Canonical-frame coordinates of a world point; the pullback of any sampled
/// arc point satisfies |x*y - h| <= 1e-9 * (1 + h).
[[nodiscard]] Point canonical_pullback(const HyperbolicArc& arc, Point world);

// ---------------------------------------------------------------------------
// Parameter-space interface shared by clipping and the bisector machinery.
// ---------------------------------------------------------------------------

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Natural parameter range: [0, sweep] for arcs, [u_min, u_max] for
/// hyperbolae, [t_min, t_max] for lines.
[[nodiscard]] ParamRange param_range(const LocusPrimitive& primitive);

[[nodiscard]] Point primitive_point(const LocusPrimitive& primitive, double t);

/// Copy of the primitive narrowed to [lo, hi] of its natural parameter.
[[nodiscard]] LocusPrimitive with_range(const LocusPrimitive& primitive, double lo, double hi);

/// Bounded sub-pieces of the primitive inside the box. Lines clip exactly;
/// arcs and hyperbolae clip by sampled containment with bisection-refined
/// boundaries.
[[nodiscard]] std::vector<LocusPrimitive> clip_to_bbox(const LocusPrimitive& primitive,
                                                       const Bbox& box);

}  // namespace rayvor
