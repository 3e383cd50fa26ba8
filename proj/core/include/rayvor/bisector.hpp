#pragma once

#include <vector>

#include "rayvor/loci.hpp"

namespace rayvor {

enum class Metric { oriented_ccw, symmetric_min };

/// Membership tolerance for equidistance along bisector pieces, in radians.
/// Analytic pieces evaluate orders of magnitude below this; pieces from the
/// wrong regime sit orders of magnitude above.
inline constexpr double kBisectorEps = 1e-7;

/// Which rotation sense attains a site's symmetric distance at a point.
enum class RotationSense { ccw, cw, on_ray };

struct RegimeTag {
  RotationSense p_side = RotationSense::on_ray;
  RotationSense q_side = RotationSense::on_ray;
};

/// Regime of the point z with respect to both sites (signs of the wrapped
/// angular offsets; on_ray when an offset is exactly zero).
[[nodiscard]] RegimeTag regime_at(const Site& p, const Site& q, Point z);

/// Sign relation between the two wrapped offsets that a candidate family
/// assumes; equidistance |a| = |b| happens on equal_sign (a = b, inscribed
/// circle family) or opposite_sign (a = -b, hyperbola family) sets, with
/// pieces of the line pq in the degenerate classes.
enum class SignRelation { equal_sign, opposite_sign, line_degenerate };

struct Candidate {
  LocusPrimitive geom;
  SignRelation family = SignRelation::line_degenerate;
};

enum class PieceRole {
  equidistant,      // points satisfy d_p = d_q under the curve's metric
  region_boundary,  // oriented metric only: the site rays, where d_p jumps
};

struct BisectorPiece {
  LocusPrimitive geom;
  PieceRole role = PieceRole::equidistant;
};

struct BisectorCurve {
  Metric metric = Metric::symmetric_min;
  std::vector<BisectorPiece> pieces;
  Site site_p;
  Site site_q;
};

struct BisectorOptions {
  /// Working box for clipping unbounded candidates; when absent a square of
  /// half-size 5 * |pq| around the midpoint is used.
  std::optional<Bbox> working_box;
  /// Samples per candidate when locating equidistant parameter runs.
  int clip_samples = 4096;
  /// Parameter tolerance for the bisection refinement of run endpoints.
  double param_tol = 1e-10;
  double eps = kBisectorEps;
};

/// Default working box: a square centered on the midpoint of pq whose
/// half-size is 5 * |pq|.
[[nodiscard]] Bbox working_bbox(const Site& p, const Site& q);

/// Bisector under the counterclockwise-only distance: the inscribed-angle
/// arc through both sites (degenerating to the line through them minus the
/// open segment when the rays are parallel), plus both site rays flagged as
/// region boundaries.
[[nodiscard]] BisectorCurve oriented_bisector(const Site& p, const Site& q);

/// Analytic candidate families for the symmetric bisector. Always includes
/// the three pieces of the line pq; adds the inscribed-angle arc, the
/// constant-sum hyperbola branches and the perpendicular bisector as the
/// site angles dictate. Candidates may exceed the bisector; clip_by_regime
/// trims them.
[[nodiscard]] std::vector<Candidate> candidate_loci(const Site& p, const Site& q);

/// Maximal sub-pieces of the candidate on which |d_p - d_q| <= eps under the
/// symmetric distance, discovered by dense sampling inside the working box
/// and refined by bisection. Empty output means the candidate is entirely
/// shadowed by the other regime.
[[nodiscard]] std::vector<LocusPrimitive> clip_by_regime(const Candidate& candidate,
                                                         const Site& p, const Site& q,
                                                         const BisectorOptions& options = {});

/// Exact bisector {z : d_p(z) = d_q(z)} under the symmetric distance,
/// assembled from clipped candidates and ordered canonically. Intervals that
/// only dip under eps around an isolated crossing of a candidate with the
/// bisector (interior residual near eps rather than rounding level) are
/// dropped; the crossing point itself is covered by the piece it crosses.
[[nodiscard]] BisectorCurve symmetric_bisector(const Site& p, const Site& q,
                                               const BisectorOptions& options = {});

/// Largest |d_p - d_q| over n samples per equidistant piece (unbounded
/// pieces are clipped to the box first); used by the invariant checks and
/// verification reports. Samples coinciding with a site are skipped.
[[nodiscard]] double max_equidistance_residual(const BisectorCurve& curve, int samples_per_piece,
                                               const Bbox& box);

/// Deterministic polyline sampling of every piece, clipped to the box.
[[nodiscard]] std::vector<std::vector<Point>> sample_curve_polylines(const BisectorCurve& curve,
                                                                     int samples_per_piece,
                                                                     const Bbox& box,
                                                                     bool equidistant_only = false);

}  // namespace rayvor
