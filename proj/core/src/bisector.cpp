#include "rayvor/bisector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "refine.hpp"

namespace rayvor {

namespace {

void require_distinct_sites(const Site& p, const Site& q, const char* who) {
  if (p.position == q.position) {
    throw InvalidInput(std::string(who) + ": coincident sites");
  }
}

RotationSense sense_of(double offset) {
  if (offset == 0.0) return RotationSense::on_ray;
  return offset > 0.0 ? RotationSense::ccw : RotationSense::cw;
}

LinearPiece ray_piece(Point anchor, double direction) {
  LinearPiece piece;
  piece.anchor = anchor;
  piece.direction = wrap_signed(direction);
  piece.t_min = 0.0;
  return piece;
}

LinearPiece segment_piece(Point a, Point b) {
  LinearPiece piece;
  piece.anchor = a;
  piece.direction = polar_angle(a, b);
  piece.t_min = 0.0;
  piece.t_max = distance(a, b);
  return piece;
}

// Deterministic ordering: by primitive kind, then by parameters.
std::array<double, 7> sort_key(const LocusPrimitive& primitive) {
  if (const auto* arc = std::get_if<CircularArc>(&primitive)) {
    return {0.0, arc->center.x, arc->center.y, arc->radius, arc->start_angle, arc->end_angle,
            arc->orientation == ArcOrientation::ccw ? 0.0 : 1.0};
  }
  if (const auto* hyp = std::get_if<HyperbolicArc>(&primitive)) {
    return {1.0, hyp->h, hyp->branch == HyperbolaBranch::positive_x ? 0.0 : 1.0,
            hyp->frame.rotation, hyp->frame.translation.x, hyp->frame.translation.y, hyp->u_min};
  }
  const auto& line = std::get<LinearPiece>(primitive);
  return {2.0, line.anchor.x, line.anchor.y, line.direction, line.t_min, line.t_max, 0.0};
}

}  // namespace

RegimeTag regime_at(const Site& p, const Site& q, Point z) {
  RegimeTag tag;
  tag.p_side = sense_of(wrap_signed(polar_angle(p.position, z) - p.ray_direction));
  tag.q_side = sense_of(wrap_signed(polar_angle(q.position, z) - q.ray_direction));
  return tag;
}

Bbox working_bbox(const Site& p, const Site& q) {
  const Point mid = midpoint(p.position, q.position);
  const double half = 5.0 * distance(p.position, q.position);
  return {mid.x - half, mid.y - half, mid.x + half, mid.y + half};
}

BisectorCurve oriented_bisector(const Site& p, const Site& q) {
  require_distinct_sites(p, q, "oriented_bisector");
  BisectorCurve curve;
  curve.metric = Metric::oriented_ccw;
  curve.site_p = p;
  curve.site_q = q;

  // Equal ccw offsets hold where the directed view angle from z matches the
  // gap between the two ray directions.
  const double psi = wrap_signed(q.ray_direction - p.ray_direction);
  if (std::fabs(psi) <= kDegenerateAngleEps) {
    // Parallel rays: the line through the sites minus the open segment.
    curve.pieces.push_back(
        {ray_piece(p.position, polar_angle(q.position, p.position)), PieceRole::equidistant});
    curve.pieces.push_back(
        {ray_piece(q.position, polar_angle(p.position, q.position)), PieceRole::equidistant});
  } else if (std::fabs(wrap_signed(psi - kPi)) <= kDegenerateAngleEps) {
    curve.pieces.push_back({segment_piece(p.position, q.position), PieceRole::equidistant});
  } else {
    const ArcSide side = psi > 0.0 ? ArcSide::left : ArcSide::right;
    curve.pieces.push_back(
        {constant_angle_sum_locus(p.position, q.position, kPi - std::fabs(psi), side),
         PieceRole::equidistant});
  }
  curve.pieces.push_back({ray_piece(p.position, p.ray_direction), PieceRole::region_boundary});
  curve.pieces.push_back({ray_piece(q.position, q.ray_direction), PieceRole::region_boundary});
  return curve;
}

std::vector<Candidate> candidate_loci(const Site& p, const Site& q) {
  require_distinct_sites(p, q, "candidate_loci");
  std::vector<Candidate> out;

  // Equal-sign family: one inscribed-angle arc unless the rays are parallel
  // (line pieces) or antipodal (the open segment); both degenerate cases are
  // covered by the line candidates added below.
  const double psi = wrap_signed(q.ray_direction - p.ray_direction);
  if (std::fabs(psi) > kDegenerateAngleEps &&
      std::fabs(wrap_signed(psi - kPi)) > kDegenerateAngleEps) {
    const ArcSide side = psi > 0.0 ? ArcSide::left : ArcSide::right;
    out.push_back({constant_angle_sum_locus(p.position, q.position, kPi - std::fabs(psi), side),
                   SignRelation::equal_sign});
  }

  // Opposite-sign family: both branches of one rectangular hyperbola through
  // the sites; which halves survive falls out of the clipping predicate.
  const double sum_offset = wrap_signed(p.ray_direction + q.ray_direction -
                                        2.0 * polar_angle(q.position, p.position));
  if (std::fabs(wrap_signed(sum_offset - kPi)) <= kDegenerateAngleEps) {
    // Mirror pair: the perpendicular bisector of pq.
    LinearPiece perp;
    perp.anchor = midpoint(p.position, q.position);
    perp.direction = wrap_signed(polar_angle(q.position, p.position) + 0.5 * kPi);
    out.push_back({perp, SignRelation::opposite_sign});
  } else if (std::fabs(sum_offset) > kDegenerateAngleEps) {
    const double dc = sum_offset > 0.0 ? sum_offset : kPi + sum_offset;
    const double h = std::tan(0.5 * dc);
    const SimilarityTransform frame = make_canonical_frame(p.position, q.position, h);
    HyperbolicArc pos;
    pos.h = h;
    pos.frame = frame;
    pos.branch = HyperbolaBranch::positive_x;
    out.push_back({pos, SignRelation::opposite_sign});
    HyperbolicArc neg = pos;
    neg.branch = HyperbolaBranch::negative_x;
    out.push_back({neg, SignRelation::opposite_sign});
  }

  // Pieces of the line pq itself; live only in degenerate regimes, clipped
  // away otherwise.
  out.push_back(
      {ray_piece(p.position, polar_angle(q.position, p.position)), SignRelation::line_degenerate});
  out.push_back(
      {ray_piece(q.position, polar_angle(p.position, q.position)), SignRelation::line_degenerate});
  out.push_back({segment_piece(p.position, q.position), SignRelation::line_degenerate});
  return out;
}

std::vector<LocusPrimitive> clip_by_regime(const Candidate& candidate, const Site& p,
                                           const Site& q, const BisectorOptions& options) {
  require_distinct_sites(p, q, "clip_by_regime");
  if (options.clip_samples < 16) {
    throw InvalidInput("clip_by_regime: need at least 16 samples");
  }
  const Bbox box = options.working_box ? *options.working_box : working_bbox(p, q);
  const double scale_pq = distance(p.position, q.position);
  const double min_chord = 1e-6 * scale_pq;
  // Within this radius of a site the direction to the site cancels
  // catastrophically and the predicate is pure noise, so pieces stop here.
  // Points of a large arc carry absolute placement noise of order
  // radius * ulp, which widens the noise zone accordingly.
  double site_guard = 1e-7 * scale_pq;
  if (const auto* arc = std::get_if<CircularArc>(&candidate.geom)) {
    site_guard = std::max(site_guard, 1e-7 * arc->radius);
  }

  std::vector<LocusPrimitive> out;
  for (const auto& window : clip_to_bbox(candidate.geom, box)) {
    const auto pred = [&](double t) {
      const Point z = primitive_point(window, t);
      if (distance(z, p.position) < site_guard || distance(z, q.position) < site_guard) {
        return false;
      }
      return std::fabs(sym_distance(p, z) - sym_distance(q, z)) <= options.eps;
    };
    const auto range = param_range(window);
    for (const auto& iv : detail::find_true_intervals(pred, range.lo, range.hi,
                                                      options.clip_samples, options.param_tol)) {
      const LocusPrimitive piece = with_range(window, iv.lo, iv.hi);
      // Discard point-like slivers where the candidate merely crosses the
      // bisector transversally.
      const auto r = param_range(piece);
      if (distance(primitive_point(piece, r.lo), primitive_point(piece, r.hi)) < min_chord) {
        continue;
      }
      out.push_back(piece);
    }
  }
  return out;
}

namespace {

// True bisector pieces track equidistance to rounding error; an interval that
// merely dips under eps around an isolated crossing or tangency of the
// candidate with the bisector carries a residual near eps. The median
// interior residual separates the two decisively.
bool genuinely_equidistant(const LocusPrimitive& piece, const Site& p, const Site& q,
                           double eps) {
  const auto range = param_range(piece);
  std::vector<double> residuals;
  const int n = 33;
  for (int i = 1; i < n; ++i) {
    const double t = range.lo + (range.hi - range.lo) * static_cast<double>(i) / n;
    const Point z = primitive_point(piece, t);
    if (z == p.position || z == q.position) continue;
    residuals.push_back(std::fabs(sym_distance(p, z) - sym_distance(q, z)));
  }
  if (residuals.empty()) return false;
  std::nth_element(residuals.begin(), residuals.begin() + residuals.size() / 2, residuals.end());
  return residuals[residuals.size() / 2] <= 1e-2 * eps;
}

}  // namespace

BisectorCurve symmetric_bisector(const Site& p, const Site& q, const BisectorOptions& options) {
  require_distinct_sites(p, q, "symmetric_bisector");
  BisectorCurve curve;
  curve.metric = Metric::symmetric_min;
  curve.site_p = p;
  curve.site_q = q;
  for (const auto& candidate : candidate_loci(p, q)) {
    for (auto& piece : clip_by_regime(candidate, p, q, options)) {
      if (!genuinely_equidistant(piece, p, q, options.eps)) continue;
      curve.pieces.push_back({std::move(piece), PieceRole::equidistant});
    }
  }
  std::sort(curve.pieces.begin(), curve.pieces.end(),
            [](const BisectorPiece& a, const BisectorPiece& b) {
              return sort_key(a.geom) < sort_key(b.geom);
            });
  return curve;
}

double max_equidistance_residual(const BisectorCurve& curve, int samples_per_piece,
                                 const Bbox& box) {
  double worst = 0.0;
  for (const auto& piece : curve.pieces) {
    if (piece.role != PieceRole::equidistant) continue;
    for (const auto& bounded : clip_to_bbox(piece.geom, box)) {
      for (const Point& z : sample_primitive(bounded, samples_per_piece)) {
        if (z == curve.site_p.position || z == curve.site_q.position) continue;
        const double f = curve.metric == Metric::symmetric_min
                             ? sym_distance(curve.site_p, z) - sym_distance(curve.site_q, z)
                             : ccw_distance(curve.site_p, z) - ccw_distance(curve.site_q, z);
        worst = std::max(worst, std::fabs(f));
      }
    }
  }
  return worst;
}

std::vector<std::vector<Point>> sample_curve_polylines(const BisectorCurve& curve,
                                                       int samples_per_piece, const Bbox& box,
                                                       bool equidistant_only) {
  std::vector<std::vector<Point>> out;
  for (const auto& piece : curve.pieces) {
    if (equidistant_only && piece.role != PieceRole::equidistant) continue;
    for (const auto& bounded : clip_to_bbox(piece.geom, box)) {
      out.push_back(sample_primitive(bounded, samples_per_piece));
    }
  }
  return out;
}

}  // namespace rayvor
