#include "rayvor/loci.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "refine.hpp"

namespace rayvor {

namespace {

constexpr int kClipSamples = 4096;
constexpr double kClipParamTol = 1e-12;

void require_distinct(Point p, Point q, const char* who) {
  if (!finite(p) || !finite(q)) throw InvalidInput(std::string(who) + ": non-finite point");
  if (p == q) throw InvalidInput(std::string(who) + ": coincident points");
}

}  // namespace

CircularArc constant_angle_sum_locus(Point p, Point q, double sigma, ArcSide side) {
  require_distinct(p, q, "constant_angle_sum_locus");
  if (!std::isfinite(sigma) || sigma <= 0.0 || sigma >= kPi) {
    throw InvalidInput("constant_angle_sum_locus: sigma must lie in (0, pi)");
  }
  const double d = distance(p, q);
  const double dir = polar_angle(p, q);
  const Point n_left{-std::sin(dir), std::cos(dir)};
  const Point n_side = side == ArcSide::left ? n_left : -n_left;
  const Point mid = midpoint(p, q);

  CircularArc arc;
  arc.radius = d / (2.0 * std::sin(sigma));
  // Signed center offset along the apex-side normal is -(d/2) cot(sigma):
  // the center sits on the apex side for sigma > pi/2 and opposite otherwise.
  const double offset = -(0.5 * d) * (std::cos(sigma) / std::sin(sigma));
  arc.center = mid + offset * n_side;
  arc.start_angle = polar_angle(arc.center, p);
  arc.end_angle = polar_angle(arc.center, q);

  // Orient the sweep so it passes the apex-side extreme of the circle.
  const double t_apex = polar_angle(arc.center, arc.center + arc.radius * n_side);
  const double ccw_to_apex = wrap_ccw(t_apex - arc.start_angle);
  const double ccw_to_end = wrap_ccw(arc.end_angle - arc.start_angle);
  arc.orientation = ccw_to_apex <= ccw_to_end ? ArcOrientation::ccw : ArcOrientation::cw;
  return arc;
}

SimilarityTransform make_canonical_frame(Point p, Point q, double h) {
  require_distinct(p, q, "make_canonical_frame");
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidInput("make_canonical_frame: h must be positive");
  }
  const double half_diag = std::hypot(h, 1.0);
  SimilarityTransform frame;
  frame.scale = distance(p, q) / (2.0 * half_diag);
  frame.rotation = wrap_signed(polar_angle(q, p) - std::atan2(1.0, h));
  frame.translation = midpoint(p, q);
  frame.reflect = false;
  return frame;
}

AngleDifferenceLocus constant_angle_difference_locus(Point p, Point q, double delta) {
  require_distinct(p, q, "constant_angle_difference_locus");
  if (!std::isfinite(delta) || std::fabs(delta) >= kPi) {
    throw InvalidInput("constant_angle_difference_locus: |delta| must be below pi");
  }
  AngleDifferenceLocus locus;
  if (std::fabs(delta) < kDegenerateAngleEps) {
    LinearPiece line;
    line.anchor = midpoint(p, q);
    line.direction = wrap_signed(polar_angle(q, p) + 0.5 * kPi);
    locus.line = line;
    return locus;
  }
  const double h = std::tan(0.5 * std::fabs(delta));
  const HyperbolaBranch branch =
      delta > 0.0 ? HyperbolaBranch::positive_x : HyperbolaBranch::negative_x;

  HyperbolicArc beyond;  // half past the site, constant difference 2*atan(h)
  beyond.h = h;
  beyond.frame = make_canonical_frame(p, q, h);
  beyond.branch = branch;
  beyond.u_min = 0.0;

  HyperbolicArc before;  // complementary half, carried by the reciprocal h
  before.h = 1.0 / h;
  before.frame = make_canonical_frame(p, q, 1.0 / h);
  before.branch = branch;
  before.u_max = 0.0;

  locus.arcs = {beyond, before};
  return locus;
}

std::vector<Point> sample_angle_difference_locus(const AngleDifferenceLocus& locus, double u_lo,
                                                 double u_hi, int n) {
  if (n < 2 || !(u_hi >= u_lo)) {
    throw InvalidInput("sample_angle_difference_locus: need n >= 2 and u_hi >= u_lo");
  }
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = u_lo + (u_hi - u_lo) * static_cast<double>(i) / (n - 1);
    if (locus.line) {
      out.push_back(linear_piece_point(*locus.line, u));
    } else {
      out.push_back(hyperbola_point(u >= 0.0 ? locus.arcs[0] : locus.arcs[1], u));
    }
  }
  return out;
}

Point hyperbola_point(const HyperbolicArc& arc, double u) {
  const double sign = arc.branch == HyperbolaBranch::positive_x ? 1.0 : -1.0;
  const Point canonical{sign * arc.h * std::exp(u), sign * std::exp(-u)};
  return apply(arc.frame, canonical);
}

double arc_sweep(const CircularArc& arc) {
  return arc.orientation == ArcOrientation::ccw ? wrap_ccw(arc.end_angle - arc.start_angle)
                                                : wrap_ccw(arc.start_angle - arc.end_angle);
}

Point circular_arc_point(const CircularArc& arc, double t) {
  const double angle =
      arc.orientation == ArcOrientation::ccw ? arc.start_angle + t : arc.start_angle - t;
  return arc.center + arc.radius * direction_vector(angle);
}

Point linear_piece_point(const LinearPiece& piece, double t) {
  return piece.anchor + t * direction_vector(piece.direction);
}

std::vector<Point> sample_hyperbolic_arc(const HyperbolicArc& arc, int n) {
  if (n < 2) throw InvalidInput("sample_hyperbolic_arc: need n >= 2");
  if (!arc.bounded()) throw InvalidInput("sample_hyperbolic_arc: unbounded u range, clip first");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = arc.u_min + (arc.u_max - arc.u_min) * static_cast<double>(i) / (n - 1);
    out.push_back(hyperbola_point(arc, u));
  }
  return out;
}

std::vector<Point> sample_circular_arc(const CircularArc& arc, int n) {
  if (n < 2) throw InvalidInput("sample_circular_arc: need n >= 2");
  const double sweep = arc_sweep(arc);
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(circular_arc_point(arc, sweep * static_cast<double>(i) / (n - 1)));
  }
  return out;
}

std::vector<Point> sample_linear_piece(const LinearPiece& piece, int n) {
  if (n < 2) throw InvalidInput("sample_linear_piece: need n >= 2");
  if (!piece.bounded()) throw InvalidInput("sample_linear_piece: unbounded range, clip first");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t =
        piece.t_min + (piece.t_max - piece.t_min) * static_cast<double>(i) / (n - 1);
    out.push_back(linear_piece_point(piece, t));
  }
  return out;
}

std::vector<Point> sample_primitive(const LocusPrimitive& primitive, int n) {
  return std::visit(
      [n](const auto& piece) {
        using T = std::decay_t<decltype(piece)>;
        if constexpr (std::is_same_v<T, CircularArc>) return sample_circular_arc(piece, n);
        if constexpr (std::is_same_v<T, HyperbolicArc>) return sample_hyperbolic_arc(piece, n);
        if constexpr (std::is_same_v<T, LinearPiece>) return sample_linear_piece(piece, n);
      },
      primitive);
}

std::pair<Point, Point> hyperbola_foci(const HyperbolicArc& arc) {
  const double c = std::sqrt(2.0 * arc.h);
  return {apply(arc.frame, {c, c}), apply(arc.frame, {-c, -c})};
}

Point canonical_pullback(const HyperbolicArc& arc, Point world) {
  return apply(inverse(arc.frame), world);
}

ParamRange param_range(const LocusPrimitive& primitive) {
  return std::visit(
      [](const auto& piece) -> ParamRange {
        using T = std::decay_t<decltype(piece)>;
        if constexpr (std::is_same_v<T, CircularArc>) return {0.0, arc_sweep(piece)};
        if constexpr (std::is_same_v<T, HyperbolicArc>) return {piece.u_min, piece.u_max};
        if constexpr (std::is_same_v<T, LinearPiece>) return {piece.t_min, piece.t_max};
      },
      primitive);
}

Point primitive_point(const LocusPrimitive& primitive, double t) {
  return std::visit(
      [t](const auto& piece) {
        using T = std::decay_t<decltype(piece)>;
        if constexpr (std::is_same_v<T, CircularArc>) return circular_arc_point(piece, t);
        if constexpr (std::is_same_v<T, HyperbolicArc>) return hyperbola_point(piece, t);
        if constexpr (std::is_same_v<T, LinearPiece>) return linear_piece_point(piece, t);
      },
      primitive);
}

LocusPrimitive with_range(const LocusPrimitive& primitive, double lo, double hi) {
  if (!(hi >= lo)) throw InvalidInput("with_range: empty parameter interval");
  return std::visit(
      [lo, hi](const auto& piece) -> LocusPrimitive {
        using T = std::decay_t<decltype(piece)>;
        if constexpr (std::is_same_v<T, CircularArc>) {
          CircularArc sub = piece;
          const double s0 = piece.orientation == ArcOrientation::ccw ? piece.start_angle + lo
                                                                     : piece.start_angle - lo;
          const double s1 = piece.orientation == ArcOrientation::ccw ? piece.start_angle + hi
                                                                     : piece.start_angle - hi;
          sub.start_angle = wrap_signed(s0);
          sub.end_angle = wrap_signed(s1);
          return sub;
        }
        if constexpr (std::is_same_v<T, HyperbolicArc>) {
          HyperbolicArc sub = piece;
          sub.u_min = lo;
          sub.u_max = hi;
          return sub;
        }
        if constexpr (std::is_same_v<T, LinearPiece>) {
          LinearPiece sub = piece;
          sub.t_min = lo;
          sub.t_max = hi;
          return sub;
        }
      },
      primitive);
}

namespace {

// Exact line-box clipping (Liang-Barsky) over the stored parameter range.
std::vector<LocusPrimitive> clip_linear(const LinearPiece& piece, const Bbox& box) {
  const Point d = direction_vector(piece.direction);
  double t0 = piece.t_min;
  double t1 = piece.t_max;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {piece.anchor.x - box.xmin, box.xmax - piece.anchor.x,
                       piece.anchor.y - box.ymin, box.ymax - piece.anchor.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return {};
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
  }
  if (!(t0 <= t1)) return {};
  LinearPiece sub = piece;
  sub.t_min = t0;
  sub.t_max = t1;
  return {sub};
}

std::vector<LocusPrimitive> clip_sampled(const LocusPrimitive& primitive, const Bbox& box,
                                         double lo, double hi) {
  const auto inside = [&](double t) { return box.contains(primitive_point(primitive, t)); };
  std::vector<LocusPrimitive> out;
  for (const auto& iv : detail::find_true_intervals(inside, lo, hi, kClipSamples, kClipParamTol)) {
    out.push_back(with_range(primitive, iv.lo, iv.hi));
  }
  return out;
}

std::vector<LocusPrimitive> clip_hyperbolic(const HyperbolicArc& arc, const Bbox& box) {
  // Canonical radius that covers the whole box around the frame origin.
  const Point c = arc.frame.translation;
  double reach = 0.0;
  reach = std::max(reach, distance(c, {box.xmin, box.ymin}));
  reach = std::max(reach, distance(c, {box.xmin, box.ymax}));
  reach = std::max(reach, distance(c, {box.xmax, box.ymin}));
  reach = std::max(reach, distance(c, {box.xmax, box.ymax}));
  const double rc = reach / arc.frame.scale;
  if (rc * rc <= 2.0 * arc.h) return {};  // box ends inside the vertex gap
  const double lo = std::max(arc.u_min, -std::log(rc) - 1.0);
  const double hi = std::min(arc.u_max, std::log(rc / arc.h) + 1.0);
  if (!(lo <= hi)) return {};
  return clip_sampled(arc, box, lo, hi);
}

}  // namespace

std::vector<LocusPrimitive> clip_to_bbox(const LocusPrimitive& primitive, const Bbox& box) {
  if (!box.valid()) throw InvalidInput("clip_to_bbox: invalid box");
  if (const auto* line = std::get_if<LinearPiece>(&primitive)) {
    return clip_linear(*line, box);
  }
  if (const auto* hyp = std::get_if<HyperbolicArc>(&primitive)) {
    return clip_hyperbolic(*hyp, box);
  }
  const auto range = param_range(primitive);
  return clip_sampled(primitive, box, range.lo, range.hi);
}

}  // namespace rayvor
