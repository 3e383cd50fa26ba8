#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rayvor {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Geometrically invalid input: coincident points, out-of-range parameters,
/// malformed site files.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Failed read or write; the message carries the offending path.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

[[nodiscard]] constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
[[nodiscard]] constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
[[nodiscard]] constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
[[nodiscard]] constexpr Point operator-(Point p) { return {-p.x, -p.y}; }
[[nodiscard]] constexpr bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }

[[nodiscard]] constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
[[nodiscard]] constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
[[nodiscard]] inline double norm(Point p) { return std::hypot(p.x, p.y); }
[[nodiscard]] inline double distance(Point a, Point b) { return norm(b - a); }
[[nodiscard]] constexpr Point midpoint(Point a, Point b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}
[[nodiscard]] inline Point direction_vector(double angle) {
  return {std::cos(angle), std::sin(angle)};
}
[[nodiscard]] inline bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Axis-aligned box, used for clipping unbounded pieces and as raster extent.
struct Bbox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  [[nodiscard]] double width() const { return xmax - xmin; }
  [[nodiscard]] double height() const { return ymax - ymin; }
  [[nodiscard]] Point center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
  [[nodiscard]] double diagonal() const { return std::hypot(width(), height()); }
  [[nodiscard]] bool contains(Point p, double pad = 0.0) const {
    return p.x >= xmin - pad && p.x <= xmax + pad && p.y >= ymin - pad && p.y <= ymax + pad;
  }
  [[nodiscard]] bool valid() const {
    return std::isfinite(xmin) && std::isfinite(ymin) && std::isfinite(xmax) &&
           std::isfinite(ymax) && xmax > xmin && ymax > ymin;
  }
};

// ---------------------------------------------------------------------------
// Angles. Plain double radians everywhere; degrees exist only at the CLI and
// file boundary. The two wrap functions below are the only normalization used
// in the project; values already in range pass through unchanged so wrapping
// is idempotent bit for bit.
// ---------------------------------------------------------------------------

namespace detail {
[[noreturn]] void throw_nonfinite_angle(double a);
}

/// Wrap into [0, 2*pi).
[[nodiscard]] inline double wrap_ccw(double a) {
  if (!std::isfinite(a)) detail::throw_nonfinite_angle(a);
  if (a >= 0.0 && a < kTwoPi) return a;
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // fmod of a tiny negative can round up to 2*pi
  return r;
}

/// Wrap into (-pi, pi]; the boundary maps to +pi.
[[nodiscard]] inline double wrap_signed(double a) {
  if (!std::isfinite(a)) detail::throw_nonfinite_angle(a);
  if (a > -kPi && a <= kPi) return a;
  const double r = wrap_ccw(a);
  return r > kPi ? r - kTwoPi : r;
}

[[nodiscard]] constexpr double degrees_to_radians(double deg) { return deg * (kPi / 180.0); }
[[nodiscard]] constexpr double radians_to_degrees(double rad) { return rad * (180.0 / kPi); }

/// Direction of the vector to - from, in (-pi, pi]. Coincident points are
/// rejected: the direction is undefined there.
[[nodiscard]] double polar_angle(Point from, Point to);

// ---------------------------------------------------------------------------
// Sites and the two angular distances.
// ---------------------------------------------------------------------------

/// A point site with its fixed ray direction; the direction is stored wrapped
/// to (-pi, pi].
struct Site {
  Point position{};
  double ray_direction = 0.0;

  Site() = default;
  Site(Point pos, double theta) : position(pos), ray_direction(wrap_signed(theta)) {}
};

/// Counterclockwise rotation cost from the site's ray to the ray toward z,
/// in [0, 2*pi). Zero exactly on the open ray. z must differ from the site.
[[nodiscard]] inline double ccw_distance(const Site& s, Point z) {
  return wrap_ccw(polar_angle(s.position, z) - s.ray_direction);
}

/// Minimum of the clockwise and counterclockwise rotation costs, in [0, pi].
/// Computed from the ccw value so that sym == min(ccw, 2*pi - ccw) holds
/// exactly, cell by cell, in the raster consistency check.
[[nodiscard]] inline double sym_distance(const Site& s, Point z) {
  const double o = ccw_distance(s, z);
  return o > kPi ? kTwoPi - o : o;
}

/// Unsigned interior angles at P and at Q in the triangle (P, Q, Z).
struct TriangleBaseAngles {
  double at_p = 0.0;  // angle between rays P->Q and P->Z
  double at_q = 0.0;  // angle between rays Q->P and Q->Z
};

/// Both base angles lie in (0, pi); collinear or coincident input is rejected.
[[nodiscard]] TriangleBaseAngles triangle_base_angles(Point p, Point q, Point z);

// ---------------------------------------------------------------------------
// Similarity transforms. Application order is fixed: reflect across the
// pre-rotation X axis, rotate, scale, translate.
// ---------------------------------------------------------------------------

struct SimilarityTransform {
  double rotation = 0.0;
  double scale = 1.0;
  Point translation{};
  bool reflect = false;
};

/// Validating constructor; scale must be positive and finite.
[[nodiscard]] SimilarityTransform make_transform(double rotation, double scale,
                                                 Point translation, bool reflect = false);

[[nodiscard]] Point apply(const SimilarityTransform& t, Point p);

/// Image of a direction angle under the linear part of the transform.
[[nodiscard]] double apply_direction(const SimilarityTransform& t, double angle);

[[nodiscard]] SimilarityTransform inverse(const SimilarityTransform& t);

/// Transforms the position and the ray direction together.
[[nodiscard]] Site transformed(const SimilarityTransform& t, const Site& s);

}  // namespace rayvor
