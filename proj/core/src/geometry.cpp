#include "rayvor/geometry.hpp"

#include <string>

namespace rayvor {

namespace detail {

[[noreturn]] void throw_nonfinite_angle(double a) {
  throw InvalidInput("angle is not finite: " + std::to_string(a));
}

}  // namespace detail

double polar_angle(Point from, Point to) {
  if (!finite(from) || !finite(to)) {
    throw InvalidInput("polar_angle: non-finite point");
  }
  if (from == to) {
    throw InvalidInput("polar_angle: coincident points");
  }
  return std::atan2(to.y - from.y, to.x - from.x);
}

TriangleBaseAngles triangle_base_angles(Point p, Point q, Point z) {
  if (p == q || p == z || q == z) {
    throw InvalidInput("triangle_base_angles: coincident vertices");
  }
  const Point pq = q - p;
  const Point pz = z - p;
  if (cross(pq, pz) == 0.0) {
    throw InvalidInput("triangle_base_angles: collinear vertices");
  }
  const Point qp = p - q;
  const Point qz = z - q;
  TriangleBaseAngles out;
  out.at_p = std::atan2(std::fabs(cross(pq, pz)), dot(pq, pz));
  out.at_q = std::atan2(std::fabs(cross(qp, qz)), dot(qp, qz));
  return out;
}

SimilarityTransform make_transform(double rotation, double scale, Point translation,
                                   bool reflect) {
  if (!std::isfinite(rotation) || !std::isfinite(scale) || !finite(translation)) {
    throw InvalidInput("make_transform: non-finite parameter");
  }
  if (scale <= 0.0) {
    throw InvalidInput("make_transform: scale must be positive");
  }
  return SimilarityTransform{rotation, scale, translation, reflect};
}

Point apply(const SimilarityTransform& t, Point p) {
  const double y0 = t.reflect ? -p.y : p.y;
  const double c = std::cos(t.rotation);
  const double s = std::sin(t.rotation);
  return {t.scale * (c * p.x - s * y0) + t.translation.x,
          t.scale * (s * p.x + c * y0) + t.translation.y};
}

double apply_direction(const SimilarityTransform& t, double angle) {
  const double pre = t.reflect ? -angle : angle;
  return wrap_signed(pre + t.rotation);
}

SimilarityTransform inverse(const SimilarityTransform& t) {
  if (t.scale <= 0.0 || !std::isfinite(t.scale)) {
    throw InvalidInput("inverse: transform has invalid scale");
  }
  SimilarityTransform inv;
  inv.reflect = t.reflect;
  // F R(-a) = R(a) F for a reflection across the X axis, so the inverse of
  // (reflect, rotate, scale, translate) stays in the same canonical form.
  inv.rotation = t.reflect ? t.rotation : -t.rotation;
  inv.scale = 1.0 / t.scale;
  inv.translation = {0.0, 0.0};
  const Point moved = apply(inv, t.translation);
  inv.translation = -moved;
  return inv;
}

Site transformed(const SimilarityTransform& t, const Site& s) {
  return Site(apply(t, s.position), apply_direction(t, s.ray_direction));
}

}  // namespace rayvor
