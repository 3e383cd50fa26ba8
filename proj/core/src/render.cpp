#include "rayvor/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rayvor {

namespace {

// Fixed numeric formatting: 9 significant digits, locale-independent.
std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string style_attrs(const Style& style) {
  std::string out = "stroke=\"" + style.stroke + "\" stroke-width=\"" + fmt(style.stroke_width) +
                    "\" fill=\"" + style.fill + "\"";
  if (style.opacity != 1.0) out += " opacity=\"" + fmt(style.opacity) + "\"";
  return out;
}

}  // namespace

void Scene::add_polyline(std::vector<Point> points, const Style& style) {
  if (points.size() < 2) return;
  layers.push_back(PolylineDrawable{std::move(points), style});
}

void Scene::add_marker(Point at, const Style& style, double radius) {
  layers.push_back(MarkerDrawable{at, radius, style});
}

void Scene::add_text(Point at, std::string text, const Style& style, double size) {
  layers.push_back(TextDrawable{at, std::move(text), size, style});
}

void Scene::add_image(std::string href, const Bbox& extent, double opacity) {
  layers.push_back(ImageDrawable{std::move(href), extent, opacity});
}

void Scene::add_site(const Site& s) {
  LinearPiece ray;
  ray.anchor = s.position;
  ray.direction = s.ray_direction;
  ray.t_min = 0.0;
  for (const auto& piece : clip_to_bbox(LocusPrimitive{ray}, bbox)) {
    const auto& bounded = std::get<LinearPiece>(piece);
    add_polyline(sample_linear_piece(bounded, 2), styles.ray);
    // Arrowhead partway along the ray.
    const double t = 0.35 * (bounded.t_max - bounded.t_min);
    if (t > 0.0) {
      const Point tip = linear_piece_point(bounded, bounded.t_min + t);
      const double back = s.ray_direction + kPi;
      const double head = 0.08 * std::min(bbox.width(), bbox.height());
      add_polyline({tip + head * direction_vector(back + 0.4), tip,
                    tip + head * direction_vector(back - 0.4)},
                   styles.ray);
    }
  }
  add_marker(s.position, styles.site);
}

void Scene::add_bisector(const BisectorCurve& curve, int samples_per_piece) {
  for (const auto& piece : curve.pieces) {
    const Style& style =
        piece.role == PieceRole::equidistant ? styles.curve : styles.region_boundary;
    for (const auto& bounded : clip_to_bbox(piece.geom, bbox)) {
      add_polyline(sample_primitive(bounded, samples_per_piece), style);
    }
  }
}

std::vector<Point> spiral_polyline(const Site& s, double max_angle, int pts_per_turn,
                                   double radius_per_radian) {
  if (!(max_angle > 0.0) || max_angle > 2.0 * kTwoPi) {
    throw InvalidInput("spiral_polyline: max_angle must lie in (0, 4*pi]");
  }
  if (pts_per_turn < 32) {
    throw InvalidInput("spiral_polyline: need at least 32 points per turn");
  }
  if (!(radius_per_radian > 0.0)) {
    throw InvalidInput("spiral_polyline: radius scale must be positive");
  }
  const int n = std::max(2, static_cast<int>(std::ceil(pts_per_turn * max_angle / kTwoPi))) + 1;
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double alpha = max_angle * static_cast<double>(i) / (n - 1);
    out.push_back(s.position +
                  radius_per_radian * alpha * direction_vector(s.ray_direction + alpha));
  }
  return out;
}

std::vector<Point> curve_to_polyline(const LocusPrimitive& piece, int n) {
  return sample_primitive(piece, n);
}

std::string svg_to_string(const Scene& scene) {
  if (!scene.bbox.valid()) throw InvalidInput("svg_to_string: invalid scene box");
  // Flip world y-up into SVG y-down: y' = ymin + ymax - y keeps the viewBox.
  const auto flip = [&](Point p) { return Point{p.x, scene.bbox.ymin + scene.bbox.ymax - p.y}; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
      << fmt(scene.bbox.xmin) << " " << fmt(scene.bbox.ymin) << " " << fmt(scene.bbox.width())
      << " " << fmt(scene.bbox.height()) << "\" width=\"800\" height=\""
      << fmt(800.0 * scene.bbox.height() / scene.bbox.width()) << "\">\n";
  out << "<rect x=\"" << fmt(scene.bbox.xmin) << "\" y=\"" << fmt(scene.bbox.ymin)
      << "\" width=\"" << fmt(scene.bbox.width()) << "\" height=\"" << fmt(scene.bbox.height())
      << "\" fill=\"#ffffff\" stroke=\"none\"/>\n";
  for (const auto& drawable : scene.layers) {
    if (const auto* poly = std::get_if<PolylineDrawable>(&drawable)) {
      out << "<polyline " << style_attrs(poly->style) << " points=\"";
      for (std::size_t i = 0; i < poly->points.size(); ++i) {
        const Point p = flip(poly->points[i]);
        if (i) out << " ";
        out << fmt(p.x) << "," << fmt(p.y);
      }
      out << "\"/>\n";
    } else if (const auto* marker = std::get_if<MarkerDrawable>(&drawable)) {
      const Point c = flip(marker->at);
      out << "<circle cx=\"" << fmt(c.x) << "\" cy=\"" << fmt(c.y) << "\" r=\""
          << fmt(marker->radius) << "\" " << style_attrs(marker->style) << "/>\n";
    } else if (const auto* text = std::get_if<TextDrawable>(&drawable)) {
      const Point a = flip(text->at);
      out << "<text x=\"" << fmt(a.x) << "\" y=\"" << fmt(a.y) << "\" font-size=\""
          << fmt(text->size) << "\" fill=\"" << text->style.stroke << "\">" << text->text
          << "</text>\n";
    } else if (const auto* image = std::get_if<ImageDrawable>(&drawable)) {
      out << "<image href=\"" << image->href << "\" x=\"" << fmt(image->extent.xmin) << "\" y=\""
          << fmt(scene.bbox.ymin + scene.bbox.ymax - image->extent.ymax) << "\" width=\""
          << fmt(image->extent.width()) << "\" height=\"" << fmt(image->extent.height())
          << "\" opacity=\"" << fmt(image->opacity)
          << "\" preserveAspectRatio=\"none\" image-rendering=\"pixelated\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

void emit_svg(const Scene& scene, const std::string& path) {
  const std::string body = svg_to_string(scene);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_svg: cannot open " + path);
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw IoError("emit_svg: write failed for " + path);
}

}  // namespace rayvor
