#pragma once

#include <string>
#include <variant>
#include <vector>

#include "rayvor/bisector.hpp"
#include "rayvor/loci.hpp"

namespace rayvor {

/// Stroke/fill styling; colors are hex strings so emitted files never depend
/// on locale or palette state.
struct Style {
  std::string stroke = "#000000";
  double stroke_width = 0.02;
  std::string fill = "none";
  double opacity = 1.0;
};

struct StyleTable {
  Style site{"#000000", 0.0, "#000000", 1.0};
  Style ray{"#444444", 0.02, "none", 1.0};
  Style curve{"#0038a8", 0.03, "none", 1.0};
  Style region_boundary{"#a83800", 0.02, "none", 1.0};
  Style spiral{"#888888", 0.015, "none", 1.0};
  Style annotation{"#202020", 0.01, "none", 1.0};
};

struct PolylineDrawable {
  std::vector<Point> points;
  Style style;
};

struct MarkerDrawable {
  Point at{};
  double radius = 0.06;
  Style style;
};

struct TextDrawable {
  Point at{};
  std::string text;
  double size = 0.2;
  Style style;
};

/// Reference to an external raster underlay, stretched over the given box.
struct ImageDrawable {
  std::string href;
  Bbox extent{};
  double opacity = 1.0;
};

using Drawable = std::variant<PolylineDrawable, MarkerDrawable, TextDrawable, ImageDrawable>;

/// Layered scene; draw order is insertion order.
struct Scene {
  Bbox bbox{-3.0, -3.0, 3.0, 3.0};
  StyleTable styles;
  std::vector<Drawable> layers;

  void add_polyline(std::vector<Point> points, const Style& style);
  void add_marker(Point at, const Style& style, double radius = 0.06);
  void add_text(Point at, std::string text, const Style& style, double size = 0.2);
  void add_image(std::string href, const Bbox& extent, double opacity = 1.0);

  /// Site marker plus its ray drawn to the scene edge with a small arrowhead.
  void add_site(const Site& s);
  /// All pieces of a bisector, clipped to the scene box.
  void add_bisector(const BisectorCurve& curve, int samples_per_piece = 256);
};

/// Polyline of the spiral r = c * alpha around the site, alpha in
/// [0, max_angle] measured from the ray direction, so arc length from the
/// spiral start visualizes angular distance. max_angle must lie in
/// (0, 4*pi] and pts_per_turn must be at least 32.
[[nodiscard]] std::vector<Point> spiral_polyline(const Site& s, double max_angle, int pts_per_turn,
                                                 double radius_per_radian);

/// Polyline with n samples of any bounded primitive.
[[nodiscard]] std::vector<Point> curve_to_polyline(const LocusPrimitive& piece, int n);

/// SVG 1.1, 9-significant-digit coordinates, no timestamps or generated ids;
/// identical scenes produce byte-identical files. World y-up is flipped once
/// here.
void emit_svg(const Scene& scene, const std::string& path);

/// The same emission to a string, for golden-file tests.
[[nodiscard]] std::string svg_to_string(const Scene& scene);

}  // namespace rayvor
