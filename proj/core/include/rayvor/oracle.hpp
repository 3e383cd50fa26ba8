#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rayvor/bisector.hpp"
#include "rayvor/geometry.hpp"

namespace rayvor {

/// Label reserved for cells whose two smallest distances tie.
inline constexpr std::uint8_t kTieLabel = 255;

/// Row-major raster over a box; cell (i, j) is centered at
/// (xmin + (i+0.5)dx, ymin + (j+0.5)dy) with j counting up from ymin.
template <class T>
struct Raster {
  Bbox bbox{};
  int width = 0;
  int height = 0;
  std::vector<T> cells;

  [[nodiscard]] T at(int i, int j) const { return cells[static_cast<std::size_t>(j) * width + i]; }
  T& at(int i, int j) { return cells[static_cast<std::size_t>(j) * width + i]; }
  [[nodiscard]] double cell_dx() const { return bbox.width() / width; }
  [[nodiscard]] double cell_dy() const { return bbox.height() / height; }
  [[nodiscard]] double cell_diagonal() const { return std::hypot(cell_dx(), cell_dy()); }
  [[nodiscard]] Point cell_center(int i, int j) const {
    return {bbox.xmin + (i + 0.5) * cell_dx(), bbox.ymin + (j + 0.5) * cell_dy()};
  }
};

using DistanceRaster = Raster<double>;
using LabelRaster = Raster<std::uint8_t>;

struct GridSpec {
  Bbox bbox{-3.0, -3.0, 3.0, 3.0};
  int width = 512;
  int height = 512;
};

void validate(const GridSpec& spec);

/// Distance field of one site; the cell holding the site itself gets 0.
/// Rows may be evaluated in parallel; the result is byte-identical for any
/// thread count.
[[nodiscard]] DistanceRaster rasterize_distance(const Site& s, const GridSpec& spec,
                                                Metric metric, int threads = 1);

/// Nearest-site labels, with kTieLabel wherever the two smallest distances
/// are within tie_band of each other. A cell centered exactly on a site gets
/// that site's label regardless of ties.
[[nodiscard]] LabelRaster rasterize_voronoi(const std::vector<Site>& sites, const GridSpec& spec,
                                            Metric metric, double tie_band, int threads = 1);

struct FaceReport {
  std::map<int, int> components_per_label;  // 4-connectivity, ties excluded
  int total_faces = 0;
  int tie_cells = 0;
};

[[nodiscard]] FaceReport count_faces(const LabelRaster& labels);

struct Line {
  Point anchor{};
  double direction = 0.0;
};

/// Sign changes of sym_distance(p,.) - sym_distance(q,.) along the line
/// clipped to the box, from `samples` uniform parameters (at least 1000).
/// Exact zeros inherit the preceding sign. Returns nullopt when more than 1%
/// of the samples sit within eps of equidistance, i.e. the line likely
/// contains a bisector piece and the caller should draw another line.
[[nodiscard]] std::optional<int> line_crossings(const Site& p, const Site& q, const Line& line,
                                                int samples, const Bbox& box,
                                                double eps = kBisectorEps);

struct CurveGridReport {
  double max_curve_to_boundary_cells = 0.0;  // curve samples vs tie/boundary cells
  double max_boundary_to_curve_cells = 0.0;  // separating cells vs curve samples
  std::size_t curve_samples = 0;
  std::size_t boundary_cells = 0;
  bool empty_curve = false;
};

/// Two-sided agreement between an analytic bisector and a labeled raster,
/// in units of the cell diagonal. Curve pieces are clipped to the raster box
/// and sampled densely. Boundary indicators are plain label changes across a
/// 4-neighborhood plus the tie cells the equidistance zero set provably
/// brushes (gap within one cell diagonal of locally estimated gradient,
/// capped by spine_band), so a missing analytic piece is flagged by the
/// cells along its zero set. Indicators in the outermost two rows and
/// columns are skipped in the boundary-to-curve direction: the curve is
/// clipped at the box, so they measure clipping, not agreement.
[[nodiscard]] CurveGridReport compare_curve_to_grid(const BisectorCurve& curve,
                                                    const LabelRaster& labels,
                                                    int samples_per_piece = 1024,
                                                    double spine_band = 1e-2);

// Raster file formats (see README): binary PGM P5 with maxval 255 for
// labels, and the little-endian "ANGF" raw format for distance fields:
// magic 'A''N''G''F', uint32 width, uint32 height, 4 x float64 bbox
// (xmin, ymin, xmax, ymax), then width*height float32 cells row-major from
// the ymin row upward.
void emit_pgm(const LabelRaster& labels, const std::string& path);
[[nodiscard]] LabelRaster load_pgm(const std::string& path);
void emit_angf(const DistanceRaster& field, const std::string& path);
[[nodiscard]] DistanceRaster load_angf(const std::string& path);

}  // namespace rayvor
