#include <doctest.h>

#include <cmath>

#include "rayvor/oracle.hpp"
#include "rayvor/rng.hpp"
#include "rayvor/verify.hpp"
#include "support.hpp"

using namespace rayvor;

namespace {

GridSpec small_grid(int n = 5) {
  GridSpec spec;
  spec.width = n;
  spec.height = n;
  spec.bbox = {-2.5, -2.5, 2.5, 2.5};  // cell centers on integer coordinates
  return spec;
}

const Site kMirrorP({-1, 0}, 0.0);
const Site kMirrorQ({1, 0}, kPi);

}  // namespace

TEST_CASE("distance raster holds the metric distance at cell centers") {
  const Site s({0, 0}, 0.0);
  const GridSpec spec = small_grid();
  const DistanceRaster sym = rasterize_distance(s, spec, Metric::symmetric_min);
  CHECK(sym.cell_center(2, 2) == Point{0, 0});
  CHECK(sym.at(2, 2) == 0.0);  // the site's own cell
  CHECK(sym.at(2, 3) == doctest::Approx(kPi / 2));  // center (0, 1)

  const DistanceRaster ccw = rasterize_distance(s, spec, Metric::oriented_ccw);
  CHECK(ccw.at(2, 1) == doctest::Approx(3.0 * kPi / 2));  // center (0, -1)

  for (const double v : sym.cells) {
    CHECK(v >= 0.0);
    CHECK(v <= kPi);
  }
}

TEST_CASE("symmetric field equals the fold of the ccw field exactly") {
  Rng rng(5);
  GridSpec spec;
  spec.width = 64;
  spec.height = 64;
  spec.bbox = {-3, -3, 3, 3};
  for (int trial = 0; trial < 5; ++trial) {
    const Site s({rng.uniform(-2, 2), rng.uniform(-2, 2)}, rng.uniform(-kPi, kPi));
    const DistanceRaster sym = rasterize_distance(s, spec, Metric::symmetric_min);
    const DistanceRaster ccw = rasterize_distance(s, spec, Metric::oriented_ccw);
    for (std::size_t i = 0; i < sym.cells.size(); ++i) {
      CHECK(sym.cells[i] == std::min(ccw.cells[i], kTwoPi - ccw.cells[i]));
    }
  }
}

TEST_CASE("voronoi labels: mirror ties concentrate along the analytic bisector") {
  GridSpec spec;
  spec.width = 128;
  spec.height = 128;
  spec.bbox = {-3, -3, 3, 3};
  const double band = 1e-3;
  const LabelRaster labels =
      rasterize_voronoi({kMirrorP, kMirrorQ}, spec, Metric::symmetric_min, band);

  // Distance to {x = 0} union the closed segment pq.
  const auto to_bisector = [](Point z) {
    const double to_line = std::fabs(z.x);
    const double to_segment =
        std::fabs(z.x) <= 1.0 ? std::fabs(z.y) : distance(z, {z.x > 0 ? 1.0 : -1.0, 0.0});
    return std::min(to_line, to_segment);
  };

  // Cells whose gap is inside the configured band sit on the bisector; the
  // remaining ties carry the per-cell resolution certificate and may halo
  // the curve junctions.
  int ties = 0;
  for (int j = 0; j < labels.height; ++j) {
    for (int i = 0; i < labels.width; ++i) {
      if (labels.at(i, j) != kTieLabel) continue;
      ++ties;
      const Point z = labels.cell_center(i, j);
      const double gap = std::fabs(sym_distance(kMirrorP, z) - sym_distance(kMirrorQ, z));
      if (gap <= band) {
        CHECK(to_bisector(z) <= 2.5 * labels.cell_diagonal());
      }
    }
  }
  CHECK(ties > 0);
  CHECK(ties < labels.width * labels.height / 10);  // concentrated, not smeared

  // Every cell the analytic bisector passes through is marked tie.
  for (double t = -2.9; t <= 2.9; t += 0.05) {
    const int i = static_cast<int>((0.0 - spec.bbox.xmin) / labels.cell_dx());
    const int j = static_cast<int>((t - spec.bbox.ymin) / labels.cell_dy());
    CHECK(labels.at(i, j) == kTieLabel);
  }
  for (double x = -0.95; x <= 0.95; x += 0.05) {
    const int i = static_cast<int>((x - spec.bbox.xmin) / labels.cell_dx());
    const int j = static_cast<int>((0.0 - spec.bbox.ymin) / labels.cell_dy());
    CHECK(labels.at(i, j) == kTieLabel);
  }
}

TEST_CASE("voronoi labeling rejects bad input") {
  const GridSpec spec = small_grid();
  CHECK_THROWS_AS(static_cast<void>(
                      rasterize_voronoi({kMirrorP}, spec, Metric::symmetric_min, 1e-2)),
                  InvalidInput);
  CHECK_THROWS_AS(static_cast<void>(
                      rasterize_voronoi({kMirrorP, kMirrorP}, spec, Metric::symmetric_min, 1e-2)),
                  InvalidInput);
  CHECK_THROWS_AS(static_cast<void>(
                      rasterize_voronoi({kMirrorP, kMirrorQ}, spec, Metric::symmetric_min, -1.0)),
                  InvalidInput);
  GridSpec tiny = spec;
  tiny.width = 1;
  CHECK_THROWS_AS(static_cast<void>(
                      rasterize_voronoi({kMirrorP, kMirrorQ}, tiny, Metric::symmetric_min, 1e-2)),
                  InvalidInput);
}

TEST_CASE("site order permutes labels but not the partition") {
  GridSpec spec;
  spec.width = 96;
  spec.height = 96;
  spec.bbox = {-3, -3, 3, 3};
  const Site a({-0.8, 0.3}, 0.4);
  const Site b({1.1, -0.5}, -2.0);
  const LabelRaster ab = rasterize_voronoi({a, b}, spec, Metric::symmetric_min, 1e-2);
  const LabelRaster ba = rasterize_voronoi({b, a}, spec, Metric::symmetric_min, 1e-2);
  for (std::size_t i = 0; i < ab.cells.size(); ++i) {
    if (ab.cells[i] == kTieLabel) {
      CHECK(ba.cells[i] == kTieLabel);
    } else {
      CHECK(ba.cells[i] == 1 - ab.cells[i]);
    }
  }
}

TEST_CASE("rasterization is byte-identical across thread counts and reruns") {
  GridSpec spec;
  spec.width = 128;
  spec.height = 128;
  spec.bbox = {-3, -3, 3, 3};
  const Site a({-0.8, 0.3}, 0.4);
  const Site b({1.1, -0.5}, -2.0);
  const LabelRaster one = rasterize_voronoi({a, b}, spec, Metric::symmetric_min, 1e-2, 1);
  const LabelRaster four = rasterize_voronoi({a, b}, spec, Metric::symmetric_min, 1e-2, 4);
  const LabelRaster again = rasterize_voronoi({a, b}, spec, Metric::symmetric_min, 1e-2, 3);
  CHECK(one.cells == four.cells);
  CHECK(one.cells == again.cells);

  const DistanceRaster d1 = rasterize_distance(a, spec, Metric::symmetric_min, 1);
  const DistanceRaster d5 = rasterize_distance(a, spec, Metric::symmetric_min, 5);
  CHECK(d1.cells == d5.cells);
}

TEST_CASE("face counting on crafted grids") {
  LabelRaster uniform;
  uniform.width = 8;
  uniform.height = 8;
  uniform.bbox = {0, 0, 8, 8};
  uniform.cells.assign(64, 0);
  FaceReport one = count_faces(uniform);
  CHECK(one.total_faces == 1);
  CHECK(one.tie_cells == 0);

  // Vertical tie line between two labels.
  LabelRaster split = uniform;
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 8; ++i) {
      split.at(i, j) = i < 4 ? 0 : 1;
      if (i == 4) split.at(i, j) = kTieLabel;
    }
  }
  FaceReport two = count_faces(split);
  CHECK(two.total_faces == 2);
  CHECK(two.components_per_label.at(0) == 1);
  CHECK(two.components_per_label.at(1) == 1);
  CHECK(two.tie_cells == 8);

  // Ties conduct: one label diced by a tie row still counts once.
  LabelRaster diced = uniform;
  for (int i = 0; i < 8; ++i) diced.at(i, 4) = kTieLabel;
  CHECK(count_faces(diced).total_faces == 1);

  // Two same-label areas separated by another label stay separate.
  LabelRaster sandwich = uniform;
  for (int j = 3; j <= 4; ++j) {
    for (int i = 0; i < 8; ++i) sandwich.at(i, j) = 1;
  }
  FaceReport three = count_faces(sandwich);
  CHECK(three.components_per_label.at(0) == 2);
  CHECK(three.components_per_label.at(1) == 1);
  CHECK(three.total_faces == 3);
}

TEST_CASE("the crafted configuration reproduces a disconnected region") {
  const auto [p, q] = disconnected_region_sites();
  GridSpec spec;
  spec.width = 256;
  spec.height = 256;
  spec.bbox = {-3, -3, 3, 3};
  const LabelRaster labels = rasterize_voronoi({p, q}, spec, Metric::symmetric_min, 1e-2);
  const FaceReport faces = count_faces(labels);
  CHECK(faces.components_per_label.at(0) >= 2);
  CHECK(faces.total_faces <= 4);
}

TEST_CASE("line crossings on the mirror configuration") {
  const Bbox box{-3, -3, 3, 3};
  // A horizontal line above everything crosses only the vertical branch.
  Line high;
  high.anchor = {0, 2};
  high.direction = 0.0;
  const auto crossings = line_crossings(kMirrorP, kMirrorQ, high, 2000, box);
  REQUIRE(crossings.has_value());
  CHECK(*crossings == 1);

  // A line outside the box sees nothing.
  Line outside;
  outside.anchor = {0, 10};
  outside.direction = 0.0;
  CHECK(line_crossings(kMirrorP, kMirrorQ, outside, 2000, box) == 0);

  // The bisector-carrying vertical line is rejected.
  Line contained;
  contained.anchor = {0, 0};
  contained.direction = kPi / 2;
  CHECK(!line_crossings(kMirrorP, kMirrorQ, contained, 2000, box).has_value());

  CHECK_THROWS_AS(static_cast<void>(
                      line_crossings(kMirrorP, kMirrorQ, high, 500, box)),
                  InvalidInput);
}

TEST_CASE("curve-grid comparison: mirror configuration agrees within two cells") {
  GridSpec spec;
  spec.width = 512;  // the separating band needs the acceptance resolution
  spec.height = 512;
  spec.bbox = {-3, -3, 3, 3};
  BisectorOptions options;
  options.working_box = spec.bbox;
  const BisectorCurve curve = symmetric_bisector(kMirrorP, kMirrorQ, options);
  const LabelRaster labels =
      rasterize_voronoi({kMirrorP, kMirrorQ}, spec, Metric::symmetric_min, 1e-2);
  const CurveGridReport report = compare_curve_to_grid(curve, labels);
  CHECK(!report.empty_curve);
  CHECK(report.curve_samples > 0);
  CHECK(report.boundary_cells > 0);  // the separating band is present
  CHECK(report.max_curve_to_boundary_cells <= 2.0);
  CHECK(report.max_boundary_to_curve_cells <= 2.0);
}

TEST_CASE("doubling the resolution never worsens world-unit agreement") {
  Rng rng(2024);
  for (int trial = 0; trial < 3; ++trial) {
    const auto [p, q] = random_site_pair(rng, {-1.5, -1.5, 1.5, 1.5}, 0.5);
    BisectorOptions options;
    options.working_box = Bbox{-3, -3, 3, 3};
    const BisectorCurve curve = symmetric_bisector(p, q, options);
    double coarse_world = 0.0;
    double fine_world = 0.0;
    for (const int res : {256, 512}) {
      GridSpec spec;
      spec.width = res;
      spec.height = res;
      spec.bbox = *options.working_box;
      const LabelRaster labels =
          rasterize_voronoi({p, q}, spec, Metric::symmetric_min, 1e-2, 4);
      const CurveGridReport report = compare_curve_to_grid(curve, labels);
      const double world = std::max(report.max_curve_to_boundary_cells,
                                    report.max_boundary_to_curve_cells) *
                           labels.cell_diagonal();
      (res == 256 ? coarse_world : fine_world) = world;
    }
    CHECK(fine_world <= coarse_world + 1e-12);
  }
}

TEST_CASE("curve-grid comparison: empty curve against a uniform grid is vacuous") {
  BisectorCurve empty;
  empty.metric = Metric::symmetric_min;
  empty.site_p = kMirrorP;
  empty.site_q = kMirrorQ;
  LabelRaster uniform;
  uniform.width = 16;
  uniform.height = 16;
  uniform.bbox = {-3, -3, 3, 3};
  uniform.cells.assign(256, 0);
  const CurveGridReport report = compare_curve_to_grid(empty, uniform);
  CHECK(report.empty_curve);
  CHECK(report.curve_samples == 0);
  CHECK(report.boundary_cells == 0);
  CHECK(report.max_curve_to_boundary_cells == 0.0);
  CHECK(report.max_boundary_to_curve_cells == 0.0);
}

TEST_CASE("pgm and angf round-trip through files") {
  GridSpec spec;
  spec.width = 32;
  spec.height = 24;
  spec.bbox = {-3, -3, 3, 3};
  const LabelRaster labels =
      rasterize_voronoi({kMirrorP, kMirrorQ}, spec, Metric::symmetric_min, 1e-2);
  const std::string pgm_path = test::test_out() + "/roundtrip.pgm";
  emit_pgm(labels, pgm_path);
  const LabelRaster back = load_pgm(pgm_path);
  CHECK(back.width == labels.width);
  CHECK(back.height == labels.height);
  CHECK(back.cells == labels.cells);

  const Site s({0.25, -0.5}, 1.0);
  const DistanceRaster field = rasterize_distance(s, spec, Metric::symmetric_min);
  const std::string angf_path = test::test_out() + "/roundtrip.angf";
  emit_angf(field, angf_path);
  const DistanceRaster loaded = load_angf(angf_path);
  CHECK(loaded.width == field.width);
  CHECK(loaded.bbox.xmin == field.bbox.xmin);
  CHECK(loaded.bbox.ymax == field.bbox.ymax);
  for (std::size_t i = 0; i < field.cells.size(); ++i) {
    CHECK(loaded.cells[i] == static_cast<double>(static_cast<float>(field.cells[i])));
  }

  CHECK_THROWS_AS(static_cast<void>(load_pgm(test::test_out() + "/does_not_exist.pgm")), IoError);
  CHECK_THROWS_AS(static_cast<void>(load_angf(pgm_path)), IoError);  // wrong magic
}
