#include <doctest.h>

#include <cmath>

#include "rayvor/io.hpp"
#include "rayvor/render.hpp"
#include "fixtures/scene_fixtures.hpp"
#include "support.hpp"

using namespace rayvor;

TEST_CASE("spiral polyline starts at the site and leaves along the ray") {
  const Site s({2, -1}, 0.0);
  const auto pts = spiral_polyline(s, kTwoPi, 64, 1.0);
  CHECK(pts.front() == s.position);
  // One full turn of r = alpha ends one turn-length out along the ray.
  CHECK(distance(pts.back(), s.position + Point{kTwoPi, 0.0}) < 1e-12);

  // Finite-sampling tangent at the start matches the ray direction; the
  // chord to the first sample trails the ray by one sample step.
  const Site tilted({0, 0}, 0.85);
  const auto tilted_pts = spiral_polyline(tilted, kTwoPi, 16384, 0.5);
  const double tangent = polar_angle(tilted_pts[0], tilted_pts[1]);
  CHECK(std::fabs(wrap_signed(tangent - tilted.ray_direction)) < 1e-3);
}

TEST_CASE("spiral radius grows linearly with the swept angle") {
  const Site s({0, 0}, 0.3);
  const double c = 0.25;
  const auto pts = spiral_polyline(s, 2.0 * kTwoPi, 256, c);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double alpha = 2.0 * kTwoPi * static_cast<double>(i) / (pts.size() - 1);
    CHECK(norm(pts[i]) == doctest::Approx(c * alpha).epsilon(1e-9));
  }
}

TEST_CASE("spiral parameters are validated") {
  const Site s({0, 0}, 0.0);
  CHECK_THROWS_AS(static_cast<void>(spiral_polyline(s, 0.0, 64, 1.0)), InvalidInput);
  CHECK_THROWS_AS(static_cast<void>(spiral_polyline(s, 5.0 * kTwoPi, 64, 1.0)), InvalidInput);
  CHECK_THROWS_AS(static_cast<void>(spiral_polyline(s, kPi, 16, 1.0)), InvalidInput);
  CHECK_THROWS_AS(static_cast<void>(spiral_polyline(s, kPi, 64, 0.0)), InvalidInput);
}

TEST_CASE("an empty scene emits just the root and the background") {
  Scene scene;
  scene.bbox = {-1, -1, 1, 1};
  const std::string svg = svg_to_string(scene);
  CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") !=
        std::string::npos);
  CHECK(svg.find("<rect") != std::string::npos);
  CHECK(svg.find("<polyline") == std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("world y-up flips once at emission") {
  Scene scene;
  scene.bbox = {-2, -2, 2, 2};
  scene.add_marker({0.0, 1.0}, scene.styles.site);
  const std::string svg = svg_to_string(scene);
  CHECK(svg.find("cy=\"-1\"") != std::string::npos);
}

TEST_CASE("svg emission is deterministic") {
  const Scene scene = fixtures::hyperbola_figure();
  const std::string once = svg_to_string(scene);
  const std::string twice = svg_to_string(scene);
  CHECK(once == twice);

  const std::string path_a = test::test_out() + "/determinism_a.svg";
  const std::string path_b = test::test_out() + "/determinism_b.svg";
  emit_svg(scene, path_a);
  emit_svg(scene, path_b);
  CHECK(read_text_file(path_a) == read_text_file(path_b));
}

TEST_CASE("committed golden files reproduce byte for byte") {
  const std::string golden = test::test_dir() + "/golden";
  const LabelRaster labels = fixtures::disconnected_labels();

  const std::string pgm_fresh = test::test_out() + "/labels_disconnected.pgm";
  emit_pgm(labels, pgm_fresh);
  CHECK(read_text_file(pgm_fresh) == read_text_file(golden + "/labels_disconnected.pgm"));

  CHECK(svg_to_string(fixtures::hyperbola_figure()) ==
        read_text_file(golden + "/figure_hyperbola.svg"));
  CHECK(svg_to_string(fixtures::bisector_figure(labels)) ==
        read_text_file(golden + "/figure_bisector.svg"));
}

TEST_CASE("curve_to_polyline samples any bounded primitive") {
  LinearPiece seg;
  seg.anchor = {0, 0};
  seg.direction = 0.0;
  seg.t_min = 0.0;
  seg.t_max = 2.0;
  const auto pts = curve_to_polyline(LocusPrimitive{seg}, 5);
  REQUIRE(pts.size() == 5);
  CHECK(distance(pts[2], {1.0, 0.0}) < 1e-15);
  CHECK_THROWS_AS(static_cast<void>(curve_to_polyline(LocusPrimitive{seg}, 1)), InvalidInput);
}

TEST_CASE("io failures carry the path") {
  Scene scene;
  scene.bbox = {-1, -1, 1, 1};
  try {
    emit_svg(scene, "/nonexistent_dir_zz/x.svg");
    CHECK(false);
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent_dir_zz/x.svg") != std::string::npos);
  }
}
