// Command-line front end: analytic loci, two-site bisectors, raster Voronoi
// diagrams, property verification and SVG scenes, all reproducible from the
// flags echoed into every report.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 I/O.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rayvor/bisector.hpp"
#include "rayvor/io.hpp"
#include "rayvor/loci.hpp"
#include "rayvor/oracle.hpp"
#include "rayvor/render.hpp"
#include "rayvor/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rayvor;

namespace {

Point parse_point(const std::string& text) {
  double x = 0.0;
  double y = 0.0;
  if (std::sscanf(text.c_str(), "%lf,%lf", &x, &y) != 2) {
    throw InvalidInput("expected a point as x,y but got: " + text);
  }
  return {x, y};
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

Metric parse_metric(const std::string& name) {
  if (name == "sym" || name == "symmetric" || name == "symmetric_min") {
    return Metric::symmetric_min;
  }
  if (name == "ccw" || name == "oriented" || name == "oriented_ccw") {
    return Metric::oriented_ccw;
  }
  throw InvalidInput("unknown metric: " + name);
}

Bbox scene_box(const SiteFile& sites) {
  if (sites.bbox) return *sites.bbox;
  if (sites.sites.size() >= 2) return working_bbox(sites.sites[0], sites.sites[1]);
  const Point c = sites.sites[0].position;
  return {c.x - 3.0, c.y - 3.0, c.x + 3.0, c.y + 3.0};
}

json site_json(const Site& s) {
  return {{"x", s.position.x},
          {"y", s.position.y},
          {"theta_deg", radians_to_degrees(s.ray_direction)}};
}

struct LocusArgs {
  std::string kind;
  std::string p_text;
  std::string q_text;
  double angle_deg = 0.0;
  std::string side = "left";
  std::string out = ".";
  int samples = 512;
  double span = 5.0;
};

int run_locus(const LocusArgs& args) {
  const Point p = parse_point(args.p_text);
  const Point q = parse_point(args.q_text);
  ensure_dir(args.out);

  std::vector<Point> samples;
  Scene scene;
  const double pad = 0.6 * distance(p, q) + 1.0;
  Bbox box{std::min(p.x, q.x) - pad, std::min(p.y, q.y) - pad, std::max(p.x, q.x) + pad,
           std::max(p.y, q.y) + pad};

  if (args.kind == "sum") {
    const double sigma = degrees_to_radians(args.angle_deg);
    const ArcSide side = args.side == "right" ? ArcSide::right : ArcSide::left;
    const CircularArc arc = constant_angle_sum_locus(p, q, sigma, side);
    samples = sample_circular_arc(arc, args.samples);
    for (const Point& z : samples) {
      box.xmin = std::min(box.xmin, z.x - 0.5);
      box.xmax = std::max(box.xmax, z.x + 0.5);
      box.ymin = std::min(box.ymin, z.y - 0.5);
      box.ymax = std::max(box.ymax, z.y + 0.5);
    }
    scene.bbox = box;
    scene.add_polyline(samples, scene.styles.curve);
  } else {
    const double delta = degrees_to_radians(args.angle_deg);
    const auto locus = constant_angle_difference_locus(p, q, delta);
    samples = sample_angle_difference_locus(locus, -args.span, args.span, args.samples);
    scene.bbox = box;
    if (locus.line) {
      for (const auto& piece : clip_to_bbox(LocusPrimitive{*locus.line}, box)) {
        scene.add_polyline(sample_primitive(piece, args.samples), scene.styles.curve);
      }
    }
    for (const auto& arc : locus.arcs) {
      for (const auto& piece : clip_to_bbox(LocusPrimitive{arc}, box)) {
        scene.add_polyline(sample_primitive(piece, args.samples), scene.styles.curve);
      }
      const auto [f1, f2] = hyperbola_foci(arc);
      if (box.contains(f1)) scene.add_marker(f1, scene.styles.annotation, 0.04);
      if (box.contains(f2)) scene.add_marker(f2, scene.styles.annotation, 0.04);
    }
  }
  scene.add_marker(p, scene.styles.site);
  scene.add_marker(q, scene.styles.site);

  write_text_file(args.out + "/samples.jsonl", points_to_jsonl(samples));
  emit_svg(scene, args.out + "/locus.svg");
  return 0;
}

struct BisectorArgs {
  std::string sites_path;
  std::string metric = "sym";
  std::string out = ".";
  int samples = 256;
};

int run_bisector(const BisectorArgs& args) {
  const SiteFile sites = load_site_file(args.sites_path);
  if (sites.sites.size() != 2) {
    throw InvalidInput("bisector needs exactly two sites, got " +
                       std::to_string(sites.sites.size()));
  }
  const Metric metric = parse_metric(args.metric);
  ensure_dir(args.out);

  BisectorOptions options;
  if (sites.bbox) options.working_box = *sites.bbox;
  const BisectorCurve curve = metric == Metric::symmetric_min
                                  ? symmetric_bisector(sites.sites[0], sites.sites[1], options)
                                  : oriented_bisector(sites.sites[0], sites.sites[1]);

  write_text_file(args.out + "/pieces.json", bisector_to_json(curve));

  Scene scene;
  scene.bbox = scene_box(sites);
  scene.add_bisector(curve, args.samples);
  scene.add_site(sites.sites[0]);
  scene.add_site(sites.sites[1]);
  emit_svg(scene, args.out + "/bisector.svg");
  return 0;
}

struct VoronoiArgs {
  std::string sites_path;
  std::string metric = "sym";
  std::string out = ".";
  int resolution = 512;
  double tie_band = 1e-2;
  int threads = 1;
  bool fields = false;
};

int run_voronoi(const VoronoiArgs& args) {
  const SiteFile sites = load_site_file(args.sites_path);
  if (sites.sites.size() < 2) {
    throw InvalidInput("voronoi needs at least two sites");
  }
  const Metric metric = parse_metric(args.metric);
  ensure_dir(args.out);

  GridSpec spec;
  spec.width = args.resolution;
  spec.height = args.resolution;
  spec.bbox = scene_box(sites);
  const LabelRaster labels =
      rasterize_voronoi(sites.sites, spec, metric, args.tie_band, args.threads);
  emit_pgm(labels, args.out + "/labels.pgm");
  if (args.fields) {
    for (std::size_t k = 0; k < sites.sites.size(); ++k) {
      emit_angf(rasterize_distance(sites.sites[k], spec, metric, args.threads),
                args.out + "/distance_" + std::to_string(k) + ".angf");
    }
  }

  const FaceReport faces = count_faces(labels);
  json report;
  report["tool"] = std::string(kToolVersion);
  report["metric"] = args.metric;
  report["grid"] = {{"width", spec.width},
                    {"height", spec.height},
                    {"bbox", {spec.bbox.xmin, spec.bbox.ymin, spec.bbox.xmax, spec.bbox.ymax}}};
  report["tie_band"] = args.tie_band;
  report["threads"] = args.threads;
  report["sites"] = json::array();
  for (const Site& s : sites.sites) report["sites"].push_back(site_json(s));
  report["faces"] = {{"total", faces.total_faces}, {"tie_cells", faces.tie_cells}};
  report["faces"]["components_per_label"] = json::object();
  for (const auto& [label, count] : faces.components_per_label) {
    report["faces"]["components_per_label"][std::to_string(label)] = count;
  }
  write_text_file(args.out + "/report.json", report.dump(2) + "\n");
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::string out = ".";
  VerifyConfig config;
};

int run_verify(const VerifyArgs& args) {
  ensure_dir(args.out);
  std::vector<SuiteReport> reports;
  if (args.suite == "loci") {
    reports.push_back(verify_loci(args.config));
  } else if (args.suite == "bisector") {
    reports.push_back(verify_bisector(args.config));
  } else if (args.suite == "faces") {
    reports.push_back(verify_faces(args.config));
  } else if (args.suite == "crossings") {
    reports.push_back(verify_crossings(args.config));
  } else {
    reports = verify_all(args.config);
  }
  write_text_file(args.out + "/report.json", reports_to_json(reports));

  bool all_pass = true;
  for (const SuiteReport& report : reports) {
    all_pass = all_pass && report.pass;
    std::printf("%-10s %s (%.1fs)\n", report.suite.c_str(), report.pass ? "PASS" : "FAIL",
                report.elapsed_seconds);
    for (const CheckResult& check : report.checks) {
      std::printf("  %-32s %s  measured=%.6g limit=%.6g\n", check.name.c_str(),
                  check.pass ? "pass" : "FAIL", check.measured, check.limit);
    }
  }
  return all_pass ? 0 : 1;
}

struct RenderArgs {
  std::string sites_path;
  std::string metric = "sym";
  std::string out = ".";
  bool spirals = false;
  bool underlay = false;
  int resolution = 256;
  double tie_band = 1e-2;
  int threads = 1;
  double spiral_turns = 1.5;
};

int run_render(const RenderArgs& args) {
  const SiteFile sites = load_site_file(args.sites_path);
  const Metric metric = parse_metric(args.metric);
  ensure_dir(args.out);

  Scene scene;
  scene.bbox = scene_box(sites);

  if (args.underlay && sites.sites.size() >= 2) {
    GridSpec spec;
    spec.width = args.resolution;
    spec.height = args.resolution;
    spec.bbox = scene.bbox;
    const LabelRaster labels =
        rasterize_voronoi(sites.sites, spec, metric, args.tie_band, args.threads);
    emit_pgm(labels, args.out + "/labels.pgm");
    scene.add_image("labels.pgm", scene.bbox, 0.25);
  }
  if (sites.sites.size() == 2) {
    BisectorOptions options;
    options.working_box = scene.bbox;
    const BisectorCurve curve = metric == Metric::symmetric_min
                                    ? symmetric_bisector(sites.sites[0], sites.sites[1], options)
                                    : oriented_bisector(sites.sites[0], sites.sites[1]);
    scene.add_bisector(curve);
  }
  if (args.spirals) {
    const double c = 0.05 * std::min(scene.bbox.width(), scene.bbox.height()) / kTwoPi * 2.0;
    for (const Site& s : sites.sites) {
      scene.add_polyline(spiral_polyline(s, args.spiral_turns * kTwoPi, 64, c),
                         scene.styles.spiral);
    }
  }
  for (const Site& s : sites.sites) scene.add_site(s);
  emit_svg(scene, args.out + "/scene.svg");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rotating-ray angular distance geometry"};
  app.require_subcommand(1);

  LocusArgs locus_args;
  auto* locus = app.add_subcommand("locus", "emit a constant angle-sum or angle-difference locus");
  locus->add_option("kind", locus_args.kind, "sum or diff")
      ->required()
      ->check(CLI::IsMember({"sum", "diff"}));
  locus->add_option("--p", locus_args.p_text, "first base point as x,y")->required();
  locus->add_option("--q", locus_args.q_text, "second base point as x,y")->required();
  locus->add_option("--angle", locus_args.angle_deg, "angle in degrees")->required();
  locus->add_option("--side", locus_args.side, "arc side for sum loci (left|right)")
      ->check(CLI::IsMember({"left", "right"}));
  locus->add_option("--samples", locus_args.samples, "sample count")->check(CLI::Range(2, 1 << 20));
  locus->add_option("--span", locus_args.span, "log-parameter half range for diff loci");
  locus->add_option("--out", locus_args.out, "output directory")->required();

  BisectorArgs bisector_args;
  auto* bisector = app.add_subcommand("bisector", "assemble the two-site bisector");
  bisector->add_option("--sites", bisector_args.sites_path, "site file (JSON)")->required();
  bisector->add_option("--metric", bisector_args.metric, "sym or ccw");
  bisector->add_option("--samples", bisector_args.samples, "samples per rendered piece");
  bisector->add_option("--out", bisector_args.out, "output directory")->required();

  VoronoiArgs voronoi_args;
  auto* voronoi = app.add_subcommand("voronoi", "rasterize a labeled Voronoi diagram");
  voronoi->add_option("--sites", voronoi_args.sites_path, "site file (JSON)")->required();
  voronoi->add_option("--metric", voronoi_args.metric, "sym or ccw");
  voronoi->add_option("--res", voronoi_args.resolution, "grid resolution per side")
      ->check(CLI::Range(2, 8192));
  voronoi->add_option("--tie-band", voronoi_args.tie_band, "tie tolerance in radians");
  voronoi->add_option("--threads", voronoi_args.threads, "row-parallel evaluation threads")
      ->check(CLI::Range(1, 256));
  voronoi->add_flag("--fields", voronoi_args.fields,
                    "also write per-site distance fields (ANGF)");
  voronoi->add_option("--out", voronoi_args.out, "output directory")->required();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("suite", verify_args.suite, "loci|bisector|faces|crossings|all")
      ->required()
      ->check(CLI::IsMember({"loci", "bisector", "faces", "crossings", "all"}));
  verify->add_option("--seed", verify_args.config.seed, "64-bit seed for the randomized trials");
  auto* trials_opt =
      verify->add_option("--trials", verify_args.config.trials, "placements / configurations");
  auto* faces_trials_opt = verify->add_option(
      "--faces-trials", verify_args.config.faces_trials, "configurations for the face bound");
  verify->add_option("--lines", verify_args.config.lines_total, "total accepted random lines");
  verify->add_option("--line-samples", verify_args.config.line_samples, "samples per line")
      ->check(CLI::Range(1000, 1 << 20));
  verify->add_option("--res", verify_args.config.grid.width, "grid resolution per side")
      ->check(CLI::Range(2, 8192));
  verify->add_option("--tie-band", verify_args.config.tie_band, "tie tolerance in radians");
  verify->add_option("--threads", verify_args.config.threads, "raster threads")
      ->check(CLI::Range(1, 256));
  verify->add_option("--out", verify_args.out, "output directory")->required();

  RenderArgs render_args;
  auto* render = app.add_subcommand("render", "render a site-file scene to SVG");
  render->add_option("--sites", render_args.sites_path, "site file (JSON)")->required();
  render->add_option("--metric", render_args.metric, "sym or ccw");
  render->add_flag("--spirals", render_args.spirals, "overlay angular-distance spirals");
  render->add_flag("--underlay", render_args.underlay, "emit and reference a label raster");
  render->add_option("--res", render_args.resolution, "underlay resolution")
      ->check(CLI::Range(2, 8192));
  render->add_option("--tie-band", render_args.tie_band, "underlay tie tolerance");
  render->add_option("--threads", render_args.threads, "raster threads")->check(CLI::Range(1, 256));
  render->add_option("--turns", render_args.spiral_turns, "spiral length in turns")
      ->check(CLI::Range(0.1, 2.0));
  render->add_option("--out", render_args.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(locus)) return run_locus(locus_args);
    if (app.got_subcommand(bisector)) return run_bisector(bisector_args);
    if (app.got_subcommand(voronoi)) {
      return run_voronoi(voronoi_args);
    }
    if (app.got_subcommand(verify)) {
      verify_args.config.grid.height = verify_args.config.grid.width;
      // For the faces suite alone, a bare --trials naturally means the face
      // configurations.
      if (verify_args.suite == "faces" && trials_opt->count() > 0 &&
          faces_trials_opt->count() == 0) {
        verify_args.config.faces_trials = verify_args.config.trials;
      }
      return run_verify(verify_args);
    }
    if (app.got_subcommand(render)) return run_render(render_args);
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
