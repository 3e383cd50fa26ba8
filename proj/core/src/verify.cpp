#include "rayvor/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iterator>
#include <limits>

#include <json.hpp>

#include "rayvor/io.hpp"
#include "rayvor/loci.hpp"
#include "rayvor/rng.hpp"

namespace rayvor {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kDeltaGridDeg[] = {10.0, 45.0, 90.0, 135.0, 170.0,
                                    -10.0, -45.0, -90.0, -135.0, -170.0};
constexpr double kSigmaGridDeg[] = {10.0, 45.0, 90.0, 135.0, 170.0};
constexpr double kHGrid[] = {0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0};

// Stream offsets keep the suites' random draws independent of each other.
constexpr std::uint64_t kLociStream = 1000;
constexpr std::uint64_t kBisectorStream = 5000;
constexpr std::uint64_t kFacesStream = 9000;
constexpr std::uint64_t kCrossingsStream = 13000;

std::pair<Point, Point> placed_pair(const SimilarityTransform& t) {
  return {apply(t, {1.0, 0.0}), apply(t, {-1.0, 0.0})};
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CheckResult upper_bound_check(std::string name, double measured, double limit,
                              std::string note = {}) {
  CheckResult out;
  out.name = std::move(name);
  out.measured = measured;
  out.limit = limit;
  out.pass = measured <= limit;
  out.note = std::move(note);
  return out;
}

CheckResult lower_bound_check(std::string name, double measured, double limit,
                              std::string note = {}) {
  CheckResult out;
  out.name = std::move(name);
  out.measured = measured;
  out.limit = limit;
  out.pass = measured >= limit;
  out.note = std::move(note);
  return out;
}

void finish(SuiteReport& report) {
  report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                            [](const CheckResult& c) { return c.pass; });
}

}  // namespace

SuiteReport verify_loci(const VerifyConfig& config) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "loci";
  report.config = config;

  double worst_delta = 0.0;
  double worst_pullback = 0.0;    // |x*y - h| / (1 + h)
  double worst_site_pullback = 0.0;
  double min_foci_ratio = std::numeric_limits<double>::infinity();

  for (std::size_t d = 0; d < std::size(kDeltaGridDeg); ++d) {
    const double delta = degrees_to_radians(kDeltaGridDeg[d]);
    for (int trial = 0; trial < config.trials; ++trial) {
      Rng rng = trial_rng(config.seed, kLociStream + d * 100 + trial);
      const auto [p, q] = placed_pair(random_similarity(rng));
      const double scale_pq = distance(p, q);
      const auto locus = constant_angle_difference_locus(p, q, delta);

      const auto samples = sample_angle_difference_locus(locus, -5.0, 5.0, config.curve_samples);
      for (const Point& z : samples) {
        if (distance(z, p) < 1e-6 * scale_pq || distance(z, q) < 1e-6 * scale_pq) continue;
        const auto angles = triangle_base_angles(p, q, z);
        worst_delta =
            std::max(worst_delta, std::fabs(wrap_signed((angles.at_p - angles.at_q) - delta)));
      }

      for (std::size_t a = 0; a < locus.arcs.size(); ++a) {
        HyperbolicArc bounded = locus.arcs[a];
        bounded.u_min = std::max(bounded.u_min, -5.0);
        bounded.u_max = std::min(bounded.u_max, 5.0);
        for (const Point& z : sample_hyperbolic_arc(bounded, config.curve_samples / 2)) {
          const Point c = canonical_pullback(bounded, z);
          worst_pullback = std::max(
              worst_pullback, std::fabs(c.x * c.y - bounded.h) / (1.0 + bounded.h));
        }
        for (const Point& site : {p, q}) {
          const Point c = canonical_pullback(bounded, site);
          worst_site_pullback = std::max(worst_site_pullback, std::fabs(c.x * c.y - bounded.h));
        }
        const auto [f1, f2] = hyperbola_foci(bounded);
        for (const Point& focus : {f1, f2}) {
          min_foci_ratio = std::min(min_foci_ratio, distance(focus, p) / scale_pq);
          min_foci_ratio = std::min(min_foci_ratio, distance(focus, q) / scale_pq);
        }
      }
    }
  }
  report.checks.push_back(
      upper_bound_check("angle_difference_constancy", worst_delta, config.angle_tol,
                        "max |wrap((mu-nu) - delta)| over the delta grid, u in [-5, 5]"));
  report.checks.push_back(upper_bound_check("canonical_pullback", worst_pullback,
                                            config.pullback_tol,
                                            "max |x*y - h| / (1 + h) over sampled arc points"));
  report.checks.push_back(upper_bound_check("sites_on_curve", worst_site_pullback,
                                            config.site_pullback_tol,
                                            "pullback residual of the sites themselves"));
  report.checks.push_back(lower_bound_check("foci_distinct", min_foci_ratio,
                                            config.foci_separation,
                                            "min focus-to-site distance over |pq|"));

  // Independent h-delta oracle: raw canonical configuration, no locus
  // construction involved.
  double worst_relation = 0.0;
  for (const double h : kHGrid) {
    const Point p{h, 1.0};
    const Point q{-h, -1.0};
    const double expected = kPi - 2.0 * std::atan(1.0 / h);
    for (int k = 1; k <= 40; ++k) {
      const double u = 5.0 * k / 40.0;
      const Point z{h * std::exp(u), std::exp(-u)};
      const auto angles = triangle_base_angles(p, q, z);
      worst_relation = std::max(worst_relation,
                                std::fabs((angles.at_p - angles.at_q) - expected));
    }
  }
  report.checks.push_back(
      upper_bound_check("h_delta_relation", worst_relation, config.angle_tol,
                        "delta = pi - 2*atan(1/h) on the half beyond the site"));

  double worst_sum = 0.0;
  double worst_thales = 0.0;
  for (std::size_t s = 0; s < std::size(kSigmaGridDeg); ++s) {
    const double sigma = degrees_to_radians(kSigmaGridDeg[s]);
    for (int trial = 0; trial < config.trials; ++trial) {
      Rng rng = trial_rng(config.seed, kLociStream + 700 + s * 100 + trial);
      const auto [p, q] = placed_pair(random_similarity(rng));
      const double scale_pq = distance(p, q);
      const ArcSide side = trial % 2 == 0 ? ArcSide::left : ArcSide::right;
      const CircularArc arc = constant_angle_sum_locus(p, q, sigma, side);
      const double sweep = arc_sweep(arc);
      const double mask = 1e-6 * scale_pq / arc.radius;
      for (int i = 0; i < config.curve_samples; ++i) {
        const double t = mask + (sweep - 2.0 * mask) * static_cast<double>(i) /
                                    (config.curve_samples - 1);
        const auto angles = triangle_base_angles(p, q, circular_arc_point(arc, t));
        worst_sum = std::max(worst_sum, std::fabs((angles.at_p + angles.at_q) - sigma));
      }
      if (kSigmaGridDeg[s] == 90.0) {
        const CircularArc thales = constant_angle_sum_locus(p, q, 0.5 * kPi, side);
        worst_thales = std::max(worst_thales, distance(thales.center, midpoint(p, q)));
        worst_thales =
            std::max(worst_thales, std::fabs(thales.radius - 0.5 * scale_pq));
      }
    }
  }
  report.checks.push_back(
      upper_bound_check("angle_sum_constancy", worst_sum, config.angle_tol,
                        "max |(mu+nu) - sigma| over the sigma grid"));
  report.checks.push_back(upper_bound_check("thales_diameter_exact", worst_thales,
                                            config.exact_tol,
                                            "sigma = 90 degrees: center and radius"));

  finish(report);
  report.elapsed_seconds = seconds_since(start);
  return report;
}

SuiteReport verify_bisector(const VerifyConfig& config) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "bisector";
  report.config = config;

  const Bbox site_box{-1.5, -1.5, 1.5, 1.5};
  double worst_curve_to_grid = 0.0;
  double worst_grid_to_curve = 0.0;
  double worst_residual = 0.0;
  int empty_curves = 0;

  BisectorOptions options;
  options.working_box = config.grid.bbox;
  options.eps = config.equidistance_eps;

  for (int trial = 0; trial < config.trials; ++trial) {
    Rng rng = trial_rng(config.seed, kBisectorStream + trial);
    const auto [p, q] = random_site_pair(rng, site_box, 0.5);
    const BisectorCurve curve = symmetric_bisector(p, q, options);
    const LabelRaster labels = rasterize_voronoi({p, q}, config.grid, Metric::symmetric_min,
                                                 config.tie_band, config.threads);
    const CurveGridReport agreement =
        compare_curve_to_grid(curve, labels, 1024, config.tie_band);
    if (agreement.empty_curve) ++empty_curves;
    worst_curve_to_grid = std::max(worst_curve_to_grid, agreement.max_curve_to_boundary_cells);
    worst_grid_to_curve = std::max(worst_grid_to_curve, agreement.max_boundary_to_curve_cells);
    worst_residual = std::max(
        worst_residual, max_equidistance_residual(curve, config.curve_samples, config.grid.bbox));
  }

  report.checks.push_back(
      upper_bound_check("curve_to_grid_cells", worst_curve_to_grid, config.agreement_cells,
                        "curve samples vs tie/label-change cells, in cell diagonals"));
  report.checks.push_back(
      upper_bound_check("grid_to_curve_cells", worst_grid_to_curve, config.agreement_cells,
                        "label-change cells vs curve samples, in cell diagonals"));
  report.checks.push_back(
      upper_bound_check("equidistance_residual", worst_residual, config.equidistance_eps,
                        "max |d_p - d_q| along all bisector pieces, radians"));
  report.checks.push_back(upper_bound_check("empty_curves", empty_curves, 0.0,
                                            "configurations producing no bisector pieces"));

  finish(report);
  report.elapsed_seconds = seconds_since(start);
  return report;
}

SuiteReport verify_faces(const VerifyConfig& config) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "faces";
  report.config = config;

  const Bbox site_box{-1.5, -1.5, 1.5, 1.5};
  int max_faces = 0;
  for (int trial = 0; trial < config.faces_trials; ++trial) {
    Rng rng = trial_rng(config.seed, kFacesStream + trial);
    const auto [p, q] = random_site_pair(rng, site_box, 0.5);
    const LabelRaster labels = rasterize_voronoi({p, q}, config.grid, Metric::symmetric_min,
                                                 config.tie_band, config.threads);
    max_faces = std::max(max_faces, count_faces(labels).total_faces);
  }
  report.checks.push_back(upper_bound_check("face_bound", max_faces, config.max_faces,
                                            "max face count over random configurations"));

  const auto [p, q] = disconnected_region_sites();
  const LabelRaster labels = rasterize_voronoi({p, q}, config.grid, Metric::symmetric_min,
                                               config.tie_band, config.threads);
  const FaceReport crafted = count_faces(labels);
  const auto it = crafted.components_per_label.find(0);
  const int components = it == crafted.components_per_label.end() ? 0 : it->second;
  report.checks.push_back(lower_bound_check("disconnected_region", components, 2.0,
                                            "components of the first site's region in the "
                                            "crafted configuration"));
  report.checks.push_back(upper_bound_check("disconnected_region_face_bound",
                                            crafted.total_faces, config.max_faces));

  finish(report);
  report.elapsed_seconds = seconds_since(start);
  return report;
}

SuiteReport verify_crossings(const VerifyConfig& config) {
  const auto start = Clock::now();
  SuiteReport report;
  report.suite = "crossings";
  report.config = config;

  const Bbox site_box{-1.5, -1.5, 1.5, 1.5};
  const int lines_per_config = (config.lines_total + config.trials - 1) / config.trials;
  int max_crossings = 0;
  int accepted = 0;
  int rejected = 0;

  for (int trial = 0; trial < config.trials; ++trial) {
    Rng rng = trial_rng(config.seed, kCrossingsStream + trial);
    const auto [p, q] = random_site_pair(rng, site_box, 0.5);
    int kept = 0;
    int attempts = 0;
    while (kept < lines_per_config && attempts < 100 * lines_per_config) {
      ++attempts;
      Line line;
      line.anchor = {rng.uniform(config.grid.bbox.xmin, config.grid.bbox.xmax),
                     rng.uniform(config.grid.bbox.ymin, config.grid.bbox.ymax)};
      line.direction = rng.uniform(-kPi, kPi);
      const auto crossings = line_crossings(p, q, line, config.line_samples, config.grid.bbox,
                                            config.equidistance_eps);
      if (!crossings) {
        ++rejected;
        continue;
      }
      ++kept;
      ++accepted;
      max_crossings = std::max(max_crossings, *crossings);
    }
  }

  report.checks.push_back(upper_bound_check(
      "crossing_bound", max_crossings, config.max_crossings,
      "max sign changes over " + std::to_string(accepted) + " accepted lines (" +
          std::to_string(rejected) + " rejected as bisector-carrying)"));
  report.checks.push_back(lower_bound_check("accepted_lines", accepted,
                                            static_cast<double>(config.lines_total)));

  finish(report);
  report.elapsed_seconds = seconds_since(start);
  return report;
}

std::vector<SuiteReport> verify_all(const VerifyConfig& config) {
  return {verify_loci(config), verify_bisector(config), verify_faces(config),
          verify_crossings(config)};
}

std::pair<Site, Site> disconnected_region_sites() {
  // Parallel rays pointing back over the first site: its region reappears
  // past the second site around the shared ray direction.
  return {Site({-1.0, 0.0}, degrees_to_radians(165.0)),
          Site({1.0, 0.0}, degrees_to_radians(165.0))};
}

std::string reports_to_json(const std::vector<SuiteReport>& reports) {
  using nlohmann::json;
  json out;
  out["tool"] = std::string(kToolVersion);
  bool all_pass = true;
  out["suites"] = json::array();
  for (const SuiteReport& report : reports) {
    json suite;
    suite["suite"] = report.suite;
    suite["pass"] = report.pass;
    all_pass = all_pass && report.pass;
    suite["checks"] = json::array();
    for (const CheckResult& check : report.checks) {
      suite["checks"].push_back({{"name", check.name},
                                 {"pass", check.pass},
                                 {"measured", check.measured},
                                 {"limit", check.limit},
                                 {"note", check.note}});
    }
    const VerifyConfig& c = report.config;
    suite["config"] = {{"seed", c.seed},
                       {"trials", c.trials},
                       {"faces_trials", c.faces_trials},
                       {"lines_total", c.lines_total},
                       {"line_samples", c.line_samples},
                       {"curve_samples", c.curve_samples},
                       {"grid", {{"width", c.grid.width},
                                 {"height", c.grid.height},
                                 {"bbox", {c.grid.bbox.xmin, c.grid.bbox.ymin, c.grid.bbox.xmax,
                                           c.grid.bbox.ymax}}}},
                       {"tie_band", c.tie_band},
                       {"threads", c.threads},
                       {"tolerances",
                        {{"angle_tol", c.angle_tol},
                         {"pullback_tol", c.pullback_tol},
                         {"site_pullback_tol", c.site_pullback_tol},
                         {"exact_tol", c.exact_tol},
                         {"equidistance_eps", c.equidistance_eps},
                         {"agreement_cells", c.agreement_cells},
                         {"foci_separation", c.foci_separation},
                         {"max_faces", c.max_faces},
                         {"max_crossings", c.max_crossings}}}};
    out["suites"].push_back(suite);
  }
  out["pass"] = all_pass;
  return out.dump(2) + "\n";
}

}  // namespace rayvor
