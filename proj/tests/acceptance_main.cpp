// Acceptance gate: every release-blocking property at its pinned tolerance,
// one line per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "rayvor/io.hpp"
#include "rayvor/verify.hpp"
#include "fixtures/scene_fixtures.hpp"

using namespace rayvor;

namespace {

using Clock = std::chrono::steady_clock;

const CheckResult& find_check(const SuiteReport& report, const std::string& name) {
  for (const CheckResult& check : report.checks) {
    if (check.name == name) return check;
  }
  std::fprintf(stderr, "missing check %s in suite %s\n", name.c_str(), report.suite.c_str());
  std::exit(70);
}

int failures = 0;

void criterion(int id, const std::string& title, bool pass, const std::string& detail) {
  std::printf("criterion %d %s - %s (%s)\n", id, pass ? "PASS" : "FAIL", title.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

bool files_equal(const std::string& a, const std::string& b) {
  return read_text_file(a) == read_text_file(b);
}

int run(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

int main() {
  const std::string out = std::string(RAYVOR_TEST_OUT) + "/acceptance";
  if (std::system(("mkdir -p " + out).c_str()) != 0) {
    std::fprintf(stderr, "cannot create %s\n", out.c_str());
    return 70;
  }

  VerifyConfig config;  // seed 42, 20 trials, 100 face configs, 10^4 lines, 512^2 grid

  const SuiteReport loci = verify_loci(config);
  const SuiteReport bisector = verify_bisector(config);
  const SuiteReport faces = verify_faces(config);
  const SuiteReport crossings = verify_crossings(config);

  // 1. Signed angle-difference constancy along the constructed loci.
  {
    const auto& check = find_check(loci, "angle_difference_constancy");
    criterion(1, "angle-difference constancy over the delta grid",
              check.pass && loci.elapsed_seconds < 10.0,
              fmt("max residual %.3g <= %.0e rad", check.measured, check.limit) +
                  fmt(", suite %.1fs < %.0fs", loci.elapsed_seconds, 10.0));
  }

  // 2. Canonical identity x*y = h and the h-delta relation, including the
  // committed calibration artifact.
  {
    const auto& pullback = find_check(loci, "canonical_pullback");
    const auto& sites = find_check(loci, "sites_on_curve");
    const auto& relation = find_check(loci, "h_delta_relation");
    const std::string fresh = out + "/hdelta_fresh.txt";
    const bool tool_ok = run(std::string(RAYVOR_CALIBRATE_TOOL) + " " + fresh) == 0;
    const bool artifact_ok = tool_ok && files_equal(fresh, RAYVOR_CALIBRATION_FILE);
    criterion(2, "canonical pullback and calibrated h = tan(|delta|/2)",
              pullback.pass && sites.pass && relation.pass && artifact_ok,
              fmt("pullback %.3g <= %.0e", pullback.measured, pullback.limit) +
                  fmt(", relation %.3g <= %.0e", relation.measured, relation.limit) +
                  (artifact_ok ? ", calibration table reproduced" : ", CALIBRATION MISMATCH"));
  }

  // 3. Angle-sum constancy with the exact Thales diameter case.
  {
    const auto& sum = find_check(loci, "angle_sum_constancy");
    const auto& thales = find_check(loci, "thales_diameter_exact");
    criterion(3, "angle-sum constancy and exact Thales circle", sum.pass && thales.pass,
              fmt("sum residual %.3g <= %.0e", sum.measured, sum.limit) +
                  fmt(", thales %.3g <= %.0e", thales.measured, thales.limit));
  }

  // 4. Hyperbola foci stay away from the defining points.
  {
    const auto& foci = find_check(loci, "foci_distinct");
    criterion(4, "foci distinct from the base points", foci.pass,
              fmt("min separation %.3g >= %.0e of |pq|", foci.measured, foci.limit));
  }

  // 5. Analytic bisector against the raster oracle.
  {
    const auto& c2g = find_check(bisector, "curve_to_grid_cells");
    const auto& g2c = find_check(bisector, "grid_to_curve_cells");
    const auto& residual = find_check(bisector, "equidistance_residual");
    criterion(5, "bisector-oracle agreement at 512x512",
              bisector.pass && bisector.elapsed_seconds < 60.0,
              fmt("curve->grid %.2f, grid->curve %.2f cells <= 2", c2g.measured, g2c.measured) +
                  fmt(", residual %.3g <= %.0e rad", residual.measured, residual.limit) +
                  fmt(", %.1fs < %.0fs", bisector.elapsed_seconds, 60.0));
  }

  // 6. Face bound with a crafted disconnected region.
  {
    const auto& bound = find_check(faces, "face_bound");
    const auto& disconnected = find_check(faces, "disconnected_region");
    criterion(6, "face count bound and disconnected region", faces.pass,
              fmt("max faces %.0f <= %.0f", bound.measured, bound.limit) +
                  fmt(", crafted components %.0f >= %.0f", disconnected.measured,
                      disconnected.limit));
  }

  // 7. Line crossing bound.
  {
    const auto& bound = find_check(crossings, "crossing_bound");
    const auto& accepted = find_check(crossings, "accepted_lines");
    criterion(7, "line crossing bound", crossings.pass,
              fmt("max crossings %.0f <= %.0f", bound.measured, bound.limit) +
                  fmt(", accepted lines %.0f >= %.0f", accepted.measured, accepted.limit));
  }

  // 8. Determinism: repeated verify runs and the committed golden artifacts.
  {
    const std::string flags = " --seed 42 --trials 3 --faces-trials 5 --lines 600 "
                              "--line-samples 1000 --res 128";
    const std::string run_a = out + "/verify_a";
    const std::string run_b = out + "/verify_b";
    const std::string cli = RAYVOR_CLI_PATH;
    const bool ran = run(cli + " verify all" + flags + " --out " + run_a) == 0 &&
                     run(cli + " verify all" + flags + " --out " + run_b) == 0;
    const bool reports_identical =
        ran && files_equal(run_a + "/report.json", run_b + "/report.json");

    const std::string golden = std::string(RAYVOR_TEST_DIR) + "/golden";
    const LabelRaster labels = fixtures::disconnected_labels();
    const std::string pgm_fresh = out + "/labels_disconnected.pgm";
    emit_pgm(labels, pgm_fresh);
    const bool goldens_ok =
        files_equal(pgm_fresh, golden + "/labels_disconnected.pgm") &&
        svg_to_string(fixtures::hyperbola_figure()) ==
            read_text_file(golden + "/figure_hyperbola.svg") &&
        svg_to_string(fixtures::bisector_figure(labels)) ==
            read_text_file(golden + "/figure_bisector.svg");

    criterion(8, "deterministic reports and golden artifacts",
              reports_identical && goldens_ok,
              std::string(reports_identical ? "verify-all reports byte-identical"
                                            : "REPORTS DIFFER") +
                  (goldens_ok ? ", goldens reproduced" : ", GOLDENS DIFFER"));
  }

  if (failures == 0) {
    std::printf("acceptance: all 8 criteria pass\n");
  } else {
    std::printf("acceptance: %d criterion(s) failing\n", failures);
  }
  return failures;
}
