#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rayvor/geometry.hpp"
#include "rayvor/oracle.hpp"

namespace rayvor {

/// Shared configuration for the property suites; every field is echoed into
/// the reports so runs can be reproduced exactly.
struct VerifyConfig {
  std::uint64_t seed = 42;
  int trials = 20;         // random placements / configurations per suite
  int faces_trials = 100;  // configurations for the face-count bound
  int lines_total = 10000;
  int line_samples = 2000;
  int curve_samples = 1000;
  GridSpec grid{};
  double tie_band = 1e-2;
  int threads = 1;

  // Tolerances, fixed by the acceptance gate.
  double angle_tol = 1e-9;
  double pullback_tol = 1e-9;  // scaled by (1 + h)
  double site_pullback_tol = 1e-12;
  double exact_tol = 1e-12;  // Thales center/radius
  double equidistance_eps = kBisectorEps;
  double agreement_cells = 2.0;
  double foci_separation = 1e-6;  // times |pq|
  int max_faces = 4;
  int max_crossings = 3;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;  // worst value observed
  double limit = 0.0;     // bound it is held against
  std::string note;
};

struct SuiteReport {
  std::string suite;
  bool pass = false;
  std::vector<CheckResult> checks;
  VerifyConfig config;
  double elapsed_seconds = 0.0;  // informational; excluded from report files
};

/// Constancy, pullback, foci and the h-delta relation for both analytic
/// locus families.
[[nodiscard]] SuiteReport verify_loci(const VerifyConfig& config);

/// Analytic symmetric bisector against the raster oracle.
[[nodiscard]] SuiteReport verify_bisector(const VerifyConfig& config);

/// Face-count bound over random configurations plus the crafted
/// disconnected-region configuration.
[[nodiscard]] SuiteReport verify_faces(const VerifyConfig& config);

/// Sign-change bound along random lines.
[[nodiscard]] SuiteReport verify_crossings(const VerifyConfig& config);

[[nodiscard]] std::vector<SuiteReport> verify_all(const VerifyConfig& config);

/// Two-site configuration whose first site has a disconnected region under
/// the symmetric distance.
[[nodiscard]] std::pair<Site, Site> disconnected_region_sites();

/// Deterministic JSON for one or more suite reports; embeds the tool
/// version, the full configuration echo and all tolerances. Excludes wall
/// time so identical runs produce identical bytes.
[[nodiscard]] std::string reports_to_json(const std::vector<SuiteReport>& reports);

}  // namespace rayvor
