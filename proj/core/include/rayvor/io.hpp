#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rayvor/bisector.hpp"
#include "rayvor/geometry.hpp"

namespace rayvor {

inline constexpr std::string_view kToolVersion = "rayvor 0.1.0";

/// Parsed site file. The JSON schema is
///   {"sites": [{"x": -1, "y": 0, "theta_deg": 0}, ...],
///    "bbox": [xmin, ymin, xmax, ymax]}           // bbox optional
/// Angles are degrees in files and radians everywhere else.
struct SiteFile {
  std::vector<Site> sites;
  std::optional<Bbox> bbox;
};

[[nodiscard]] SiteFile parse_site_json(const std::string& text);
[[nodiscard]] SiteFile load_site_file(const std::string& path);

[[nodiscard]] std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// JSON description of bisector pieces: type, parameters, clip range.
[[nodiscard]] std::string bisector_to_json(const BisectorCurve& curve);

/// JSON-lines point stream, one {"x": ..., "y": ...} object per line.
[[nodiscard]] std::string points_to_jsonl(const std::vector<Point>& points);

}  // namespace rayvor
