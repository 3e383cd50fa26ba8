#include "rayvor/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rayvor {

using nlohmann::json;

SiteFile parse_site_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("site file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("sites") || !doc["sites"].is_array()) {
    throw InvalidInput("site file: expected an object with a \"sites\" array");
  }
  SiteFile out;
  for (const auto& entry : doc["sites"]) {
    if (!entry.is_object() || !entry.contains("x") || !entry.contains("y") ||
        !entry.contains("theta_deg")) {
      throw InvalidInput("site file: each site needs x, y and theta_deg");
    }
    const double x = entry["x"].get<double>();
    const double y = entry["y"].get<double>();
    const double theta_deg = entry["theta_deg"].get<double>();
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(theta_deg)) {
      throw InvalidInput("site file: non-finite site values");
    }
    out.sites.emplace_back(Point{x, y}, degrees_to_radians(theta_deg));
  }
  if (out.sites.empty()) {
    throw InvalidInput("site file: need at least one site");
  }
  for (std::size_t a = 0; a < out.sites.size(); ++a) {
    for (std::size_t b = a + 1; b < out.sites.size(); ++b) {
      if (out.sites[a].position == out.sites[b].position) {
        throw InvalidInput("site file: sites must have pairwise distinct positions");
      }
    }
  }
  if (doc.contains("bbox")) {
    const auto& bb = doc["bbox"];
    if (!bb.is_array() || bb.size() != 4) {
      throw InvalidInput("site file: bbox must be [xmin, ymin, xmax, ymax]");
    }
    Bbox box{bb[0].get<double>(), bb[1].get<double>(), bb[2].get<double>(), bb[3].get<double>()};
    if (!box.valid()) throw InvalidInput("site file: degenerate bbox");
    out.bbox = box;
  }
  return out;
}

SiteFile load_site_file(const std::string& path) {
  return parse_site_json(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in && !in.eof()) throw IoError("read failed for " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for " + path);
}

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }

json piece_json(const BisectorPiece& piece) {
  json out;
  out["role"] = piece.role == PieceRole::equidistant ? "equidistant" : "region_boundary";
  if (const auto* arc = std::get_if<CircularArc>(&piece.geom)) {
    out["type"] = "circular_arc";
    out["center"] = point_json(arc->center);
    out["radius"] = arc->radius;
    out["start_angle"] = arc->start_angle;
    out["end_angle"] = arc->end_angle;
    out["orientation"] = arc->orientation == ArcOrientation::ccw ? "ccw" : "cw";
  } else if (const auto* hyp = std::get_if<HyperbolicArc>(&piece.geom)) {
    out["type"] = "hyperbolic_arc";
    out["h"] = hyp->h;
    out["branch"] = hyp->branch == HyperbolaBranch::positive_x ? "positive_x" : "negative_x";
    out["frame"] = {{"rotation", hyp->frame.rotation},
                    {"scale", hyp->frame.scale},
                    {"translation", point_json(hyp->frame.translation)},
                    {"reflect", hyp->frame.reflect}};
    out["u_range"] = json::array({hyp->u_min, hyp->u_max});
  } else {
    const auto& line = std::get<LinearPiece>(piece.geom);
    out["type"] = "linear";
    out["anchor"] = point_json(line.anchor);
    out["direction"] = line.direction;
    out["t_range"] = json::array({line.t_min, line.t_max});
  }
  return out;
}

}  // namespace

std::string bisector_to_json(const BisectorCurve& curve) {
  json out;
  out["tool"] = std::string(kToolVersion);
  out["metric"] = curve.metric == Metric::symmetric_min ? "symmetric_min" : "oriented_ccw";
  out["sites"] = json::array(
      {{{"x", curve.site_p.position.x},
        {"y", curve.site_p.position.y},
        {"theta_deg", radians_to_degrees(curve.site_p.ray_direction)}},
       {{"x", curve.site_q.position.x},
        {"y", curve.site_q.position.y},
        {"theta_deg", radians_to_degrees(curve.site_q.ray_direction)}}});
  out["pieces"] = json::array();
  for (const auto& piece : curve.pieces) out["pieces"].push_back(piece_json(piece));
  return out.dump(2) + "\n";
}

std::string points_to_jsonl(const std::vector<Point>& points) {
  std::string out;
  for (const Point& p : points) {
    json line = {{"x", p.x}, {"y", p.y}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace rayvor
