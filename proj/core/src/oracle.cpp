#include "rayvor/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <thread>

namespace rayvor {

namespace {

double metric_distance(const Site& s, Point z, Metric metric) {
  return metric == Metric::symmetric_min ? sym_distance(s, z) : ccw_distance(s, z);
}

void parallel_rows(int height, int threads, const std::function<void(int, int)>& run) {
  threads = std::clamp(threads, 1, height);
  if (threads == 1) {
    run(0, height);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  const int chunk = (height + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(height, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(run, lo, hi);
  }
  for (auto& worker : pool) worker.join();
}

}  // namespace

void validate(const GridSpec& spec) {
  if (spec.width < 2 || spec.height < 2) {
    throw InvalidInput("grid: width and height must be at least 2");
  }
  if (!spec.bbox.valid()) {
    throw InvalidInput("grid: invalid bounding box");
  }
}

DistanceRaster rasterize_distance(const Site& s, const GridSpec& spec, Metric metric,
                                  int threads) {
  validate(spec);
  DistanceRaster out;
  out.bbox = spec.bbox;
  out.width = spec.width;
  out.height = spec.height;
  out.cells.assign(static_cast<std::size_t>(spec.width) * spec.height, 0.0);
  parallel_rows(spec.height, threads, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < spec.width; ++i) {
        const Point z = out.cell_center(i, j);
        out.at(i, j) = z == s.position ? 0.0 : metric_distance(s, z, metric);
      }
    }
  });
  return out;
}

LabelRaster rasterize_voronoi(const std::vector<Site>& sites, const GridSpec& spec, Metric metric,
                              double tie_band, int threads) {
  validate(spec);
  if (sites.size() < 2) {
    throw InvalidInput("rasterize_voronoi: need at least two sites");
  }
  if (sites.size() >= kTieLabel) {
    throw InvalidInput("rasterize_voronoi: too many sites for the label format");
  }
  if (!(tie_band >= 0.0)) {
    throw InvalidInput("rasterize_voronoi: tie_band must be non-negative");
  }
  for (std::size_t a = 0; a < sites.size(); ++a) {
    for (std::size_t b = a + 1; b < sites.size(); ++b) {
      if (sites[a].position == sites[b].position) {
        throw InvalidInput("rasterize_voronoi: coincident sites");
      }
    }
  }

  LabelRaster out;
  out.bbox = spec.bbox;
  out.width = spec.width;
  out.height = spec.height;
  out.cells.assign(static_cast<std::size_t>(spec.width) * spec.height, 0);
  const double cell_diag = out.cell_diagonal();
  parallel_rows(spec.height, threads, [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      for (int i = 0; i < spec.width; ++i) {
        const Point z = out.cell_center(i, j);
        std::uint8_t label = 0;
        std::size_t best_k = 0;
        std::size_t second_k = 0;
        bool on_site = false;
        double best = std::numeric_limits<double>::infinity();
        double second = best;
        for (std::size_t k = 0; k < sites.size(); ++k) {
          if (z == sites[k].position) {
            label = static_cast<std::uint8_t>(k);
            on_site = true;
            break;
          }
          const double d = metric_distance(sites[k], z, metric);
          if (d < best) {
            second = best;
            second_k = best_k;
            best = d;
            best_k = k;
            label = static_cast<std::uint8_t>(k);
          } else if (d < second) {
            second = d;
            second_k = k;
          }
        }
        if (!on_site) {
          // The gap between the two leading distances can change by at most
          // (1/r1 + 1/r2) per world unit, so a cell whose gap is below that
          // bound times the cell diagonal may contain the true boundary and
          // is labeled a tie along with everything inside the fixed band.
          const double lipschitz = 1.0 / distance(z, sites[best_k].position) +
                                   1.0 / distance(z, sites[second_k].position);
          if (second - best <= std::max(tie_band, lipschitz * cell_diag)) label = kTieLabel;
        }
        out.at(i, j) = label;
      }
    }
  });
  return out;
}

FaceReport count_faces(const LabelRaster& labels) {
  FaceReport report;
  const int w = labels.width;
  const int h = labels.height;
  for (const std::uint8_t cell : labels.cells) {
    if (cell == kTieLabel) ++report.tie_cells;
  }

  // Per label: 4-connected flood fill in which tie cells conduct adjacency
  // but carry no area, so a face diced by the tie band stays one face. Only
  // components containing at least one labeled cell count.
  std::vector<std::uint8_t> present;
  for (const std::uint8_t cell : labels.cells) {
    if (cell != kTieLabel &&
        std::find(present.begin(), present.end(), cell) == present.end()) {
      present.push_back(cell);
    }
  }
  std::sort(present.begin(), present.end());

  std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<int> stack;
  for (const std::uint8_t label : present) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w; ++i) {
        const std::size_t idx = static_cast<std::size_t>(j) * w + i;
        if (seen[idx] || labels.cells[idx] != label) continue;
        seen[idx] = 1;
        stack.assign(1, static_cast<int>(idx));
        while (!stack.empty()) {
          const int cur = stack.back();
          stack.pop_back();
          const int ci = cur % w;
          const int cj = cur / w;
          const int ni[4] = {ci - 1, ci + 1, ci, ci};
          const int nj[4] = {cj, cj, cj - 1, cj + 1};
          for (int k = 0; k < 4; ++k) {
            if (ni[k] < 0 || ni[k] >= w || nj[k] < 0 || nj[k] >= h) continue;
            const std::size_t nidx = static_cast<std::size_t>(nj[k]) * w + ni[k];
            if (seen[nidx]) continue;
            const std::uint8_t other = labels.cells[nidx];
            if (other != label && other != kTieLabel) continue;
            seen[nidx] = 1;
            stack.push_back(static_cast<int>(nidx));
          }
        }
        ++report.components_per_label[label];
        ++report.total_faces;
      }
    }
  }
  return report;
}

std::optional<int> line_crossings(const Site& p, const Site& q, const Line& line, int samples,
                                  const Bbox& box, double eps) {
  if (samples < 1000) {
    throw InvalidInput("line_crossings: need at least 1000 samples");
  }
  if (!box.valid()) {
    throw InvalidInput("line_crossings: invalid box");
  }
  LinearPiece infinite;
  infinite.anchor = line.anchor;
  infinite.direction = wrap_signed(line.direction);
  const auto clipped = clip_to_bbox(LocusPrimitive{infinite}, box);
  if (clipped.empty()) return 0;
  const auto& piece = std::get<LinearPiece>(clipped.front());

  int near_zero = 0;
  int crossings = 0;
  int prev_sign = 0;
  for (int i = 0; i <= samples; ++i) {
    const double t =
        piece.t_min + (piece.t_max - piece.t_min) * static_cast<double>(i) / samples;
    const Point z = linear_piece_point(piece, t);
    if (z == p.position || z == q.position) continue;
    const double f = sym_distance(p, z) - sym_distance(q, z);
    if (std::fabs(f) <= eps) ++near_zero;
    const int sign = f > 0.0 ? 1 : (f < 0.0 ? -1 : 0);
    if (sign == 0) continue;  // exact zero joins the preceding sign interval
    if (prev_sign != 0 && sign != prev_sign) ++crossings;
    prev_sign = sign;
  }
  if (near_zero * 100 > samples) return std::nullopt;
  return crossings;
}

namespace {

// Expanding ring search for the nearest marked cell around (i0, j0);
// returns the distance between cell centers, or +inf when nothing is marked.
double nearest_marked_cell(const LabelRaster& grid, const std::vector<char>& marked, Point from,
                           int i0, int j0) {
  const int w = grid.width;
  const int h = grid.height;
  double best = std::numeric_limits<double>::infinity();
  const double step = std::min(grid.cell_dx(), grid.cell_dy());
  const int max_ring = std::max(w, h);
  for (int r = 0; r <= max_ring; ++r) {
    if (best < std::numeric_limits<double>::infinity() && (r - 1) * step > best) break;
    const int ilo = i0 - r;
    const int ihi = i0 + r;
    const int jlo = j0 - r;
    const int jhi = j0 + r;
    for (int i = ilo; i <= ihi; ++i) {
      for (int j : {jlo, jhi}) {
        if (i < 0 || i >= w || j < 0 || j >= h) continue;
        if (std::abs(i - i0) != r && std::abs(j - j0) != r) continue;
        if (marked[static_cast<std::size_t>(j) * w + i]) {
          best = std::min(best, distance(from, grid.cell_center(i, j)));
        }
      }
    }
    for (int j = jlo + 1; j <= jhi - 1; ++j) {
      for (int i : {ilo, ihi}) {
        if (i < 0 || i >= w || j < 0 || j >= h) continue;
        if (marked[static_cast<std::size_t>(j) * w + i]) {
          best = std::min(best, distance(from, grid.cell_center(i, j)));
        }
      }
    }
  }
  return best;
}

}  // namespace

CurveGridReport compare_curve_to_grid(const BisectorCurve& curve, const LabelRaster& labels,
                                      int samples_per_piece, double spine_band) {
  CurveGridReport report;
  const int w = labels.width;
  const int h = labels.height;
  const double diagonal = labels.cell_diagonal();

  // Boundary structure of the raster. Adjacent label changes cannot occur
  // once the tie band carries the per-cell Lipschitz certificate, so the
  // boundary indicators are the tie cells the equidistance zero set provably
  // brushes: gap at the center within one cell diagonal times the locally
  // estimated gap gradient (capped by spine_band against rough estimates
  // near the sites). Plain label changes are kept as indicators as well.
  const auto gap_at = [&](Point z) {
    if (z == curve.site_p.position || z == curve.site_q.position) {
      return std::numeric_limits<double>::infinity();
    }
    return std::fabs(sym_distance(curve.site_p, z) - sym_distance(curve.site_q, z));
  };
  std::vector<char> is_tie_or_change(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::pair<int, int>> change_cells;
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      const std::uint8_t label = labels.at(i, j);
      if (label == kTieLabel) {
        is_tie_or_change[static_cast<std::size_t>(j) * w + i] = 1;
        const Point z = labels.cell_center(i, j);
        const double gap = gap_at(z);
        if (!std::isfinite(gap)) continue;
        const int il = std::max(0, i - 1);
        const int ir = std::min(w - 1, i + 1);
        const int jl = std::max(0, j - 1);
        const int jr = std::min(h - 1, j + 1);
        const double gx = (gap_at(labels.cell_center(ir, j)) -
                           gap_at(labels.cell_center(il, j))) /
                          ((ir - il) * labels.cell_dx());
        const double gy = (gap_at(labels.cell_center(i, jr)) -
                           gap_at(labels.cell_center(i, jl))) /
                          ((jr - jl) * labels.cell_dy());
        const double grad = std::isfinite(gx) && std::isfinite(gy) ? std::hypot(gx, gy) : 0.0;
        if (gap <= std::min(spine_band, grad * labels.cell_diagonal())) {
          change_cells.emplace_back(i, j);
        }
        continue;
      }
      const int ni[4] = {i - 1, i + 1, i, i};
      const int nj[4] = {j, j, j - 1, j + 1};
      for (int k = 0; k < 4; ++k) {
        if (ni[k] < 0 || ni[k] >= w || nj[k] < 0 || nj[k] >= h) continue;
        const std::uint8_t other = labels.at(ni[k], nj[k]);
        if (other != kTieLabel && other != label) {
          is_tie_or_change[static_cast<std::size_t>(j) * w + i] = 1;
          change_cells.emplace_back(i, j);
          break;
        }
      }
    }
  }
  report.boundary_cells = change_cells.size();

  const auto polylines = sample_curve_polylines(curve, samples_per_piece, labels.bbox, true);
  std::vector<Point> samples;
  for (const auto& line : polylines) samples.insert(samples.end(), line.begin(), line.end());
  report.curve_samples = samples.size();
  if (samples.empty()) {
    report.empty_curve = true;
    return report;  // vacuously passing; zero matched cells
  }

  // Curve samples vs the nearest tie/label-change cell.
  for (const Point& z : samples) {
    const int i0 = std::clamp(static_cast<int>((z.x - labels.bbox.xmin) / labels.cell_dx()), 0,
                              w - 1);
    const int j0 = std::clamp(static_cast<int>((z.y - labels.bbox.ymin) / labels.cell_dy()), 0,
                              h - 1);
    const double d = nearest_marked_cell(labels, is_tie_or_change, z, i0, j0);
    report.max_curve_to_boundary_cells =
        std::max(report.max_curve_to_boundary_cells, d / diagonal);
  }

  // Label-change cells vs the nearest curve sample, bucketed by cell.
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(w) * h);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const int i = std::clamp(static_cast<int>((samples[k].x - labels.bbox.xmin) / labels.cell_dx()),
                             0, w - 1);
    const int j = std::clamp(static_cast<int>((samples[k].y - labels.bbox.ymin) / labels.cell_dy()),
                             0, h - 1);
    buckets[static_cast<std::size_t>(j) * w + i].push_back(static_cast<int>(k));
  }
  const double step = std::min(labels.cell_dx(), labels.cell_dy());
  for (const auto& [ci, cj] : change_cells) {
    // Cells hugging the border can track the zero set past the clipped end
    // of the curve when it exits at a shallow angle; they measure clipping,
    // not agreement.
    if (ci < 2 || ci >= w - 2 || cj < 2 || cj >= h - 2) continue;
    const Point center = labels.cell_center(ci, cj);
    double best = std::numeric_limits<double>::infinity();
    const int max_ring = std::max(w, h);
    for (int r = 0; r <= max_ring; ++r) {
      if (best < std::numeric_limits<double>::infinity() && (r - 1) * step > best) break;
      for (int j = cj - r; j <= cj + r; ++j) {
        for (int i = ci - r; i <= ci + r; ++i) {
          if (i < 0 || i >= w || j < 0 || j >= h) continue;
          if (std::abs(i - ci) != r && std::abs(j - cj) != r) continue;
          for (int k : buckets[static_cast<std::size_t>(j) * w + i]) {
            best = std::min(best, distance(center, samples[static_cast<std::size_t>(k)]));
          }
        }
      }
    }
    report.max_boundary_to_curve_cells =
        std::max(report.max_boundary_to_curve_cells, best / diagonal);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Raster files.
// ---------------------------------------------------------------------------

void emit_pgm(const LabelRaster& labels, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_pgm: cannot open " + path);
  out << "P5\n" << labels.width << " " << labels.height << "\n255\n";
  // World y points up; PGM rows run top to bottom.
  for (int j = labels.height - 1; j >= 0; --j) {
    out.write(reinterpret_cast<const char*>(&labels.cells[static_cast<std::size_t>(j) *
                                                          labels.width]),
              labels.width);
  }
  if (!out) throw IoError("emit_pgm: write failed for " + path);
}

LabelRaster load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_pgm: cannot open " + path);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  if (magic != "P5" || w < 1 || h < 1 || maxval != 255) {
    throw IoError("load_pgm: unsupported header in " + path);
  }
  in.get();  // single whitespace after maxval
  LabelRaster out;
  out.width = w;
  out.height = h;
  out.bbox = {0.0, 0.0, static_cast<double>(w), static_cast<double>(h)};
  out.cells.assign(static_cast<std::size_t>(w) * h, 0);
  for (int j = h - 1; j >= 0; --j) {
    in.read(reinterpret_cast<char*>(&out.cells[static_cast<std::size_t>(j) * w]), w);
  }
  if (!in) throw IoError("load_pgm: truncated data in " + path);
  return out;
}

void emit_angf(const DistanceRaster& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_angf: cannot open " + path);
  out.write("ANGF", 4);
  const std::uint32_t w = static_cast<std::uint32_t>(field.width);
  const std::uint32_t h = static_cast<std::uint32_t>(field.height);
  out.write(reinterpret_cast<const char*>(&w), 4);
  out.write(reinterpret_cast<const char*>(&h), 4);
  const double box[4] = {field.bbox.xmin, field.bbox.ymin, field.bbox.xmax, field.bbox.ymax};
  out.write(reinterpret_cast<const char*>(box), sizeof box);
  for (const double v : field.cells) {
    const float f = static_cast<float>(v);
    out.write(reinterpret_cast<const char*>(&f), 4);
  }
  if (!out) throw IoError("emit_angf: write failed for " + path);
}

DistanceRaster load_angf(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_angf: cannot open " + path);
  char magic[4] = {};
  in.read(magic, 4);
  if (std::memcmp(magic, "ANGF", 4) != 0) throw IoError("load_angf: bad magic in " + path);
  std::uint32_t w = 0, h = 0;
  in.read(reinterpret_cast<char*>(&w), 4);
  in.read(reinterpret_cast<char*>(&h), 4);
  double box[4] = {};
  in.read(reinterpret_cast<char*>(box), sizeof box);
  if (!in || w < 2 || h < 2) throw IoError("load_angf: bad header in " + path);
  DistanceRaster out;
  out.width = static_cast<int>(w);
  out.height = static_cast<int>(h);
  out.bbox = {box[0], box[1], box[2], box[3]};
  out.cells.assign(static_cast<std::size_t>(w) * h, 0.0);
  for (auto& v : out.cells) {
    float f = 0.0f;
    in.read(reinterpret_cast<char*>(&f), 4);
    v = f;
  }
  if (!in) throw IoError("load_angf: truncated data in " + path);
  return out;
}

}  // namespace rayvor
