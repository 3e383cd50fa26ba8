// Calibration for the hyperbola parameter h against the constant base-angle
// difference, measured with nothing but triangle_base_angles on the raw
// curve x*y = h in the canonical configuration p = (h, 1), q = (-h, -1).
// The committed table (docs/hdelta_calibration.txt) pins the relation the
// locus constructor relies on:
//
//   on the half beyond the site (u > 0):  delta = pi - 2*atan(1/h) = 2*atan(h)
//   on the half before it       (u < 0):  delta = pi - 2*atan(h)
//
// equivalently h = tan(delta/2) on the far half, which is why the exact
// level set of one signed delta glues halves of the h and 1/h curves.

#include <cmath>
#include <cstdio>
#include <string>

#include "rayvor/geometry.hpp"
#include "rayvor/io.hpp"

using namespace rayvor;

namespace {

struct HalfMeasurement {
  double mean = 0.0;
  double spread = 0.0;
};

HalfMeasurement measure_half(double h, bool beyond) {
  const Point p{h, 1.0};
  const Point q{-h, -1.0};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  const int n = 64;
  for (int k = 1; k <= n; ++k) {
    const double u = (beyond ? 1.0 : -1.0) * 5.0 * k / n;
    const Point z{h * std::exp(u), std::exp(-u)};
    const auto angles = triangle_base_angles(p, q, z);
    const double delta = angles.at_p - angles.at_q;
    lo = std::min(lo, delta);
    hi = std::max(hi, delta);
    sum += delta;
  }
  return {sum / n, hi - lo};
}

}  // namespace

int main(int argc, char** argv) {
  std::string out;
  out += "h-delta calibration: base-angle difference along x*y = h with p=(h,1), q=(-h,-1)\n";
  out += "columns: h | measured delta (u>0 half) | pi-2*atan(1/h) | spread | measured delta "
         "(u<0 half) | pi-2*atan(h) | spread | tan(measured/2)\n";
  char line[256];
  for (const double h : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 10.0, 20.0}) {
    const auto far_half = measure_half(h, true);
    const auto near_half = measure_half(h, false);
    std::snprintf(line, sizeof line,
                  "h=%-6g  far=%.15f  expect=%.15f  spread=%.2e  near=%.15f  expect=%.15f  "
                  "spread=%.2e  tan(far/2)=%.15f\n",
                  h, far_half.mean, kPi - 2.0 * std::atan(1.0 / h), far_half.spread,
                  near_half.mean, kPi - 2.0 * std::atan(h), near_half.spread,
                  std::tan(0.5 * far_half.mean));
    out += line;
  }
  out += "conclusion: on the half beyond the site, delta = 2*atan(h), i.e. h = tan(delta/2);\n";
  out += "the complementary half carries the supplementary constant pi - 2*atan(h).\n";

  if (argc > 1) {
    write_text_file(argv[1], out);
  } else {
    std::fputs(out.c_str(), stdout);
  }
  return 0;
}
