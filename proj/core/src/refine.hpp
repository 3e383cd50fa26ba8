#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace rayvor::detail {

struct ParamInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Locates the predicate transition between a true parameter and a false one
/// by bisection; returns the boundary on the true side within tol.
inline double refine_transition(const std::function<bool(double)>& pred, double t_true,
                                double t_false, double tol) {
  while (std::abs(t_false - t_true) > tol) {
    const double mid = 0.5 * (t_true + t_false);
    if (mid == t_true || mid == t_false) break;
    if (pred(mid)) {
      t_true = mid;
    } else {
      t_false = mid;
    }
  }
  return t_true;
}

/// Maximal sub-intervals of [lo, hi] on which pred holds, estimated from
/// n+1 uniform samples with boundaries refined by bisection to tol.
inline std::vector<ParamInterval> find_true_intervals(const std::function<bool(double)>& pred,
                                                      double lo, double hi, int n, double tol) {
  std::vector<ParamInterval> out;
  if (hi < lo) return out;
  if (hi == lo) {
    if (pred(lo)) out.push_back({lo, lo});
    return out;
  }
  if (n < 1) n = 1;
  const double step = (hi - lo) / n;
  bool prev = pred(lo);
  double prev_t = lo;
  double open_lo = prev ? lo : 0.0;
  bool open = prev;
  for (int i = 1; i <= n; ++i) {
    const double t = (i == n) ? hi : lo + i * step;
    const bool cur = pred(t);
    if (cur && !prev) {
      open_lo = refine_transition(pred, t, prev_t, tol);
      open = true;
    } else if (!cur && prev) {
      out.push_back({open_lo, refine_transition(pred, prev_t, t, tol)});
      open = false;
    }
    prev = cur;
    prev_t = t;
  }
  if (open) out.push_back({open_lo, hi});
  return out;
}

}  // namespace rayvor::detail
