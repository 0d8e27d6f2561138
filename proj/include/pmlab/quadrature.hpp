#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pmlab {

// Composite Simpson rule with n panels (2n+1 evaluations).
template <class F>
double simpson(F&& f, double a, double b, int panels) {
  if (panels < 1) throw std::invalid_argument("simpson: need at least one panel");
  if (!(b >= a)) throw std::invalid_argument("simpson: inverted interval");
  if (a == b) return 0.0;
  const int m = 2 * panels;
  const double h = (b - a) / m;
  double odd = 0.0, even = 0.0;
  for (int j = 1; j < m; j += 2) odd += f(a + j * h);
  for (int j = 2; j < m; j += 2) even += f(a + j * h);
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

// Simpson over a list of breakpoints, `panels_per_segment` panels in each segment.
template <class F>
double simpson_segmented(F&& f, const std::vector<double>& breaks, int panels_per_segment) {
  if (breaks.size() < 2) throw std::invalid_argument("simpson_segmented: need two breakpoints");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    total += simpson(f, breaks[i], breaks[i + 1], panels_per_segment);
  }
  return total;
}

struct QuadResult {
  double value = 0.0;
  bool converged = false;
  int panels = 0;
};

// Panel doubling until two successive Simpson values agree to
// max(rel_tol * |value|, abs_floor).
template <class F>
QuadResult integrate_to_tol(F&& f, double a, double b, double rel_tol,
                            int initial_panels = 64, int max_doublings = 14,
                            double abs_floor = 0.0) {
  double prev = simpson(f, a, b, initial_panels);
  int panels = initial_panels;
  for (int k = 0; k < max_doublings; ++k) {
    panels *= 2;
    const double cur = simpson(f, a, b, panels);
    if (std::abs(cur - prev) <= std::max(rel_tol * std::abs(cur), abs_floor))
      return {cur, true, panels};
    prev = cur;
  }
  return {prev, false, panels};
}

}  // namespace pmlab
