#include "pmlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmlab {

namespace {

DecayFit fit_lin(const std::vector<double>& t, const std::vector<double>& value, double t_min,
                 double t_max, double floor, bool log_abscissa) {
  if (t.size() != value.size())
    throw std::invalid_argument("fit: time and value series differ in length");
  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] < t_min || t[j] > t_max) continue;
    const double a = std::abs(value[j]);
    if (!(a > floor) || !std::isfinite(a)) continue;
    xs.push_back(log_abscissa ? std::log(t[j] + 1.0) : t[j]);
    ys.push_back(std::log(a));
  }
  if (xs.size() < 5)
    throw std::invalid_argument("fit: fewer than 5 usable samples in the window");
  const auto n = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    sx += xs[j];
    sy += ys[j];
    sxx += xs[j] * xs[j];
    sxy += xs[j] * ys[j];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit: degenerate abscissa");
  DecayFit f;
  f.exponent = (n * sxy - sx * sy) / denom;
  f.log_prefactor = (sy - f.exponent * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ymean = sy / n;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double pred = f.log_prefactor + f.exponent * xs[j];
    ss_res += (ys[j] - pred) * (ys[j] - pred);
    ss_tot += (ys[j] - ymean) * (ys[j] - ymean);
  }
  f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  f.n_points = int(xs.size());
  return f;
}

}  // namespace

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& value,
                   double t_min, double t_max, double floor) {
  return fit_lin(t, value, t_min, t_max, floor, true);
}

DecayFit fit_exponential(const std::vector<double>& t, const std::vector<double>& value,
                         double t_min, double t_max, double floor) {
  return fit_lin(t, value, t_min, t_max, floor, false);
}

DichotomyVerdict classify_dichotomy(const std::vector<double>& t,
                                    const std::vector<double>& V, const MassPair& masses,
                                    double t_min, double t_max, double exponent_tol,
                                    double r2_margin, double zero_floor) {
  DichotomyVerdict dv;
  double vmax = 0.0;
  for (std::size_t j = 0; j < V.size(); ++j)
    if (t[j] >= t_min && t[j] <= t_max) vmax = std::max(vmax, std::abs(V[j]));
  if (vmax < zero_floor) {
    dv.kind = DichotomyVerdict::Kind::below_floor;
    dv.matches_theory = true;
    return dv;
  }

  const DecayFit alg = fit_decay(t, V, t_min, t_max);
  const DecayFit expo = fit_exponential(t, V, t_min, t_max);
  dv.exponent = alg.exponent;
  dv.r2_algebraic = alg.r2;
  dv.r2_exponential = expo.r2;

  if (alg.r2 > expo.r2 + r2_margin)
    dv.kind = DichotomyVerdict::Kind::algebraic;
  else if (expo.r2 > alg.r2 + r2_margin)
    dv.kind = DichotomyVerdict::Kind::exponential;
  else
    dv.kind = DichotomyVerdict::Kind::ambiguous;

  const double mass_gap = masses.M1 * masses.M1 - masses.M2 * masses.M2;
  if (mass_gap != 0.0)
    dv.expected_exponent = -1.5;
  else
    dv.expected_exponent = -1.75;

  if (dv.kind == DichotomyVerdict::Kind::algebraic) {
    if (mass_gap != 0.0)
      dv.matches_theory = std::abs(dv.exponent - dv.expected_exponent) <= exponent_tol;
    else
      // the generic-rate lower bound no longer holds: require strictly faster
      // decay than -3/2 by the tolerance
      dv.matches_theory = dv.exponent <= -1.5 - exponent_tol / 1.5;
  }

  // eventual sign over the last quarter of the window
  const double t_tail = t_max - 0.25 * (t_max - t_min);
  int sign = 0;
  bool consistent = true;
  for (std::size_t j = 0; j < V.size(); ++j) {
    if (t[j] < t_tail || t[j] > t_max) continue;
    const int s = V[j] > 0.0 ? 1 : (V[j] < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (sign == 0)
      sign = s;
    else if (sign != s)
      consistent = false;
  }
  dv.eventual_sign = consistent ? sign : 0;
  return dv;
}

bool DecayRow::within(double tol) const { return std::abs(fitted - expected) <= tol; }

RatioRange ratio_range(const std::vector<double>& t, const std::vector<double>& measured,
                       const std::vector<double>& model, double t_min, double t_max) {
  if (t.size() != measured.size() || t.size() != model.size())
    throw std::invalid_argument("ratio_range: series differ in length");
  RatioRange rr{1e300, -1e300};
  int n = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] < t_min || t[j] > t_max) continue;
    if (model[j] == 0.0) continue;
    const double r = measured[j] / model[j];
    rr.lo = std::min(rr.lo, r);
    rr.hi = std::max(rr.hi, r);
    ++n;
  }
  if (n == 0) throw std::invalid_argument("ratio_range: no usable samples in the window");
  return rr;
}

}  // namespace pmlab
