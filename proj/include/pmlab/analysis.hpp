#pragma once

#include <string>
#include <vector>

#include "pmlab/model.hpp"

namespace pmlab {

// Least-squares algebraic decay fit of log|value| against log(t+1) over a
// time window. Samples with |value| below `floor` are dropped.
struct DecayFit {
  double exponent = 0.0;   // slope in log(t+1)
  double log_prefactor = 0.0;
  double r2 = 0.0;         // coefficient of determination
  int n_points = 0;
};

// Throws std::invalid_argument if fewer than 5 usable samples fall inside
// [t_min, t_max].
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& value,
                   double t_min, double t_max, double floor = 1e-300);

// Linear fit of log|value| against t over the same window (exponential decay
// hypothesis), reported with the same statistics.
DecayFit fit_exponential(const std::vector<double>& t, const std::vector<double>& value,
                         double t_min, double t_max, double floor = 1e-300);

// Long-time classification of a body-velocity history. Compares the r^2 of
// the algebraic and exponential fits with a discrimination margin; when
// algebraic, checks the fitted exponent against the rate predicted by the
// conserved masses: -3/2 when M1^2 != M2^2, faster (at most -7/4 modulo the
// fit tolerance) when M1 = M2 != 0. A series whose max modulus is below
// `zero_floor` is classified as below_floor (e.g. a mirror-symmetric run).
struct DichotomyVerdict {
  enum class Kind { algebraic, exponential, below_floor, ambiguous };
  Kind kind = Kind::ambiguous;
  double exponent = 0.0;
  double r2_algebraic = 0.0;
  double r2_exponential = 0.0;
  double expected_exponent = 0.0;
  bool matches_theory = false;
  // eventual sign of V over the tail of the window; 0 when below floor
  int eventual_sign = 0;
};

DichotomyVerdict classify_dichotomy(const std::vector<double>& t,
                                    const std::vector<double>& V, const MassPair& masses,
                                    double t_min, double t_max, double exponent_tol = 0.15,
                                    double r2_margin = 0.05, double zero_floor = 1e-12);

// One row of the decay-rate summary: a named series, the window, the fitted
// exponent and the expected one.
struct DecayRow {
  std::string series;
  std::string location;
  double expected = 0.0;
  double fitted = 0.0;
  double r2 = 0.0;
  bool within(double tol) const;
};

// Ratio consistency of a measured series against a model series over a
// window: reports min and max of measured/model.
struct RatioRange {
  double lo = 0.0;
  double hi = 0.0;
};
RatioRange ratio_range(const std::vector<double>& t, const std::vector<double>& measured,
                       const std::vector<double>& model, double t_min, double t_max);

}  // namespace pmlab
