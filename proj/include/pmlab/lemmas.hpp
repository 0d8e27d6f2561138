#pragma once

#include <string>
#include <vector>

#include "pmlab/model.hpp"

namespace pmlab {

// Convolution-type weighted inequalities: each id names one space-time (or
// time-only) integral of a Gaussian kernel against an algebraic or Gaussian
// source, bounded by a weight on the left-hand ray. Names describe the time
// window and source placement rather than any external numbering.
enum class ConvId {
  early_window,      // s in [0, sqrt(t)], kernel power -(1+alpha), cross-ray source
  single_slice,      // single y integral at s = sqrt(t)
  mid_gauss,         // s in [sqrt(t), t], Gaussian source on the other ray
  same_ray_sharp,    // s in [sqrt(t), t/2], Gaussian source on the same ray
  mid_cross,         // s in [sqrt(t), t/2], algebraic cross-ray source
  same_ray_log_early,  // s in [0, t/2], same-ray source; log factor at beta = 5/4
  same_ray_log_late,   // s in [t/2, t], same-ray source; log factor at alpha = 1
  cross_ray_log_early,  // s in [0, t/2], cross-ray source + inter-ray indicator term
  cross_ray_log_late,   // s in [t/2, t], cross-ray source + inter-ray indicator term
  boundary_time,     // time-only kernel against (s+1)^(-21/8)
  boundary_moving,   // time-only x-derivative kernel against a decaying jump
  memory_decay,      // exponential memory kernel preserves (s+1)^(-alpha) decay
  memory_early,      // early half of the memory kernel is exponentially small
};

std::string conv_name(ConvId id);

struct ConvParams {
  double lambda = 1.0;
  double lambda_p = -1.0;
  double mu = 4.0;
  double alpha = 0.0;
  double beta = 0.0;
  double K = 5.0;  // inter-ray indicator margin (cross_ray_log_* only)
  std::vector<double> times = {4.0, 16.0, 64.0, 256.0, 1024.0};
  std::vector<double> x_offsets = {0.0, -1.0, 1.0, -3.0, 3.0, -8.0, 8.0};  // in sqrt(t+1) units
  double rel_tol = 1e-6;
};

struct SupSample {
  double x = 0.0, t = 0.0, lhs = 0.0, rhs = 0.0;
};

// One inequality check: per-time sup of lhs/rhs over the x sample set, the
// decade rule (each sup at most 1.5x the previous time's sup, once nonzero),
// and the location of the worst ratio.
struct CheckReport {
  std::string name;
  std::vector<double> times;
  std::vector<double> sup_ratio;
  std::vector<SupSample> worst;
  double overall = 0.0;
  bool decade_ok = true;
  bool passed = false;
};

// Evaluates the inequality named by `id` on the sample grid. Throws
// std::invalid_argument when the parameters violate the inequality's
// hypotheses (wrong ray relation, out-of-range exponents).
CheckReport check_convolution(ConvId id, const ConvParams& p);

// Log-threshold discrimination for the borderline exponent of the two
// log-bearing windows: the sup ratio against the bare algebraic bound must
// grow across the last time decade while the log-corrected bound stays flat.
struct LogSplit {
  std::vector<double> times;
  std::vector<double> sup_plain;     // against the bound without the log factor
  std::vector<double> sup_with_log;  // against the bound with the log factor
  double growth_plain = 0.0;         // last-decade sup growth, plain bound
  double growth_with_log = 0.0;
  bool log_detected = false;         // growth_plain > 1.12 and growth_with_log < 1.10
};
LogSplit check_log_threshold(ConvId id, const ConvParams& p);

// Pointwise product bounds f g <= C h between the weight families, indexed
// as rows 1..12, plus the inter-ray indicator product bound.
struct ProductParams {
  double lambda = 1.0;
  double lambda_p = -1.0;
  double mu = 4.0;
  double alpha = 1.0;
  double beta = 1.0;
  double big_m = 4.0;  // free decay order of the widened-Gaussian bound (row 4)
  double K = 5.0;      // indicator margin (indicator bound only)
  std::vector<double> times = {4.0, 16.0, 64.0, 256.0, 1024.0};
  int n_grid = 4001;
  double pad_sigmas = 12.0;
};
CheckReport check_product_row(int row, const ProductParams& p);
CheckReport check_indicator_product(const ProductParams& p);

// Canonical battery over pinned parameter choices; every report must pass.
std::vector<CheckReport> run_inequality_battery(double rel_tol = 1e-6);

}  // namespace pmlab
