#include "pmlab/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pmlab/quadrature.hpp"

namespace pmlab {

namespace {

constexpr double k_pi = 3.1415926535897932;

// ==== weight shorthands =====================================================

double w_poly(double x, double t, double lam, double a) {
  const double z = x - lam * (t + 1.0);
  return std::pow(z * z + (t + 1.0), -0.5 * a);
}
double w_74(double x, double t, double lam) { return w_poly(x, t, lam, 1.75); }
double w_bar(double x, double t, double lam) {
  const double z = std::abs(x - lam * (t + 1.0));
  return std::pow(std::pow(z, 7) + std::pow(t + 1.0, 5), -0.25);
}
double w_til(double x, double t, double lam) {
  const double z = std::abs(x - lam * (t + 1.0));
  return std::pow(z * z * z + (t + 1.0) * (t + 1.0), -0.5);
}
double w_gauss(double x, double t, double lam, double a, double mu) {
  const double z = x - lam * (t + 1.0);
  return std::pow(t + 1.0, -0.5 * a) * std::exp(-z * z / (mu * (t + 1.0)));
}

bool in_band(double x, double t, double lam, double lam_p, double K) {
  const double T = t + 1.0;
  const double lo = std::min(lam, lam_p) * T + K * std::sqrt(T);
  const double hi = std::max(lam, lam_p) * T - K * std::sqrt(T);
  return lo <= x && x <= hi;
}

// ==== adaptive quadrature helpers ===========================================

template <class F>
double adaptive_breaks(const F& f, std::vector<double> breaks, double rel_tol, const char* what) {
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  if (breaks.size() < 2) return 0.0;
  double prev = simpson_segmented(f, breaks, 8);
  for (int panels = 16; panels <= 4096; panels *= 2) {
    const double cur = simpson_segmented(f, breaks, panels);
    if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300)) return cur;
    prev = cur;
  }
  throw std::runtime_error(std::string(what) + ": quadrature did not converge");
}

template <class F>
double adaptive_interval(const F& f, double a, double b, double rel_tol, const char* what,
                         int initial = 64) {
  const QuadResult r = integrate_to_tol(f, a, b, rel_tol, initial, 12, 1e-300);
  if (!r.converged) throw std::runtime_error(std::string(what) + ": quadrature did not converge");
  return r.value;
}

// y integral of exp(-(x - y - lam D)^2 / (mu D)) src(y) with breakpoints at
// the source core (center, scale) inside the kernel window
template <class Src>
double inner_gauss(double x, double lam, double mu, double D, double src_center, double src_scale,
                   const Src& src, double rel_tol) {
  const double kc = x - lam * D;
  const double w = 10.0 * std::sqrt(mu * D);
  std::vector<double> breaks = {kc - w, kc + w};
  static const double offs[] = {-30.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 30.0};
  for (double o : offs) {
    const double y = src_center + o * src_scale;
    if (y > kc - w && y < kc + w) breaks.push_back(y);
  }
  auto f = [&](double y) {
    const double u = kc - y;
    return std::exp(-u * u / (mu * D)) * src(y);
  };
  return adaptive_breaks(f, std::move(breaks), rel_tol, "inner");
}

// ==== left-hand sides =======================================================

double lhs_conv(ConvId id, double x, double t, const ConvParams& p) {
  const double lam = p.lambda, lp = p.lambda_p, mu = p.mu, al = p.alpha, be = p.beta;
  const double tol = p.rel_tol;

  switch (id) {
    case ConvId::early_window: {
      auto f = [&](double s) {
        const double D = t - s;
        auto src = [&](double y) { return std::pow(s + 1.0, -0.5 * be) * w_74(y, s, lp); };
        return std::pow(D, -1.0 - al) *
               inner_gauss(x, lam, mu, D, lp * (s + 1.0), std::sqrt(s + 1.0), src, tol);
      };
      return adaptive_interval(f, 0.0, std::sqrt(t), tol, "early-window");
    }
    case ConvId::single_slice: {
      const double s = std::sqrt(t), D = t - s;
      auto src = [&](double y) { return std::pow(s + 1.0, -0.5 * be) * w_74(y, s, lp); };
      return std::pow(D, -0.5 - al) *
             inner_gauss(x, lam, mu, D, lp * (s + 1.0), std::sqrt(s + 1.0), src, tol);
    }
    case ConvId::mid_gauss: {
      // s = t - sigma^2 absorbs the (t-s)^(-1/2) kernel factor exactly
      auto g = [&](double sig) {
        if (sig <= 0.0) return 0.0;
        const double s = t - sig * sig, D = sig * sig;
        auto src = [&](double y) { return w_gauss(y, s, lp, al, mu); };
        return 2.0 * inner_gauss(x, lam, mu, D, lp * (s + 1.0), std::sqrt(mu * (s + 1.0)), src, tol);
      };
      return adaptive_interval(g, 0.0, std::sqrt(t - std::sqrt(t)), tol, "mid-gaussian");
    }
    case ConvId::same_ray_sharp: {
      auto f = [&](double s) {
        const double D = t - s;
        auto src = [&](double y) { return w_gauss(y, s, lam, al, mu); };
        return inner_gauss(x, lam, mu, D, lam * (s + 1.0), std::sqrt(mu * (s + 1.0)), src, tol) / D;
      };
      return adaptive_interval(f, std::sqrt(t), 0.5 * t, tol, "same-ray-sharpened");
    }
    case ConvId::mid_cross: {
      auto f = [&](double s) {
        const double D = t - s;
        auto src = [&](double y) { return std::pow(s + 1.0, -11.0 / 8.0) * w_74(y, s, lp); };
        return std::pow(D, -0.5 - al) *
               inner_gauss(x, lam, mu, D, lp * (s + 1.0), std::sqrt(s + 1.0), src, tol);
      };
      return adaptive_interval(f, std::sqrt(t), 0.5 * t, tol, "mid-cross");
    }
    case ConvId::same_ray_log_early:
    case ConvId::cross_ray_log_early: {
      const double ray = (id == ConvId::same_ray_log_early) ? lam : lp;
      auto f = [&](double s) {
        const double D = t - s;
        auto src = [&](double y) { return std::pow(s + 1.0, -0.5 * be) * w_74(y, s, ray); };
        return std::pow(D + 1.0, -0.5 * al) / D *
               inner_gauss(x, lam, mu, D, ray * (s + 1.0), std::sqrt(s + 1.0), src, tol);
      };
      return adaptive_interval(f, 0.0, 0.5 * t, tol, "log-window-early");
    }
    case ConvId::same_ray_log_late:
    case ConvId::cross_ray_log_late: {
      const double ray = (id == ConvId::same_ray_log_late) ? lam : lp;
      // s = t - sigma^2 leaves an integrable sigma^(-1) net of the y mass
      auto g = [&](double sig) {
        const double s = t - sig * sig, D = sig * sig;
        if (sig < 1e-9 * std::sqrt(t))
          return 2.0 * std::sqrt(k_pi * mu) * std::pow(t + 1.0, -0.5 * be) * w_74(x, t, ray);
        auto src = [&](double y) { return std::pow(s + 1.0, -0.5 * be) * w_74(y, s, ray); };
        return 2.0 * std::pow(1.0 + D, -0.5 * al) / sig *
               inner_gauss(x, lam, mu, D, ray * (s + 1.0), std::sqrt(s + 1.0), src, tol);
      };
      return adaptive_interval(g, 0.0, std::sqrt(0.5 * t), tol, "log-window-late");
    }
    case ConvId::boundary_time: {
      const double smax = std::sqrt(t - std::sqrt(t));
      auto g = [&](double sig) {
        if (sig <= 0.0) return (x == 0.0) ? 2.0 * std::pow(t + 1.0, -21.0 / 8.0) : 0.0;
        const double u = x - lam * sig * sig;
        return 2.0 * std::exp(-u * u / (mu * sig * sig)) *
               std::pow(t - sig * sig + 1.0, -21.0 / 8.0);
      };
      std::vector<double> breaks = {0.0, smax};
      for (int k = 1; k <= 6; ++k) breaks.push_back(smax * std::pow(0.5, k));
      if (lam != 0.0 && x / lam > 0.0) {
        const double ss = std::sqrt(x / lam), bw = std::sqrt(mu) / (2.0 * std::abs(lam));
        for (double o : {-3.0, -1.0, 1.0, 3.0}) {
          const double v = ss + o * bw;
          if (v > 0.0 && v < smax) breaks.push_back(v);
        }
        if (ss < smax) breaks.push_back(ss);
      }
      return adaptive_breaks(g, std::move(breaks), tol, "boundary-time");
    }
    case ConvId::boundary_moving: {
      const double smax = std::sqrt(t - std::sqrt(t));
      auto g = [&](double sig) {
        if (sig <= 0.0) return 0.0;
        const double u = x - lam * sig * sig;
        const double e = std::exp(-u * u / (mu * sig * sig));
        if (e == 0.0) return 0.0;
        return -(4.0 / mu) * u / (sig * sig) * e * std::pow(t - sig * sig + 1.0, -9.0 / 4.0);
      };
      std::vector<double> breaks = {0.0, smax};
      for (int k = 1; k <= 6; ++k) breaks.push_back(smax * std::pow(0.5, k));
      if (x / lam > 0.0) {
        const double ss = std::sqrt(x / lam), bw = std::sqrt(mu) / (2.0 * std::abs(lam));
        for (double o : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
          const double v = ss + o * bw;
          if (v > 0.0 && v < smax) breaks.push_back(v);
        }
      }
      return std::abs(adaptive_breaks(g, std::move(breaks), tol, "boundary-moving"));
    }
    case ConvId::memory_decay: {
      auto f = [&](double s) {
        return std::exp(-(t - s) / mu) * std::pow(s + 1.0, -al) * w_74(x, s, lam);
      };
      std::vector<double> breaks = {0.0, t};
      for (double m : {8.0, 4.0, 2.0, 1.0}) {
        const double v = t - m * mu;
        if (v > 0.0) breaks.push_back(v);
      }
      breaks.push_back(0.5 * t);
      return adaptive_breaks(f, std::move(breaks), tol, "memory-decay");
    }
    case ConvId::memory_early: {
      auto f = [&](double s) { return std::exp(-(t - s) / mu) * w_74(x, s, lam); };
      return adaptive_breaks(f, {0.0, 0.25 * t, 0.5 * t}, tol, "memory-early");
    }
  }
  throw std::logic_error("unreachable");
}

// ==== right-hand sides ======================================================

// with_log: -1 = never apply the log factor, 0 = apply when the exponent sits
// at the threshold (the inequality as stated), 1 = always apply
double rhs_conv(ConvId id, double x, double t, const ConvParams& p, int with_log) {
  const double lam = p.lambda, lp = p.lambda_p, mu = p.mu, al = p.alpha, be = p.beta;
  const double T = t + 1.0;
  auto logf = [&](bool at_threshold) {
    if (with_log == -1) return 1.0;
    if (with_log == 1) return std::log(t + 2.0);
    return at_threshold ? std::log(t + 2.0) : 1.0;
  };
  switch (id) {
    case ConvId::early_window:
    case ConvId::single_slice:
      return std::pow(T, -al - (be - 0.75) / 4.0) * w_74(x, t, lam);
    case ConvId::mid_gauss:
      return w_poly(x, t, lam, 0.5 * (al - 1.0));
    case ConvId::same_ray_sharp:
      return w_gauss(x, t, lam, 0.5 * (al + 1.0), mu);
    case ConvId::mid_cross:
      return std::pow(T, -al) * w_74(x, t, lam);
    case ConvId::same_ray_log_early: {
      const double g1 = al + std::min(be, 1.25) - 1.0;
      return logf(be == 1.25) * std::pow(T, -0.5 * g1) * w_74(x, t, lam);
    }
    case ConvId::same_ray_log_late: {
      const double g2 = std::min(al, 1.0) + be - 1.0;
      return logf(al == 1.0) * std::pow(T, -0.5 * g2) * w_74(x, t, lam);
    }
    case ConvId::cross_ray_log_early: {
      const double g1 = al + std::min(be, 1.25) - 1.0;
      const double g1p = al + std::min(be, 2.0) - 1.0;
      double v = logf(be == 1.25) * std::pow(T, -0.5 * g1) * w_74(x, t, lam) +
                 std::pow(T, -0.5 * g1p) * w_74(x, t, lp);
      if (in_band(x, t, lam, lp, p.K)) {
        v += std::pow(std::abs(x - lam * T), -0.5 * std::min(be, 2.75) - 0.375) *
             std::pow(std::abs(x - lp * T), -0.5 * al - 0.5);
      }
      return v;
    }
    case ConvId::cross_ray_log_late: {
      const double g2 = std::min(al, 1.0) + be - 1.0;
      double v = logf(al == 1.0) * std::pow(T, -0.5 * g2) * (w_74(x, t, lam) + w_74(x, t, lp));
      if (in_band(x, t, lam, lp, p.K)) {
        v += std::pow(std::abs(x - lam * T), -0.5 * be - 0.375) *
             std::pow(std::abs(x - lp * T), -0.5 * std::min(al, 1.0) - 0.5);
      }
      return v;
    }
    case ConvId::boundary_time:
    case ConvId::boundary_moving:
      return w_bar(x, t, lam);
    case ConvId::memory_decay:
      return std::pow(T, -al) * w_74(x, t, lam);
    case ConvId::memory_early:
      // the bound promises some exponential rate, not a specific one; checking
      // it numerically needs a concrete rate strictly slower than the kernel's
      // own 1/(2 mu), otherwise the moving weight's half-time samples swamp
      // the comparison with a polynomially growing ratio
      return std::exp(-t / (4.0 * mu)) * w_74(x, t, lam);
  }
  throw std::logic_error("unreachable");
}

// ==== hypotheses and sampling ===============================================

double min_time(const ConvParams& p) {
  return *std::min_element(p.times.begin(), p.times.end());
}

void validate_conv(ConvId id, const ConvParams& p) {
  if (!(p.mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (p.times.size() < 2) throw std::invalid_argument("need at least two times");
  for (double t : p.times)
    if (!(t >= 4.0)) throw std::invalid_argument("times must be >= 4");
  const bool distinct = p.lambda != p.lambda_p;
  switch (id) {
    case ConvId::early_window:
      if (!distinct) throw std::invalid_argument("rays must differ");
      if (!(p.alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
      if (!(p.beta >= 0.0 && p.beta < 1.25))
        throw std::invalid_argument("beta must be in [0, 5/4)");
      break;
    case ConvId::single_slice:
      if (!(p.alpha >= 0.0 && p.beta >= 0.0))
        throw std::invalid_argument("alpha and beta must be >= 0");
      break;
    case ConvId::mid_gauss:
      if (!distinct) throw std::invalid_argument("rays must differ");
      if (!(p.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
      break;
    case ConvId::same_ray_sharp:
      if (!(p.alpha > 3.0)) throw std::invalid_argument("alpha must exceed 3");
      break;
    case ConvId::mid_cross:
      if (!distinct) throw std::invalid_argument("rays must differ");
      if (!(p.alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
      break;
    case ConvId::same_ray_log_early:
    case ConvId::same_ray_log_late:
      if (!(p.alpha >= 0.0 && p.beta >= 0.0))
        throw std::invalid_argument("alpha and beta must be >= 0");
      break;
    case ConvId::cross_ray_log_early:
    case ConvId::cross_ray_log_late:
      if (!distinct) throw std::invalid_argument("rays must differ");
      if (!(p.alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
      if (!(p.beta >= 0.0 && p.beta <= 3.5) || p.beta == 2.0)
        throw std::invalid_argument("beta must be in [0, 7/2] and not 2");
      if (!(p.K > 0.0)) throw std::invalid_argument("K must be positive");
      break;
    case ConvId::boundary_time:
      break;
    case ConvId::boundary_moving:
      if (p.lambda == 0.0) throw std::invalid_argument("ray speed must be nonzero");
      break;
    case ConvId::memory_decay:
      if (!(p.alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
      // the ratio humps near mu*(alpha + 3/2) before settling; a window that
      // starts earlier would see the transient rise and misread it as growth
      if (!(min_time(p) >= p.mu * (p.alpha + 2.0)))
        throw std::invalid_argument("memory check needs times past the kernel transient");
      break;
    case ConvId::memory_early:
      // same idea: the ratio against the slowed exponential peaks near 3 mu
      if (!(min_time(p) >= 4.0 * p.mu))
        throw std::invalid_argument("memory check needs times past the kernel transient");
      break;
  }
}

bool uses_cross_ray(ConvId id) {
  switch (id) {
    case ConvId::early_window:
    case ConvId::single_slice:
    case ConvId::mid_gauss:
    case ConvId::mid_cross:
    case ConvId::cross_ray_log_early:
    case ConvId::cross_ray_log_late:
      return true;
    default:
      return false;
  }
}

std::vector<double> sample_points(ConvId id, double t, const ConvParams& p) {
  const double T = t + 1.0, rt = std::sqrt(T);
  std::set<double> xs;
  std::vector<double> centers = {0.0, p.lambda * T};
  if (uses_cross_ray(id)) centers.push_back(p.lambda_p * T);
  for (double c : centers)
    for (double o : p.x_offsets) xs.insert(c + o * rt);
  if (uses_cross_ray(id)) {
    const double mid = 0.5 * (p.lambda + p.lambda_p) * T;
    const double d = std::abs(p.lambda - p.lambda_p) * T;
    for (double o : {0.0, -0.25, 0.25, -0.4, 0.4}) xs.insert(mid + o * d);
  }
  std::vector<double> out(xs.begin(), xs.end());
  if (id == ConvId::boundary_moving) {
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](double v) { return std::abs(v) < 1e-12; }),
              out.end());
  }
  return out;
}

void finish_report(CheckReport& rep) {
  rep.passed = true;
  for (std::size_t k = 0; k < rep.sup_ratio.size(); ++k) {
    if (!std::isfinite(rep.sup_ratio[k])) rep.passed = false;
    rep.overall = std::max(rep.overall, rep.sup_ratio[k]);
    if (k > 0 && rep.sup_ratio[k - 1] > 1e-280 &&
        rep.sup_ratio[k] > 1.5 * rep.sup_ratio[k - 1]) {
      rep.decade_ok = false;
    }
  }
  if (!rep.decade_ok) rep.passed = false;
}

}  // namespace

// ==== public checks =========================================================

std::string conv_name(ConvId id) {
  switch (id) {
    case ConvId::early_window: return "early-window";
    case ConvId::single_slice: return "single-slice";
    case ConvId::mid_gauss: return "mid-gaussian";
    case ConvId::same_ray_sharp: return "same-ray-sharpened";
    case ConvId::mid_cross: return "mid-cross";
    case ConvId::same_ray_log_early: return "same-ray-log-early";
    case ConvId::same_ray_log_late: return "same-ray-log-late";
    case ConvId::cross_ray_log_early: return "cross-ray-log-early";
    case ConvId::cross_ray_log_late: return "cross-ray-log-late";
    case ConvId::boundary_time: return "boundary-time";
    case ConvId::boundary_moving: return "boundary-moving";
    case ConvId::memory_decay: return "memory-decay";
    case ConvId::memory_early: return "memory-early";
  }
  return "unknown";
}

CheckReport check_convolution(ConvId id, const ConvParams& p) {
  validate_conv(id, p);
  CheckReport rep;
  std::ostringstream name;
  name << conv_name(id) << " a=" << p.alpha << " b=" << p.beta;
  rep.name = name.str();
  for (double t : p.times) {
    double sup = 0.0;
    SupSample worst{0.0, t, 0.0, 0.0};
    for (double x : sample_points(id, t, p)) {
      const double lhs = lhs_conv(id, x, t, p);
      const double rhs = rhs_conv(id, x, t, p, 0);
      const double r = lhs / rhs;
      if (r > sup) {
        sup = r;
        worst = {x, t, lhs, rhs};
      }
    }
    rep.times.push_back(t);
    rep.sup_ratio.push_back(sup);
    rep.worst.push_back(worst);
  }
  finish_report(rep);
  return rep;
}

LogSplit check_log_threshold(ConvId id, const ConvParams& p) {
  if (id != ConvId::same_ray_log_early && id != ConvId::same_ray_log_late &&
      id != ConvId::cross_ray_log_early && id != ConvId::cross_ray_log_late)
    throw std::invalid_argument("log threshold check applies to the log-window ids only");
  validate_conv(id, p);
  LogSplit out;
  for (double t : p.times) {
    double sup_plain = 0.0, sup_log = 0.0;
    for (double x : sample_points(id, t, p)) {
      const double lhs = lhs_conv(id, x, t, p);
      sup_plain = std::max(sup_plain, lhs / rhs_conv(id, x, t, p, -1));
      sup_log = std::max(sup_log, lhs / rhs_conv(id, x, t, p, 1));
    }
    out.times.push_back(t);
    out.sup_plain.push_back(sup_plain);
    out.sup_with_log.push_back(sup_log);
  }
  const std::size_t n = out.times.size();
  out.growth_plain = out.sup_plain[n - 1] / out.sup_plain[n - 2];
  out.growth_with_log = out.sup_with_log[n - 1] / out.sup_with_log[n - 2];
  out.log_detected = out.growth_plain > 1.12 && out.growth_with_log < 1.10;
  return out;
}

// ==== product bounds ========================================================

CheckReport check_product_row(int row, const ProductParams& p) {
  if (row < 1 || row > 12) throw std::invalid_argument("product rows are 1..12");
  if (p.lambda == p.lambda_p) throw std::invalid_argument("rays must differ");
  if (!(p.alpha > 0.0 && p.beta > 0.0 && p.mu > 0.0 && p.big_m > 0.0))
    throw std::invalid_argument("alpha, beta, mu, M must be positive");
  if (row == 9 && !(p.alpha + p.beta >= 1.75))
    throw std::invalid_argument("row 9 needs alpha + beta >= 7/4");
  if (row == 10 && !(std::max(p.alpha, p.beta) <= 1.75 && p.alpha + p.beta >= 1.75))
    throw std::invalid_argument("row 10 needs max <= 7/4 and sum >= 7/4");
  if (row == 11 && !(p.alpha <= 1.75))
    throw std::invalid_argument("row 11 saturates its time power only for alpha <= 7/4");
  if (row == 12 && !(p.alpha >= 0.25 && p.alpha <= 1.75))
    throw std::invalid_argument("row 12 needs alpha in [1/4, 7/4]");

  const double lam = p.lambda, lp = p.lambda_p, mu = p.mu, al = p.alpha, be = p.beta;
  auto fg = [&](double x, double t) -> double {
    switch (row) {
      case 1: return w_gauss(x, t, lam, al, mu);
      case 2: return w_bar(x, t, lam);
      case 3: return w_til(x, t, lam);
      case 4: return w_gauss(x, t, lam, al, mu) * w_gauss(x, t, lp, be, mu);
      case 5: return w_gauss(x, t, lam, al, mu) * w_poly(x, t, lam, be);
      case 6: return w_gauss(x, t, lam, al, mu) * w_poly(x, t, lp, be);
      case 7: return w_gauss(x, t, lam, al, mu) * w_bar(x, t, lam);
      case 8: return w_gauss(x, t, lam, al, mu) * w_til(x, t, lam);
      case 9: return w_poly(x, t, lam, al) * w_poly(x, t, lam, be);
      case 10: return w_poly(x, t, lam, al) * w_poly(x, t, lp, be);
      case 11: return w_poly(x, t, lam, al) * w_bar(x, t, lam);
      case 12: return w_poly(x, t, lam, al) * w_til(x, t, lam);
    }
    return 0.0;
  };
  auto h = [&](double x, double t) -> double {
    const double T = t + 1.0;
    switch (row) {
      case 1: return w_poly(x, t, lam, al);
      case 2: return w_74(x, t, lam);
      case 3: return w_poly(x, t, lam, 1.5);
      case 4: return w_gauss(x, t, lam, p.big_m, 2.0 * mu);
      case 5: return w_gauss(x, t, lam, al + be, mu);
      case 6: return w_gauss(x, t, lam, al + 2.0 * be, 2.0 * mu);
      case 7: return w_gauss(x, t, lam, al + 2.5, mu);
      case 8: return w_gauss(x, t, lam, al + 2.0, mu);
      case 9: return std::pow(T, -0.5 * (al + be) + 0.875) * w_74(x, t, lam);
      case 10:
        return std::pow(T, -(al + be) + 1.75) * (w_74(x, t, lam) + w_74(x, t, lp));
      case 11: return std::pow(T, -5.0 * al / 7.0) * w_74(x, t, lam);
      case 12: return std::pow(T, -2.0 * al / 3.0 + 1.0 / 6.0) * w_74(x, t, lam);
    }
    return 1.0;
  };

  CheckReport rep;
  std::ostringstream name;
  name << "product-row-" << row << " a=" << al << " b=" << be;
  rep.name = name.str();
  for (double t : p.times) {
    const double T = t + 1.0, rt = std::sqrt(T);
    const double lo = std::min(lam, lp) * T - p.pad_sigmas * rt;
    const double hi = std::max(lam, lp) * T + p.pad_sigmas * rt;
    std::set<double> xs;
    for (int j = 0; j < p.n_grid; ++j) xs.insert(lo + (hi - lo) * j / (p.n_grid - 1.0));
    for (double c : {lam * T, lp * T, 0.0, 0.5 * (lam + lp) * T})
      for (double o : {0.0, -0.5, 0.5, -1.0, 1.0, -2.0, 2.0, -4.0, 4.0, -8.0, 8.0})
        xs.insert(c + o * rt);
    double sup = 0.0;
    SupSample worst{0.0, t, 0.0, 0.0};
    for (double x : xs) {
      const double num = fg(x, t), den = h(x, t);
      const double r = num / den;
      if (r > sup) {
        sup = r;
        worst = {x, t, num, den};
      }
    }
    rep.times.push_back(t);
    rep.sup_ratio.push_back(sup);
    rep.worst.push_back(worst);
  }
  finish_report(rep);
  return rep;
}

CheckReport check_indicator_product(const ProductParams& p) {
  if (p.lambda == p.lambda_p) throw std::invalid_argument("rays must differ");
  if (!(p.alpha > 0.0 && p.beta > 0.0 && p.K > 0.0))
    throw std::invalid_argument("alpha, beta, K must be positive");
  if (!(p.alpha + p.beta >= 1.75 && p.alpha + 0.5 * p.beta >= 1.25))
    throw std::invalid_argument("need alpha + beta >= 7/4 and alpha + beta/2 >= 5/4");

  CheckReport rep;
  std::ostringstream name;
  name << "indicator-product a=" << p.alpha << " b=" << p.beta << " K=" << p.K;
  rep.name = name.str();
  for (double t : p.times) {
    const double T = t + 1.0;
    const double lo = std::min(p.lambda, p.lambda_p) * T + p.K * std::sqrt(T);
    const double hi = std::max(p.lambda, p.lambda_p) * T - p.K * std::sqrt(T);
    double sup = 0.0;
    SupSample worst{0.0, t, 0.0, 0.0};
    if (lo < hi) {
      for (int j = 0; j < p.n_grid; ++j) {
        const double x = lo + (hi - lo) * j / (p.n_grid - 1.0);
        const double num = std::pow(std::abs(x - p.lambda * T), -p.alpha) *
                           std::pow(std::abs(x - p.lambda_p * T), -p.beta);
        const double den = w_74(x, t, p.lambda) + w_bar(x, t, p.lambda_p);
        const double r = num / den;
        if (r > sup) {
          sup = r;
          worst = {x, t, num, den};
        }
      }
    }
    rep.times.push_back(t);
    rep.sup_ratio.push_back(sup);
    rep.worst.push_back(worst);
  }
  finish_report(rep);
  return rep;
}

// ==== canonical battery =====================================================

std::vector<CheckReport> run_inequality_battery(double rel_tol) {
  std::vector<CheckReport> out;
  auto conv = [&](ConvId id, double al, double be, double lam = 1.0, double lp = -1.0,
                  double mu = 4.0, std::vector<double> times = {}) {
    ConvParams p;
    p.alpha = al;
    p.beta = be;
    p.lambda = lam;
    p.lambda_p = lp;
    p.mu = mu;
    p.rel_tol = rel_tol;
    if (!times.empty()) p.times = std::move(times);
    out.push_back(check_convolution(id, p));
  };
  // split windows are degenerate or still crossing ray overlaps at small t;
  // entries whose ratio humps early get a window that starts past it, and the
  // decade rule then polices the settled regime
  const std::vector<double> from16 = {16.0, 64.0, 256.0, 1024.0};
  const std::vector<double> from64 = {64.0, 256.0, 1024.0};
  conv(ConvId::early_window, 0.0, 0.0);
  conv(ConvId::early_window, 1.0, 1.0);
  conv(ConvId::single_slice, 0.0, 0.0, 1.0, 1.0);  // equal rays allowed here
  conv(ConvId::single_slice, 0.5, 1.0);
  conv(ConvId::mid_gauss, 1.0, 0.0, 1.0, -1.0, 4.0, from16);
  conv(ConvId::mid_gauss, 3.0, 0.0, 1.0, -1.0, 4.0, from16);
  conv(ConvId::same_ray_sharp, 3.5, 0.0, 1.0, -1.0, 4.0, from64);
  conv(ConvId::same_ray_sharp, 5.0, 0.0, 1.0, -1.0, 4.0, from64);
  conv(ConvId::mid_cross, 0.0, 0.0, 1.0, -1.0, 4.0, from64);
  conv(ConvId::mid_cross, 0.5, 0.0, 1.0, -1.0, 4.0, from64);
  conv(ConvId::same_ray_log_early, 0.0, 1.0, 1.0, -1.0, 4.0, from16);
  conv(ConvId::same_ray_log_early, 0.0, 1.25);  // at the log threshold
  conv(ConvId::same_ray_log_late, 1.0, 1.0);    // at the log threshold
  conv(ConvId::same_ray_log_late, 0.0, 1.0);
  conv(ConvId::cross_ray_log_early, 0.0, 1.0, 1.0, -1.0, 4.0, from64);
  conv(ConvId::cross_ray_log_early, 1.0, 1.25, 1.0, -1.0, 4.0, from16);
  conv(ConvId::cross_ray_log_late, 2.0, 1.0, 1.0, -1.0, 4.0, from16);
  conv(ConvId::cross_ray_log_late, 1.0, 3.0, 1.0, -1.0, 4.0, from16);
  conv(ConvId::boundary_time, 0.0, 0.0);
  conv(ConvId::boundary_time, 0.0, 0.0, 0.0, -1.0);  // resting ray
  conv(ConvId::boundary_moving, 0.0, 0.0);
  conv(ConvId::boundary_moving, 0.0, 0.0, -1.0, 1.0);
  // memory windows start past each kernel's transient hump
  conv(ConvId::memory_decay, 0.0, 0.0, 1.0, -1.0, 5.0, {16.0, 64.0, 256.0, 1024.0});
  conv(ConvId::memory_decay, 2.0, 0.0, 1.0, -1.0, 20.0, {256.0, 1024.0, 4096.0});
  conv(ConvId::memory_early, 0.0, 0.0, 1.0, -1.0, 5.0, {64.0, 256.0, 1024.0});
  conv(ConvId::memory_early, 0.0, 0.0, 1.0, -1.0, 20.0, {256.0, 1024.0, 4096.0});

  auto prod = [&](int row, double al, double be) {
    ProductParams p;
    p.alpha = al;
    p.beta = be;
    out.push_back(check_product_row(row, p));
  };
  for (int row = 1; row <= 12; ++row) {
    if (row == 10) {
      prod(row, 1.0, 0.75);
    } else {
      prod(row, 1.0, 1.0);
    }
  }
  {
    ProductParams p;
    out.push_back(check_indicator_product(p));
  }
  return out;
}

}  // namespace pmlab
