#include "pmlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pmlab/quadrature.hpp"

namespace pmlab {

// ============================ fluid parameters ============================

FluidParams derive_params(double gamma, double nu) {
  if (!(gamma > 0.0)) throw std::invalid_argument("derive_params: gamma must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("derive_params: nu must be positive");
  FluidParams fp;
  fp.gamma = gamma;
  fp.nu = nu;
  fp.c = std::sqrt(gamma);
  fp.p2 = gamma * (gamma + 1.0);
  return fp;
}

double pressure(const FluidParams& fp, double v) {
  if (!(v > 0.0)) throw std::domain_error("pressure: specific volume must be positive");
  return std::pow(v, -fp.gamma);
}

double pressure_dv(const FluidParams& fp, double v) {
  if (!(v > 0.0)) throw std::domain_error("pressure_dv: specific volume must be positive");
  return -fp.gamma * std::pow(v, -fp.gamma - 1.0);
}

// ============================ characteristic frame ========================

EigenStructure eigen_structure(const FluidParams& fp) {
  EigenStructure es;
  const double c = fp.c, p2 = fp.p2;
  es.lambda[0] = c;
  es.lambda[1] = -c;
  const double rs = 2.0 * c / p2;
  es.r[0] = {-rs, rs * c};
  es.r[1] = {rs, rs * c};
  const double ls = p2 / (4.0 * c);
  es.l[0] = {-ls, ls / c};
  es.l[1] = {ls, ls / c};
  es.gamma_coef[0] = -fp.nu / (4.0 * c);
  es.gamma_coef[1] = fp.nu / (4.0 * c);
  return es;
}

Vec2 characteristic_project(const EigenStructure& es, double dv, double u) {
  return {es.l[0][0] * dv + es.l[0][1] * u, es.l[1][0] * dv + es.l[1][1] * u};
}

Vec2 characteristic_reconstruct(const EigenStructure& es, const Vec2& w) {
  return {w[0] * es.r[0][0] + w[1] * es.r[1][0], w[0] * es.r[0][1] + w[1] * es.r[1][1]};
}

double nonlinear_flux(const FluidParams& fp, double v, double ux) {
  if (!(v > 0.0)) throw std::domain_error("nonlinear_flux: specific volume must be positive");
  // p(1) = 1 and p'(1) = -c^2, so this is the quadratic remainder of the
  // pressure expansion plus the quadratic viscous correction.
  return -(pressure(fp, v) - 1.0) - fp.c * fp.c * (v - 1.0) - fp.nu * (v - 1.0) * ux / v;
}

double nonlinear_flux_scaled(const FluidParams& fp, double v, double ux) {
  return fp.p2 / (4.0 * fp.c * fp.c) * nonlinear_flux(fp, v, ux);
}

// ============================ initial data ================================

static double bump_value(const Bump& b, double x) {
  const double z = (x - b.center) / b.width;
  switch (b.shape) {
    case Bump::Shape::gaussian:
      return b.amplitude * std::exp(-0.5 * z * z);
    case Bump::Shape::gaussian_slope:
      return b.amplitude * z * std::exp(-0.5 * z * z);
    case Bump::Shape::tanh_ramp:
      return b.amplitude * std::tanh(z) * std::exp(-0.5 * z * z);
  }
  return 0.0;
}

double Profile::operator()(double x) const {
  double s = 0.0;
  for (const auto& b : bumps) s += bump_value(b, x);
  for (const auto& sp : samples) {
    if (sp.values.size() < 2) continue;
    const double pos = (x - sp.x0) / sp.dx;
    if (pos < 0.0 || pos > double(sp.values.size() - 1)) continue;
    const auto j = static_cast<std::size_t>(pos);
    const std::size_t j1 = std::min(j + 1, sp.values.size() - 1);
    const double f = pos - double(j);
    s += (1.0 - f) * sp.values[j] + f * sp.values[j1];
  }
  return s;
}

double Profile::integral() const {
  double s = 0.0;
  constexpr double sqrt_2pi = 2.5066282746310005;
  for (const auto& b : bumps) {
    if (b.shape == Bump::Shape::gaussian) s += b.amplitude * b.width * sqrt_2pi;
    // the slope and ramp shapes are odd around their center: zero integral
  }
  for (const auto& sp : samples) {
    if (sp.values.size() < 2) continue;
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < sp.values.size(); ++j)
      acc += 0.5 * (sp.values[j] + sp.values[j + 1]);
    s += acc * sp.dx;
  }
  return s;
}

double Profile::support_radius(double tails) const {
  double r = 0.0;
  for (const auto& b : bumps) r = std::max(r, std::abs(b.center) + tails * b.width);
  for (const auto& sp : samples) {
    if (sp.values.empty()) continue;
    const double hi = sp.x0 + sp.dx * double(sp.values.size() - 1);
    r = std::max({r, std::abs(sp.x0), std::abs(hi)});
  }
  return r;
}

bool Profile::empty() const { return bumps.empty() && samples.empty(); }

Profile gaussian_bump(double amplitude, double center, double width) {
  Profile p;
  p.bumps.push_back({Bump::Shape::gaussian, amplitude, center, width});
  return p;
}

Profile gaussian_slope_bump(double amplitude, double center, double width) {
  Profile p;
  p.bumps.push_back({Bump::Shape::gaussian_slope, amplitude, center, width});
  return p;
}

Profile tanh_ramp_bump(double amplitude, double center, double width) {
  Profile p;
  p.bumps.push_back({Bump::Shape::tanh_ramp, amplitude, center, width});
  return p;
}

// ============================ conserved masses ============================

static double profile_integral_quad(const Profile& p, double rel_tol) {
  if (p.empty()) return 0.0;
  const double R = std::max(p.support_radius(), 1.0);
  const auto res = integrate_to_tol([&](double x) { return p(x); }, -R, R, rel_tol, 128, 14,
                                    1e-14);
  if (!res.converged)
    throw std::runtime_error("compute_masses: profile quadrature did not converge");
  return res.value;
}

MassPair compute_masses(const FluidParams& fp, const InitialData& data, double rel_tol) {
  const EigenStructure es = eigen_structure(fp);
  const double idv = profile_integral_quad(data.dv, rel_tol);
  const double iu = profile_integral_quad(data.u, rel_tol) + data.V0;
  return {es.l[0][0] * idv + es.l[0][1] * iu, es.l[1][0] * idv + es.l[1][1] * iu};
}

// ============================ spacetime weights ===========================

double weight_eval(const WeightSpec& w, double x, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("weight_eval: t must be nonnegative");
  const double T = t + 1.0;
  const double z = x - w.lambda * T;
  switch (w.kind) {
    case WeightKind::gauss:
      if (!(w.mu > 0.0)) throw std::invalid_argument("weight_eval: gauss weight needs mu > 0");
      return std::pow(T, -0.5 * w.alpha) * std::exp(-z * z / (w.mu * T));
    case WeightKind::poly:
      return std::pow(z * z + T, -0.5 * w.alpha);
    case WeightKind::poly74:
      return std::pow(z * z + T, -0.875);
    case WeightKind::cross74:
      return std::pow(std::pow(std::abs(z), 7.0) + std::pow(T, 5.0), -0.25);
    case WeightKind::cross32:
      return std::pow(std::pow(std::abs(z), 3.0) + T * T, -0.5);
    case WeightKind::pair_sharp: {
      WeightSpec own{WeightKind::poly74, 0.0, w.lambda, 1.0, 0.0};
      WeightSpec other{WeightKind::cross74, 0.0, w.lambda_other, 1.0, 0.0};
      return weight_eval(own, x, t) + weight_eval(other, x, t);
    }
    case WeightKind::pair_base: {
      WeightSpec own{WeightKind::poly, 1.5, w.lambda, 1.0, 0.0};
      WeightSpec other{WeightKind::cross32, 0.0, w.lambda_other, 1.0, 0.0};
      return weight_eval(own, x, t) + weight_eval(other, x, t);
    }
  }
  throw std::logic_error("weight_eval: unknown kind");
}

static void check_family(int family) {
  if (family != 1 && family != 2)
    throw std::invalid_argument("weight: family index must be 1 or 2");
}

WeightSpec sharp_weight(const EigenStructure& es, int family) {
  check_family(family);
  WeightSpec w;
  w.kind = WeightKind::pair_sharp;
  w.lambda = es.lambda[family - 1];
  w.lambda_other = es.lambda[2 - family];
  return w;
}

WeightSpec base_weight(const EigenStructure& es, int family) {
  check_family(family);
  WeightSpec w;
  w.kind = WeightKind::pair_base;
  w.lambda = es.lambda[family - 1];
  w.lambda_other = es.lambda[2 - family];
  return w;
}

// ============================ interface compatibility =====================

bool CompatibilityReport::satisfied(double tol) const {
  for (int s = 0; s < 2; ++s)
    if (std::abs(velocity_gap[s]) > tol || std::abs(stress_slope_gap[s]) > tol ||
        std::abs(stress_rate_gap[s]) > tol)
      return false;
  return true;
}

namespace {

// One-sided second-order stencils; sgn = +1 evaluates at 0+, -1 at 0-.
// f is sampled at sgn * {0, h, 2h, 3h, 4h}.
double one_sided_d1(const double f[5], double h, double sgn) {
  return sgn * (-1.5 * f[0] + 2.0 * f[1] - 0.5 * f[2]) / h;
}

double one_sided_d2(const double f[5], double h) {
  return (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
}

}  // namespace

CompatibilityReport compatibility_check(const FluidParams& fp, const InitialData& data,
                                        double h) {
  if (!(h > 0.0)) throw std::invalid_argument("compatibility_check: h must be positive");
  CompatibilityReport rep;

  // stress C1 and rate surrogate C2 sampled one-sidedly on each side
  double c1[2][5], c2[2][5], u0[2][5];
  for (int side = 0; side < 2; ++side) {
    const double sgn = side == 0 ? -1.0 : 1.0;
    // sample u, v and their local derivatives on a one-sided stencil that is
    // wide enough for the nested second derivative inside C2
    auto vat = [&](double x) { return 1.0 + data.dv(x); };
    auto uat = [&](double x) { return data.u(x); };
    auto ux_at = [&](double x) {
      // the same one-sided stencil at every point: samples stay on the
      // matching side, and the truncation error is one smooth field instead
      // of a kink at the interface that the nested differences would amplify
      const double f0 = uat(x), f1 = uat(x + sgn * h), f2 = uat(x + sgn * 2.0 * h);
      return sgn * (-1.5 * f0 + 2.0 * f1 - 0.5 * f2) / h;
    };
    auto c1_at = [&](double x) {
      const double v = vat(x);
      if (!(v > 0.0)) throw std::domain_error("compatibility_check: v0 must stay positive");
      return -pressure(fp, v) + fp.nu * ux_at(x) / v;
    };
    for (int j = 0; j < 5; ++j) {
      const double x = sgn * h * double(j);
      u0[side][j] = uat(x);
      c1[side][j] = c1_at(x);
    }
    // C2 needs the second derivative of C1 at each stencil point
    for (int j = 0; j < 5; ++j) {
      const double x = sgn * h * double(j);
      double c1xx;
      if (j == 0) {
        c1xx = one_sided_d2(c1[side], h);
      } else {
        const double fm = c1_at(x - sgn * h), fp_ = c1_at(x + sgn * h);
        c1xx = (fm - 2.0 * c1[side][j] + fp_) / (h * h);
      }
      const double v = vat(x);
      const double ux = ux_at(x);
      c2[side][j] = -pressure_dv(fp, v) * ux + fp.nu / v * c1xx - fp.nu * ux * ux / (v * v);
    }
  }

  rep.stress_jump = c1[1][0] - c1[0][0];
  rep.stress_rate_jump = c2[1][0] - c2[0][0];
  for (int side = 0; side < 2; ++side) {
    const double sgn = side == 0 ? -1.0 : 1.0;
    rep.velocity_gap[side] = u0[side][0] - data.V0;
    rep.stress_slope_gap[side] = one_sided_d1(c1[side], h, sgn) - rep.stress_jump;
    rep.stress_rate_gap[side] = one_sided_d1(c2[side], h, sgn) - rep.stress_rate_jump;
  }
  return rep;
}

// ============================ initial tail norms ==========================

TailNorms initial_tail_norms(const FluidParams& fp, const InitialData& data, double dx,
                             double x_max) {
  if (!(dx > 0.0)) throw std::invalid_argument("initial_tail_norms: dx must be positive");
  const EigenStructure es = eigen_structure(fp);
  double R = x_max;
  if (R <= 0.0)
    R = std::max({data.dv.support_radius(), data.u.support_radius(), 1.0}) + 40.0;
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * R / dx)) + 1;

  TailNorms tn;
  for (int i = 0; i < 2; ++i) {
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = -R + dx * double(j);
      w[j] = es.l[i][0] * data.dv(x) + es.l[i][1] * data.u(x);
    }
    // discrete Sobolev-style norm with first and second differences
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) s0 += w[j] * w[j];
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const double d1 = (w[j + 1] - w[j - 1]) / (2.0 * dx);
      const double d2 = (w[j + 1] - 2.0 * w[j] + w[j - 1]) / (dx * dx);
      s1 += d1 * d1;
      s2 += d2 * d2;
    }
    tn.sobolev_like[i] = std::sqrt((s0 + s1 + s2) * dx);

    double wsup = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = -R + dx * double(j);
      wsup = std::max(wsup, std::pow(1.0 + std::abs(x), 1.75) * std::abs(w[j]));
    }
    tn.weighted_sup[i] = wsup;

    // cumulative integrals from the left and from the right (trapezoid)
    std::vector<double> cl(n, 0.0), cr(n, 0.0);
    for (std::size_t j = 1; j < n; ++j)
      cl[j] = cl[j - 1] + 0.5 * dx * (w[j - 1] + w[j]);
    for (std::size_t j = n - 1; j > 0; --j)
      cr[j - 1] = cr[j] + 0.5 * dx * (w[j - 1] + w[j]);
    double tsup = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = -R + dx * double(j);
      if (x <= 0.0) continue;
      // W^-(-x): cumulative-from-left at -x; W^+(x): cumulative-from-right at x
      const auto jm = static_cast<std::size_t>(std::floor((-x + R) / dx));
      const double wm = std::abs(cl[std::min(jm, n - 1)]);
      const double wp = std::abs(cr[j]);
      tsup = std::max(tsup, std::pow(1.0 + x, 1.25) * (wm + wp));
    }
    tn.tail_sup[i] = tsup;
  }
  tn.total = tn.sobolev_like[0] + tn.weighted_sup[0] + tn.tail_sup[0] + tn.sobolev_like[1] +
             tn.weighted_sup[1] + tn.tail_sup[1];
  return tn;
}

}  // namespace pmlab
