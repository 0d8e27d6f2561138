#include "pmlab/diffusion.hpp"

#include <cmath>
#include <stdexcept>

#include "pmlab/quadrature.hpp"

namespace pmlab {

namespace {

constexpr double k_sqrt_pi = 1.7724538509055160;

struct Eval {
  double z;      // similarity coordinate (x - lambda (t+1)) / sqrt(2 nu (t+1))
  double s2;     // sqrt(2 nu (t+1))
  double T;      // t + 1
  double m;      // expm1(mass / nu)
  double E;      // exp(-z^2)
  double D;      // sqrt(pi) + m * integral_z^inf exp(-y^2) dy
};

Eval evaluate(const DiffusionWave& w, double x, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("theta: t must be nonnegative");
  Eval e;
  e.T = t + 1.0;
  e.s2 = std::sqrt(2.0 * w.nu * e.T);
  e.z = (x - w.lambda * e.T) / e.s2;
  e.m = std::expm1(w.mass / w.nu);
  e.E = std::exp(-e.z * e.z);
  // Two algebraically equal forms of the denominator; each side avoids
  // cancellation for the sign of z it handles.
  if (e.z >= 0.0) {
    e.D = k_sqrt_pi + e.m * 0.5 * k_sqrt_pi * std::erfc(e.z);
  } else {
    e.D = k_sqrt_pi * std::exp(w.mass / w.nu) - e.m * 0.5 * k_sqrt_pi * std::erfc(-e.z);
  }
  return e;
}

void check_wave(const DiffusionWave& w) {
  if (!(w.nu > 0.0)) throw std::invalid_argument("diffusion wave: nu must be positive");
  if (std::abs(w.mass) / w.nu > 50.0)
    throw std::invalid_argument("diffusion wave: |mass|/nu exceeds the overflow guard (50)");
}

}  // namespace

DiffusionWave make_wave(double mass, double lambda, double nu) {
  DiffusionWave w{mass, lambda, nu};
  check_wave(w);
  return w;
}

DiffusionWave diffusion_wave(const FluidParams& fp, const MassPair& m, int family) {
  if (family != 1 && family != 2)
    throw std::invalid_argument("diffusion_wave: family index must be 1 or 2");
  const EigenStructure es = eigen_structure(fp);
  return make_wave(family == 1 ? m.M1 : m.M2, es.lambda[family - 1], fp.nu);
}

double theta(const DiffusionWave& w, double x, double t) {
  check_wave(w);
  const Eval e = evaluate(w, x, t);
  return (w.nu / e.s2) * e.m * e.E / e.D;
}

double theta_dx(const DiffusionWave& w, double x, double t) {
  check_wave(w);
  const Eval e = evaluate(w, x, t);
  const double u = e.m * e.E;
  return u * (u - 2.0 * e.z * e.D) / (2.0 * e.T * e.D * e.D);
}

double theta_dxx(const DiffusionWave& w, double x, double t) {
  check_wave(w);
  const Eval e = evaluate(w, x, t);
  const double u = e.m * e.E;
  const double D = e.D;
  return u * (u * u - 3.0 * e.z * u * D + (2.0 * e.z * e.z - 1.0) * D * D) /
         (e.T * e.s2 * D * D * D);
}

double theta_dt(const DiffusionWave& w, double x, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("theta_dt: dt must be positive");
  const double tm = std::max(t - dt, 0.0);
  const double tp = t + dt;
  return (theta(w, x, tp) - theta(w, x, tm)) / (tp - tm);
}

double burgers_residual(const DiffusionWave& w, double x, double t, double dt) {
  return theta_dt(w, x, t, dt) + w.lambda * theta_dx(w, x, t) +
         theta(w, x, t) * theta_dx(w, x, t) - 0.5 * w.nu * theta_dxx(w, x, t);
}

double theta_integral(const DiffusionWave& w, double t, double rel_tol) {
  check_wave(w);
  const double T = t + 1.0;
  const double center = w.lambda * T;
  const double half = 40.0 * std::sqrt(w.nu * T);
  const auto res = integrate_to_tol([&](double x) { return theta(w, x, t); }, center - half,
                                    center + half, rel_tol, 256, 14, 1e-14);
  if (!res.converged) throw std::runtime_error("theta_integral: quadrature did not converge");
  return res.value;
}

double antisymmetry_mismatch(const FluidParams& fp, double mass, double t, int n_samples) {
  const EigenStructure es = eigen_structure(fp);
  const DiffusionWave w1 = make_wave(mass, es.lambda[0], fp.nu);
  const DiffusionWave w2 = make_wave(-mass, es.lambda[1], fp.nu);
  const double T = t + 1.0;
  const double half = fp.c * T + 10.0 * std::sqrt(fp.nu * T);
  double worst = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    const double x = -half + 2.0 * half * double(j) / double(n_samples - 1);
    worst = std::max(worst, std::abs(theta(w1, -x, t) + theta(w2, x, t)));
  }
  return worst;
}

double translation_mismatch(const FluidParams& fp, double mass, double t, int n_samples) {
  const EigenStructure es = eigen_structure(fp);
  const DiffusionWave w1 = make_wave(mass, es.lambda[0], fp.nu);
  const DiffusionWave w2 = make_wave(mass, es.lambda[1], fp.nu);
  const double T = t + 1.0;
  const double half = 10.0 * std::sqrt(fp.nu * T);
  double worst = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    // sample around the slow ray where th2 lives
    const double x = -fp.c * T - half + 2.0 * half * double(j) / double(n_samples - 1);
    worst = std::max(worst, std::abs(theta(w1, x + 2.0 * fp.c * T, t) - theta(w2, x, t)));
  }
  return worst;
}

}  // namespace pmlab
