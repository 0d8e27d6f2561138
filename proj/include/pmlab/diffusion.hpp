#pragma once

#include "pmlab/model.hpp"

namespace pmlab {

// Closed-form self-similar solution of the viscous Burgers equation
//   dt th + lambda dx th + dx(th^2/2) = (nu/2) dxx th
// launched from a point mass `mass` at t = -1 (so profiles are regular at
// t = 0 with width sqrt(2 nu)). Carries integral `mass` for all time.
struct DiffusionWave {
  double mass = 0.0;
  double lambda = 0.0;
  double nu = 1.0;
};

// Family i (1 or 2) wave with speed lambda_i and mass M_i.
// Throws std::invalid_argument if |mass|/nu > 50 (amplitude overflow guard)
// or nu <= 0.
DiffusionWave diffusion_wave(const FluidParams& fp, const MassPair& m, int family);
DiffusionWave make_wave(double mass, double lambda, double nu);

double theta(const DiffusionWave& w, double x, double t);
double theta_dx(const DiffusionWave& w, double x, double t);
double theta_dxx(const DiffusionWave& w, double x, double t);

// Time derivative by centered differencing of the closed form.
double theta_dt(const DiffusionWave& w, double x, double t, double dt = 1e-4);

// Residual of the Burgers equation with analytic x derivatives and a centered
// finite-difference t derivative; second order in dt.
double burgers_residual(const DiffusionWave& w, double x, double t, double dt);

// Integral of theta over the line (Simpson over a wide Gaussian window,
// panel-doubled). Equals `mass` up to quadrature error.
double theta_integral(const DiffusionWave& w, double t, double rel_tol = 1e-10);

// Structure checks used by the mass-cancellation arguments:
// opposite masses give mirror antisymmetry th1(-x,t) = -th2(x,t); equal
// masses give the translation identity th1(x + 2c(t+1), t) = th2(x, t).
// Both return the max abs mismatch over a sample grid.
double antisymmetry_mismatch(const FluidParams& fp, double mass, double t, int n_samples = 401);
double translation_mismatch(const FluidParams& fp, double mass, double t, int n_samples = 401);

}  // namespace pmlab
