#pragma once

#include <cstddef>
#include <vector>

#include "pmlab/diffusion.hpp"
#include "pmlab/model.hpp"

namespace pmlab {

// Periodic pseudospectral grid for the interaction-wave equations. The box
// half-width L must exceed the causal cone c (t_end + 1) plus a diffusive
// margin; L = 0 selects that automatically. n must be a power of two.
struct SpectralConfig {
  double L = 0.0;
  int n = 8192;
  double dt = 0.05;
  double t_end = 100.0;
  std::vector<double> snapshot_times;  // snapped to the nearest step
  double boundary_tol = 1e-12;         // max |field| allowed at the box edge
};

struct WaveSnapshot {
  double t = 0.0;
  std::vector<double> value;
  std::vector<double> dx;  // spectral x derivative
};

struct WaveField {
  int family = 1;
  double L = 0.0;
  int n = 0;
  std::vector<double> x;
  std::vector<WaveSnapshot> snaps;
  double boundary_max = 0.0;  // worst edge value seen at snapshot times

  // cubic (4-point Lagrange) interpolation of a snapshot; zero outside the box
  double value_at(std::size_t snap, double xq) const;
  // trapezoid integral of a snapshot over the box
  double integral(std::size_t snap) const;
  // index of the grid point at x = 0
  std::size_t center_index() const;
};

// Solves the forced advection-diffusion equation for the family-i
// interaction wave:
//   dt xi + lambda_i dx xi + dx(theta_i ** xi) + dx(theta_i'^2 / 2) = (nu/2) dxx xi
// from xi(.,0) = 0, with the theta transport term included when
// `advect_by_own_wave` is true (the simplified variant drops it). The linear
// part is integrated exactly per mode; the forcing uses classical RK4 with
// 2/3 dealiasing of the product term.
// Throws std::invalid_argument for bad configs and std::runtime_error when
// the solution touches the box edge or becomes unstable.
WaveField solve_interaction_wave(const FluidParams& fp, const MassPair& masses, int family,
                                 const SpectralConfig& cfg, bool advect_by_own_wave = true);

// Lemma-style comparison of the interaction wave against the scaled square
// of the opposite diffusion wave: for deriv_order k in {0,1}, the sup over x
// of |d^k xi_i - (-1)^i (4c)^-1 d^k theta_i'^2| divided by
// (t+1)^(-k/2) (z^2 + t+1)^(-3/4) at z = x - lambda_i (t+1).
struct RelationCheck {
  std::vector<double> t;
  std::vector<double> sup_ratio;
  double overall = 0.0;
};
RelationCheck interaction_relation_check(const FluidParams& fp, const MassPair& masses,
                                         const WaveField& field, int deriv_order);

// Nested quadrature controls for the interface functionals (Simpson panel
// counts; the y window is center +- y_sigmas source widths).
struct FunctionalQuad {
  int s_panels = 400;
  int y_panels = 2000;
  double y_sigmas = 10.0;
};

// Duhamel-type interface functional predicting the interaction-wave boundary
// value: family contribution and the combined, velocity-scaled sum.
// Requires t > 1 (the time window is [sqrt(t), t]).
double interface_functional_family(const FluidParams& fp, const MassPair& masses, int family,
                                   double t, const FunctionalQuad& q = {});
double interface_functional(const FluidParams& fp, const MassPair& masses, double t,
                            const FunctionalQuad& q = {});

// Closed-form Gaussian model of the same functional; its sign equals
// sgn(M1^2 - M2^2) and it decays like t^(-3/2).
double interface_functional_model(const FluidParams& fp, const MassPair& masses, double t,
                                  const FunctionalQuad& q = {});

// Boundary-value asymptotics: the velocity-scaled interaction-wave sum at
// x = 0 against the interface functional, per snapshot time > 1.
struct BoundarySeries {
  std::vector<double> t;
  std::vector<double> boundary_sum;  // (2c^2/p2)(xi_1 + xi_2)(0, t)
  std::vector<double> functional;    // predicted value
  std::vector<double> diff;
};
BoundarySeries interface_asymptotics(const FluidParams& fp, const MassPair& masses,
                                     const WaveField& xi1, const WaveField& xi2,
                                     const FunctionalQuad& q = {});

}  // namespace pmlab
