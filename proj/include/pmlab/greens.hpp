#pragma once

#include "pmlab/model.hpp"

#include <complex>
#include <vector>

namespace pmlab {

// Row-major 2x2 blocks used for the linearized propagator.
using Mat2 = std::array<double, 4>;
using CMat2 = std::array<std::complex<double>, 4>;

// ============================ far-field model =============================

// Pair of translating heat kernels (diffusivity nu/2, speeds +-c) assembled
// into the 2x2 far-field approximation of the whole-line propagator.
Mat2 gstar(const FluidParams& fp, double x, double t);
Mat2 gstar_dx(const FluidParams& fp, double x, double t);

// Characteristic row i (0 or 1) of the far-field model: a single translating
// heat kernel sitting in slot i, and its x-derivative.
Vec2 gstar_row(const FluidParams& fp, int family, double x, double t);
Vec2 gstar_row_dx(const FluidParams& fp, int family, double x, double t);

// ============================ Fourier symbol ==============================

// exp(t M(k)) for the linearized system written as U_t = M(k) U with
// M(k) = [[0, ik], [i c^2 k, -nu k^2]].  Stable for all k, t >= 0.
CMat2 kernel_symbol(const FluidParams& fp, double k, double t);

// ============================ grid kernels ================================

struct GreensConfig {
  double L = 48.0;  // half-width of the spatial box
  int n = 32768;    // grid points (power of two)
};

// Smooth part of a kernel sampled on the uniform grid x_j = -L + j dx.
// The non-decaying constant mode of the symbol corresponds to a Dirac mass
// at x = 0 (weight delta_coef times the stored matrix pattern) and is
// removed before inversion.
struct KernelGrid {
  double t = 0;
  double L = 0;
  int n = 0;
  double dx = 0;
  double delta_coef = 0;
  std::vector<double> x;
  std::vector<Mat2> val;

  int index_of(double xq) const;
  int center_index() const { return n / 2; }
};

// Whole-line propagator minus exp(-c^2 t / nu) delta(x) Q0, Q0 = diag(1, 0).
KernelGrid fundamental_kernel(const FluidParams& fp, double t,
                              const GreensConfig& cfg = {});

// x-derivative of the propagator with both non-decaying symbol modes
// removed: ik Q0 (the delta') and the constant matrix Q1 it leaves behind.
KernelGrid fundamental_kernel_dx(const FluidParams& fp, double t,
                                 const GreensConfig& cfg = {});

// ============================ half-line kernels ===========================

// Damped-exponential moment tra(x) = 2 int_0^inf e^{-2u} G(x + u) du taken
// along the grid, its exact derivative tra' = -2 G + 2 tra, and the
// complementary part ref = (G - tra) diag(1, -1), all for x > 0.
struct HalfLineKernels {
  double t = 0;
  double dx = 0;
  std::vector<double> x;
  std::vector<Mat2> g;       // smooth whole-line kernel restricted to x > 0
  std::vector<Mat2> tra;
  std::vector<Mat2> tra_dx;
  std::vector<Mat2> ref;
};

HalfLineKernels half_line_kernels(const KernelGrid& grid);

// Sup over interior points of |centered FD of tra - tra_dx| with step
// stride * dx.  Decays at second order in the step.
double transmissive_identity_residual(const HalfLineKernels& hk, int stride);

// Sup of |ref_row_i - (1/2) (tra_dx row i with swapped slots)| over x > 0;
// an algebraic identity of the construction, zero up to roundoff.
double reflected_row_mismatch(const FluidParams& fp, const HalfLineKernels& hk);

// ============================ pointwise bounds ============================

struct BoundReport {
  double sup_ratio = 0;
  double worst_x = 0;
  double worst_t = 0;
};

// Scan of the characteristic rows against Gaussian ray weights.
//   refined:   |g_i - g*_i - gamma_{i'} dx g*_{i'}| over
//              t^{-1} E_i + (t+1)^{-1/2} t^{-1} E_{i'}
//   unrefined: |g_i - g*_i| over (t+1)^{-1/2} t^{-1/2} (E_1 + E_2)
//   same_weight_sup: the unrefined numerator over the refined weight,
//              recorded per time; its growth shows the correction term is
//              genuinely needed.
// E_i = exp(-(x - lambda_i t)^2 / (4 nu t)).
struct RayBoundScan {
  std::vector<double> times;
  double refined_sup[2] = {0, 0};
  double unrefined_sup[2] = {0, 0};
  std::vector<double> same_weight_sup[2];
};

RayBoundScan row_bound_scan(const FluidParams& fp,
                            const std::vector<double>& times,
                            const GreensConfig& cfg = {});

// Sup of |smooth kernel entries| over the two-ray Gaussian weight plus an
// exponentially small floor, sampled on |x| >= 0.5.
BoundReport smooth_part_scan(const FluidParams& fp,
                             const std::vector<double>& times,
                             const GreensConfig& cfg = {});

// ============================ evolution identity ==========================

// Residual of (d_t + lambda_i d_x - (nu/2) d_x^2)(g_i - g*_i)
//            = (nu/2) d_x^2 g_{i'}
// with centered differences of step m * dx in both x and t (three kernel
// builds).  Returns the sup over both families away from the origin.
double projected_identity_residual(const FluidParams& fp, double t, int m,
                                   const GreensConfig& cfg = {});

}  // namespace pmlab
