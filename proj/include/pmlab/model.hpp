#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace pmlab {

using Vec2 = std::array<double, 2>;

// ============================ fluid parameters ============================

// Barotropic fluid p(v) = v^-gamma, linearized around the reference state
// (v, u) = (1, 0).
struct FluidParams {
  double gamma = 1.0;  // pressure-law exponent
  double nu = 1.0;     // viscosity
  double c = 1.0;      // sound speed at the reference state, sqrt(gamma)
  double p2 = 2.0;     // second derivative of the pressure law at v = 1
};

// Throws std::invalid_argument unless gamma > 0 and nu > 0.
FluidParams derive_params(double gamma, double nu);

double pressure(const FluidParams& fp, double v);     // v^-gamma, requires v > 0
double pressure_dv(const FluidParams& fp, double v);  // d/dv of the above

// ============================ characteristic frame ========================

// Eigenstructure of the first-order part of the perturbation system
//   d/dt (v-1, u) + A d/dx (v-1, u) = ...,  A = [[0,-1],[-c^2,0]].
// Left and right eigenvectors are normalized so that l_i . r_j = delta_ij,
// and gamma_coef holds the cross-family coupling coefficients -nu/(4c) and
// +nu/(4c) (families 1 and 2 map to indices 0 and 1).
struct EigenStructure {
  double lambda[2];
  Vec2 r[2];
  Vec2 l[2];
  double gamma_coef[2];
};

EigenStructure eigen_structure(const FluidParams& fp);

// Pointwise projection of a state perturbation onto the characteristic
// families, w_i = l_i . (dv, u), and its inverse.
Vec2 characteristic_project(const EigenStructure& es, double dv, double u);
Vec2 characteristic_reconstruct(const EigenStructure& es, const Vec2& w);

// Quadratic flux correction N(v, ux) = -p(v) + p(1) - c^2 (v-1) - nu (v-1) ux / v
// and its characteristic-frame scaling p2/(4c^2) N. Requires v > 0.
double nonlinear_flux(const FluidParams& fp, double v, double ux);
double nonlinear_flux_scaled(const FluidParams& fp, double v, double ux);

// ============================ initial data ================================

// Localized closed-form shapes. With z = (x - center)/width:
//   gaussian:       amplitude * exp(-z^2/2)
//   gaussian_slope: amplitude * z * exp(-z^2/2)        (zero total integral)
//   tanh_ramp:      amplitude * tanh(z) * exp(-z^2/2)  (zero total integral)
struct Bump {
  enum class Shape { gaussian, gaussian_slope, tanh_ramp };
  Shape shape = Shape::gaussian;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
};

// Uniformly sampled values with linear interpolation, zero outside the range.
struct SampledProfile {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<double> values;
};

struct Profile {
  std::vector<Bump> bumps;
  std::vector<SampledProfile> samples;

  double operator()(double x) const;
  // Exact for the closed-form shapes, trapezoid for sampled parts.
  double integral() const;
  // Radius beyond which the profile is negligible (bump cores extended by
  // `tails` widths, sample ranges taken whole).
  double support_radius(double tails = 12.0) const;
  bool empty() const;
};

Profile gaussian_bump(double amplitude, double center, double width);
Profile gaussian_slope_bump(double amplitude, double center, double width);
Profile tanh_ramp_bump(double amplitude, double center, double width);

struct InitialData {
  Profile dv;      // v0 - 1
  Profile u;       // u0
  double V0 = 0.0;  // initial body velocity
  double h0 = 0.0;  // initial body position
};

// ============================ conserved masses ============================

struct MassPair {
  double M1 = 0.0;
  double M2 = 0.0;
};

// M_i = l_i . (integral of (v0-1, u0)) + l_i . (0, V0), computed by Simpson
// quadrature over the profile support with panel doubling to rel_tol.
// Throws std::runtime_error if the quadrature does not converge.
MassPair compute_masses(const FluidParams& fp, const InitialData& data,
                        double rel_tol = 1e-10);

// ============================ spacetime weights ===========================

// Weight families used by the pointwise decay estimates. With
// z = x - lambda (t+1) and T = t+1:
//   gauss:    T^(-alpha/2) exp(-z^2 / (mu T))
//   poly:     (z^2 + T)^(-alpha/2)
//   poly74:   (z^2 + T)^(-7/8)
//   cross74:  (|z|^7 + T^5)^(-1/4)   (opposite-ray partner of poly74)
//   cross32:  (|z|^3 + T^2)^(-1/2)   (opposite-ray partner of poly alpha=3/2)
//   pair_sharp: poly74(lambda) + cross74(lambda_other)
//   pair_base:  poly(alpha=3/2, lambda) + cross32(lambda_other)
enum class WeightKind { gauss, poly, poly74, cross74, cross32, pair_sharp, pair_base };

struct WeightSpec {
  WeightKind kind = WeightKind::poly74;
  double alpha = 0.0;
  double lambda = 0.0;
  double mu = 1.0;
  double lambda_other = 0.0;
};

// Requires t >= 0; gauss additionally requires mu > 0.
double weight_eval(const WeightSpec& w, double x, double t);

// Sharp and baseline composite weights for family i (1 or 2).
WeightSpec sharp_weight(const EigenStructure& es, int family);
WeightSpec base_weight(const EigenStructure& es, int family);

// ============================ interface compatibility =====================

// First-order compatibility of the initial data with the coupled body:
// velocity match u0(0+-) = V0, and matching of the one-sided slopes of the
// stress C1 = -p(v) + nu ux / v and of its time derivative surrogate
// C2 = -p'(v) ux + (nu/v) (C1)_xx - nu ux^2 / v^2 against the corresponding
// interface jumps. Derivatives are one-sided finite differences with step h.
// side index: 0 = left (x -> 0-), 1 = right (x -> 0+).
struct CompatibilityReport {
  double velocity_gap[2] = {0, 0};
  double stress_slope_gap[2] = {0, 0};
  double stress_rate_gap[2] = {0, 0};
  double stress_jump = 0.0;
  double stress_rate_jump = 0.0;
  bool satisfied(double tol) const;
};

CompatibilityReport compatibility_check(const FluidParams& fp, const InitialData& data,
                                        double h = 1e-3);

// ============================ initial tail norms ==========================

// Smallness surrogate for the initial perturbation in the characteristic
// frame w_i = l_i . (v0-1, u0): a discrete Sobolev-style norm (value plus
// first and second finite differences in L2), the algebraically weighted
// sup norm sup (1+|x|)^(7/4) |w_i|, and the tail-integral sup
// sup_{x>0} (1+x)^(5/4) (|W_i^-(-x)| + |W_i^+(x)|) where W_i^- and W_i^+
// are the left and right cumulative integrals of w_i.
struct TailNorms {
  double sobolev_like[2] = {0, 0};
  double weighted_sup[2] = {0, 0};
  double tail_sup[2] = {0, 0};
  double total = 0.0;
};

TailNorms initial_tail_norms(const FluidParams& fp, const InitialData& data,
                             double dx = 0.01, double x_max = 0.0);

}  // namespace pmlab
