#include "pmlab/greens.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmlab {

namespace {

constexpr double k_pi = 3.141592653589793;
constexpr double k_two_pi = 6.283185307179586;

double sq(double a) { return a * a; }

// Translating heat kernel with diffusivity nu/2 and drift lam.
double heat_phi(double x, double lam, double nu, double t) {
  const double z = x - lam * t;
  return std::exp(-z * z / (2.0 * nu * t)) / std::sqrt(k_two_pi * nu * t);
}

double heat_phi_dx(double x, double lam, double nu, double t) {
  const double z = x - lam * t;
  return -(z / (nu * t)) * heat_phi(x, lam, nu, t);
}

double heat_phi_dxx(double x, double lam, double nu, double t) {
  const double z = x - lam * t;
  const double a = nu * t;
  return (z * z / (a * a) - 1.0 / a) * heat_phi(x, lam, nu, t);
}

// Row f of l_f mat (r_1 r_2): the kernel expressed in characteristic slots.
Vec2 project_row(const EigenStructure& es, const Mat2& mat, int f) {
  const double w0 = es.l[f][0] * mat[0] + es.l[f][1] * mat[2];
  const double w1 = es.l[f][0] * mat[1] + es.l[f][1] * mat[3];
  return {w0 * es.r[0][0] + w1 * es.r[0][1], w0 * es.r[1][0] + w1 * es.r[1][1]};
}

}  // namespace

// ============================ far-field model =============================

Mat2 gstar(const FluidParams& fp, double x, double t) {
  const double p = 0.5 * heat_phi(x, fp.c, fp.nu, t);
  const double m = 0.5 * heat_phi(x, -fp.c, fp.nu, t);
  return {p + m, (m - p) / fp.c, (m - p) * fp.c, p + m};
}

Mat2 gstar_dx(const FluidParams& fp, double x, double t) {
  const double p = 0.5 * heat_phi_dx(x, fp.c, fp.nu, t);
  const double m = 0.5 * heat_phi_dx(x, -fp.c, fp.nu, t);
  return {p + m, (m - p) / fp.c, (m - p) * fp.c, p + m};
}

Vec2 gstar_row(const FluidParams& fp, int family, double x, double t) {
  const double lam = (family == 0) ? fp.c : -fp.c;
  Vec2 out{0.0, 0.0};
  out[family] = heat_phi(x, lam, fp.nu, t);
  return out;
}

Vec2 gstar_row_dx(const FluidParams& fp, int family, double x, double t) {
  const double lam = (family == 0) ? fp.c : -fp.c;
  Vec2 out{0.0, 0.0};
  out[family] = heat_phi_dx(x, lam, fp.nu, t);
  return out;
}

// ============================ Fourier symbol ==============================

CMat2 kernel_symbol(const FluidParams& fp, double k, double t) {
  using C = std::complex<double>;
  const double c2 = fp.c * fp.c;
  const double nk2 = fp.nu * k * k;
  const double mbar = -0.5 * nk2;
  const C m01(0.0, k);
  const C m10(0.0, c2 * k);
  const double disc = mbar * mbar - c2 * k * k;  // omega^2, real either sign
  const double w2t2 = disc * t * t;

  if (std::abs(w2t2) < 1e-6) {
    // cosh and sinh(x)/x by their even series in x^2 = w2t2
    const double ebar = std::exp(mbar * t);
    const double ch = 1.0 + w2t2 * (0.5 + w2t2 * (1.0 / 24.0 + w2t2 / 720.0));
    const double sh =
        1.0 + w2t2 * (1.0 / 6.0 + w2t2 * (1.0 / 120.0 + w2t2 / 5040.0));
    const double a = ebar * ch;
    const double b = ebar * t * sh;
    return {a - b * mbar, b * m01, b * m10, a + b * mbar};
  }

  // spectral split: both exponents have non-positive real part
  const C w = std::sqrt(C(disc, 0.0));
  const C mup = C(mbar, 0.0) + w;
  const C mum = C(mbar, 0.0) - w;
  const C ep = std::exp(mup * t);
  const C em = std::exp(mum * t);
  const C den = 2.0 * w;
  const C s = (ep - em) / den;
  return {(ep * (-mum) - em * (-mup)) / den, s * m01, s * m10,
          (ep * mup - em * mum) / den};
}

// ============================ grid kernels ================================

int KernelGrid::index_of(double xq) const {
  const long j = std::lround((xq - x[0]) / dx);
  return static_cast<int>(std::clamp(j, 0L, static_cast<long>(n - 1)));
}

namespace {

KernelGrid invert_symbol(const FluidParams& fp, double t,
                         const GreensConfig& cfg, bool deriv) {
  if (cfg.n < 16 || (cfg.n & (cfg.n - 1)) != 0)
    throw std::invalid_argument("kernel grid size must be a power of two >= 16");
  if (!(cfg.L > 0.0) || !(t > 0.0))
    throw std::invalid_argument("kernel inversion needs L > 0 and t > 0");

  const int n = cfg.n;
  const int nh = n / 2;
  KernelGrid grid;
  grid.t = t;
  grid.L = cfg.L;
  grid.n = n;
  grid.dx = 2.0 * cfg.L / n;
  grid.delta_coef = std::exp(-fp.c * fp.c * t / fp.nu);
  grid.x.resize(n);
  for (int j = 0; j < n; ++j) grid.x[j] = -cfg.L + j * grid.dx;
  grid.val.assign(n, Mat2{0.0, 0.0, 0.0, 0.0});

  const double d = grid.delta_coef;
  const double k_cut = 0.85 * k_pi * nh / cfg.L;
  std::vector<CMat2> sym(nh + 1);
  for (int m = 0; m <= nh; ++m) {
    const double k = k_pi * m / cfg.L;
    CMat2 e = kernel_symbol(fp, k, t);
    if (!deriv) {
      e[0] -= d;
    } else {
      const std::complex<double> ik(0.0, k);
      const CMat2 raw = e;
      e[0] = ik * (raw[0] - d);
      e[1] = ik * raw[1] + d / fp.nu;
      e[2] = ik * raw[2] + d * fp.c * fp.c / fp.nu;
      e[3] = ik * raw[3];
    }
    // smooth roll-off instead of a hard truncation: without it the origin
    // kink leaves grid-scale ringing over the whole box that floors every
    // finite-difference check; bin 0 is untouched, so integrals are exact
    const double q2 = (k / k_cut) * (k / k_cut);
    const double q8 = q2 * q2 * q2 * q2;
    const double taper = std::exp(-q8);
    for (auto& v : e) v *= taper;
    if (m % 2 != 0)
      for (auto& v : e) v = -v;  // recenters the transform at x = -L
    sym[m] = e;
  }

  fftw_complex* in = fftw_alloc_complex(nh + 1);
  double* out = fftw_alloc_real(n);
  fftw_plan plan = fftw_plan_dft_c2r_1d(n, in, out, FFTW_ESTIMATE);
  const double scale = 1.0 / (2.0 * cfg.L);
  for (int e = 0; e < 4; ++e) {
    for (int m = 0; m <= nh; ++m) {
      in[m][0] = sym[m][e].real();
      in[m][1] = sym[m][e].imag();
    }
    in[0][1] = 0.0;
    in[nh][1] = 0.0;
    fftw_execute(plan);
    for (int j = 0; j < n; ++j) grid.val[j][e] = out[j] * scale;
  }
  fftw_destroy_plan(plan);
  fftw_free(in);
  fftw_free(out);
  return grid;
}

}  // namespace

KernelGrid fundamental_kernel(const FluidParams& fp, double t,
                              const GreensConfig& cfg) {
  return invert_symbol(fp, t, cfg, false);
}

KernelGrid fundamental_kernel_dx(const FluidParams& fp, double t,
                                 const GreensConfig& cfg) {
  return invert_symbol(fp, t, cfg, true);
}

// ============================ half-line kernels ===========================

HalfLineKernels half_line_kernels(const KernelGrid& grid) {
  const int n = grid.n;
  const int j0 = grid.center_index();
  const int count = n - j0;  // indices j0 .. n-1 cover x >= 0

  // integ[r] = int_{x_{j0+r}}^{x_{n-1}} e^{-2w} G(w) dw, trapezoid on the grid
  std::vector<Mat2> integ(count);
  Mat2 run{0.0, 0.0, 0.0, 0.0};
  integ[count - 1] = run;
  double er = std::exp(-2.0 * grid.x[n - 1]);
  for (int j = n - 2; j >= j0; --j) {
    const double el = std::exp(-2.0 * grid.x[j]);
    for (int e = 0; e < 4; ++e)
      run[e] += 0.5 * grid.dx *
                (el * grid.val[j][e] + er * grid.val[j + 1][e]);
    integ[j - j0] = run;
    er = el;
  }

  HalfLineKernels hk;
  hk.t = grid.t;
  hk.dx = grid.dx;
  const int np = count - 1;  // strictly positive abscissas
  hk.x.assign(grid.x.begin() + j0 + 1, grid.x.end());
  hk.g.resize(np);
  hk.tra.resize(np);
  hk.tra_dx.resize(np);
  hk.ref.resize(np);
  for (int r = 0; r < np; ++r) {
    const int j = j0 + 1 + r;
    const double ex = std::exp(2.0 * grid.x[j]);
    for (int e = 0; e < 4; ++e) {
      const double g = grid.val[j][e];
      const double tr = 2.0 * ex * integ[j - j0][e];
      hk.g[r][e] = g;
      hk.tra[r][e] = tr;
      hk.tra_dx[r][e] = 2.0 * (tr - g);
    }
    hk.ref[r][0] = hk.g[r][0] - hk.tra[r][0];
    hk.ref[r][1] = -(hk.g[r][1] - hk.tra[r][1]);
    hk.ref[r][2] = hk.g[r][2] - hk.tra[r][2];
    hk.ref[r][3] = -(hk.g[r][3] - hk.tra[r][3]);
  }
  return hk;
}

double transmissive_identity_residual(const HalfLineKernels& hk, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be positive");
  const int np = static_cast<int>(hk.x.size());
  double sup = 0.0;
  for (int r = stride; r + stride < np; ++r) {
    if (hk.x[r] < 0.5) continue;  // keep clear of the kink at the origin
    for (int e = 0; e < 4; ++e) {
      const double fd = (hk.tra[r + stride][e] - hk.tra[r - stride][e]) /
                        (2.0 * stride * hk.dx);
      sup = std::max(sup, std::abs(fd - hk.tra_dx[r][e]));
    }
  }
  return sup;
}

double reflected_row_mismatch(const FluidParams& fp, const HalfLineKernels& hk) {
  const EigenStructure es = eigen_structure(fp);
  double sup = 0.0;
  for (size_t r = 0; r < hk.x.size(); ++r) {
    for (int f = 0; f < 2; ++f) {
      const Vec2 row_r = project_row(es, hk.ref[r], f);
      const Vec2 row_t = project_row(es, hk.tra_dx[r], f);
      sup = std::max(sup, std::abs(row_r[0] - 0.5 * row_t[1]));
      sup = std::max(sup, std::abs(row_r[1] - 0.5 * row_t[0]));
    }
  }
  return sup;
}

// ============================ pointwise bounds ============================

RayBoundScan row_bound_scan(const FluidParams& fp,
                            const std::vector<double>& times,
                            const GreensConfig& cfg) {
  const EigenStructure es = eigen_structure(fp);
  RayBoundScan scan;
  scan.times = times;
  scan.same_weight_sup[0].assign(times.size(), 0.0);
  scan.same_weight_sup[1].assign(times.size(), 0.0);

  for (size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times[ti];
    const KernelGrid grid = fundamental_kernel(fp, t, cfg);
    const double sig = std::sqrt(fp.nu * t);

    std::vector<double> xs;
    // offsets stop at 6 sigma: beyond that the weight undercuts the spectral
    // truncation noise of the grid and the ratio would measure noise only
    for (const double lam : {es.lambda[0], es.lambda[1]})
      for (const double o : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0,
                             4.0, -4.0, 5.0, -5.0, 6.0, -6.0})
        xs.push_back(lam * t + o * sig);
    for (const double f : {0.0, 0.35, -0.35, 0.7, -0.7})
      xs.push_back(f * es.lambda[0] * t);

    for (const double xq : xs) {
      if (std::abs(xq) > cfg.L - 1.0) continue;
      const int j = grid.index_of(xq);
      const double x = grid.x[j];
      for (int f = 0; f < 2; ++f) {
        const int o = 1 - f;
        const Vec2 row = project_row(es, grid.val[j], f);
        const Vec2 star = gstar_row(fp, f, x, t);
        const Vec2 star_dx = gstar_row_dx(fp, o, x, t);
        double n_ref = 0.0;
        double n_unref = 0.0;
        for (int cj = 0; cj < 2; ++cj) {
          n_ref = std::max(n_ref, std::abs(row[cj] - star[cj] -
                                           es.gamma_coef[o] * star_dx[cj]));
          n_unref = std::max(n_unref, std::abs(row[cj] - star[cj]));
        }
        const double e_own = std::exp(-sq(x - es.lambda[f] * t) / (4.0 * fp.nu * t));
        const double e_oth = std::exp(-sq(x - es.lambda[o] * t) / (4.0 * fp.nu * t));
        const double w_ref = e_own / t + e_oth / (std::sqrt(t + 1.0) * t);
        const double w_unref = (e_own + e_oth) / std::sqrt((t + 1.0) * t);
        scan.refined_sup[f] = std::max(scan.refined_sup[f], n_ref / w_ref);
        scan.unrefined_sup[f] = std::max(scan.unrefined_sup[f], n_unref / w_unref);
        scan.same_weight_sup[f][ti] =
            std::max(scan.same_weight_sup[f][ti], n_unref / w_ref);
      }
    }
  }
  return scan;
}

BoundReport smooth_part_scan(const FluidParams& fp,
                             const std::vector<double>& times,
                             const GreensConfig& cfg) {
  BoundReport rep;
  for (const double t : times) {
    const KernelGrid grid = fundamental_kernel(fp, t, cfg);
    const double sig = std::sqrt(fp.nu * t);
    const double xmax = std::min(cfg.L - 1.0, fp.c * t + 8.0 * sig + 2.0);
    for (int j = 0; j < grid.n; ++j) {
      const double x = grid.x[j];
      const double ax = std::abs(x);
      if (ax < 0.5 || ax > xmax) continue;
      double num = 0.0;
      for (int e = 0; e < 4; ++e) num = std::max(num, std::abs(grid.val[j][e]));
      const double w =
          (std::exp(-sq(x - fp.c * t) / (4.0 * fp.nu * t)) +
           std::exp(-sq(x + fp.c * t) / (4.0 * fp.nu * t))) / std::sqrt(t) +
          std::exp(-(ax + t) / 5.0);
      const double ratio = num / w;
      if (ratio > rep.sup_ratio) {
        rep.sup_ratio = ratio;
        rep.worst_x = x;
        rep.worst_t = t;
      }
    }
  }
  return rep;
}

// ============================ evolution identity ==========================

double projected_identity_residual(const FluidParams& fp, double t, int m,
                                   const GreensConfig& cfg) {
  if (m < 1) throw std::invalid_argument("step multiple must be positive");
  const EigenStructure es = eigen_structure(fp);
  const double dx = 2.0 * cfg.L / cfg.n;
  const double h = m * dx;
  if (!(t > h)) throw std::invalid_argument("time too small for the FD step");

  const KernelGrid g0 = fundamental_kernel(fp, t, cfg);
  const KernelGrid gp = fundamental_kernel(fp, t + h, cfg);
  const KernelGrid gm = fundamental_kernel(fp, t - h, cfg);

  // deviation from the far-field model in characteristic slots
  auto dev = [&](const KernelGrid& g, int j, int fam, int slot) {
    return project_row(es, g.val[j], fam)[slot] -
           gstar_row(fp, fam, g.x[j], g.t)[slot];
  };

  const double sig = std::sqrt(fp.nu * t);
  const double xmax = std::min(cfg.L - 2.0, fp.c * t + 6.0 * sig);
  double sup = 0.0;
  for (int j = m; j + m < g0.n; ++j) {
    const double x = g0.x[j];
    const double ax = std::abs(x);
    if (ax < 0.5 || ax > xmax) continue;
    for (int f = 0; f < 2; ++f) {
      const int o = 1 - f;
      for (int slot = 0; slot < 2; ++slot) {
        const double ddt = (dev(gp, j, f, slot) - dev(gm, j, f, slot)) / (2.0 * h);
        const double dfm = dev(g0, j - m, f, slot);
        const double df0 = dev(g0, j, f, slot);
        const double dfp = dev(g0, j + m, f, slot);
        const double ddx = (dfp - dfm) / (2.0 * h);
        const double d2f = (dfp - 2.0 * df0 + dfm) / (h * h);
        const double d2o = (dev(g0, j + m, o, slot) - 2.0 * dev(g0, j, o, slot) +
                            dev(g0, j - m, o, slot)) / (h * h);
        const double lam_o = (o == 0) ? fp.c : -fp.c;
        const double star2 = (slot == o) ? heat_phi_dxx(x, lam_o, fp.nu, t) : 0.0;
        const double res = ddt + es.lambda[f] * ddx - 0.5 * fp.nu * d2f -
                           0.5 * fp.nu * (d2o + star2);
        sup = std::max(sup, std::abs(res));
      }
    }
  }
  return sup;
}

}  // namespace pmlab
