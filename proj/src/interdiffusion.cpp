#include "pmlab/interdiffusion.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pmlab/quadrature.hpp"

namespace pmlab {

namespace {

constexpr double k_two_pi = 6.2831853071795865;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// ==== spectral workspace ====================================================

struct Spectral {
  int n;
  double L, dx;
  std::vector<double> x, k;
  std::vector<double> real_buf;
  std::vector<std::complex<double>> spec_buf;
  fftw_plan fwd, bwd;
  int dealias_max;  // highest kept mode for quadratic products

  Spectral(int n_, double L_) : n(n_), L(L_), dx(2.0 * L_ / n_) {
    x.resize(n);
    for (int j = 0; j < n; ++j) x[j] = -L + j * dx;
    k.resize(n / 2 + 1);
    for (int m = 0; m <= n / 2; ++m) k[m] = k_two_pi * m / (2.0 * L);
    real_buf.resize(n);
    spec_buf.resize(n / 2 + 1);
    fwd = fftw_plan_dft_r2c_1d(n, real_buf.data(),
                               reinterpret_cast<fftw_complex*>(spec_buf.data()), FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(spec_buf.data()),
                               real_buf.data(), FFTW_ESTIMATE);
    dealias_max = n / 3;
  }
  ~Spectral() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  // real_buf -> spec_buf (unnormalized)
  void forward() { fftw_execute(fwd); }
  // spec_buf -> real_buf, normalized by 1/n; clobbers spec_buf
  void inverse() {
    fftw_execute(bwd);
    for (int j = 0; j < n; ++j) real_buf[j] /= n;
  }

  void to_real(const std::vector<std::complex<double>>& hat, std::vector<double>& out) {
    spec_buf = hat;
    inverse();
    out = real_buf;
  }
};

// diffusion-wave samples at one stage time, refreshed lazily
struct StageTheta {
  const DiffusionWave* own = nullptr;
  const DiffusionWave* opp = nullptr;
  const std::vector<double>* x = nullptr;
  bool couple = true;
  double t = -1.0;
  std::vector<double> own_v, opp_v;

  void ensure(double tq) {
    if (tq == t) return;
    const std::size_t n = x->size();
    own_v.resize(n);
    opp_v.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (couple) own_v[j] = theta(*own, (*x)[j], tq);
      opp_v[j] = theta(*opp, (*x)[j], tq);
    }
    t = tq;
  }
};

}  // namespace

// ==== WaveField accessors ===================================================

double WaveField::value_at(std::size_t snap, double xq) const {
  const WaveSnapshot& s = snaps.at(snap);
  const double dx = x[1] - x[0];
  if (xq <= x.front() || xq >= x.back()) return 0.0;
  std::ptrdiff_t j0 = static_cast<std::ptrdiff_t>(std::floor((xq - x[0]) / dx));
  j0 = std::clamp<std::ptrdiff_t>(j0, 1, static_cast<std::ptrdiff_t>(n) - 3);
  const double u = (xq - x[j0]) / dx;  // in [0, 1) away from the edges
  const double f0 = s.value[j0 - 1], f1 = s.value[j0], f2 = s.value[j0 + 1], f3 = s.value[j0 + 2];
  // 4-point Lagrange weights at offsets -1, 0, 1, 2
  const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
  return w0 * f0 + w1 * f1 + w2 * f2 + w3 * f3;
}

double WaveField::integral(std::size_t snap) const {
  const WaveSnapshot& s = snaps.at(snap);
  double sum = 0.0;
  for (double v : s.value) sum += v;
  return sum * (x[1] - x[0]);
}

std::size_t WaveField::center_index() const { return static_cast<std::size_t>(n) / 2; }

// ==== solver ================================================================

WaveField solve_interaction_wave(const FluidParams& fp, const MassPair& masses, int family,
                                 const SpectralConfig& cfg, bool advect_by_own_wave) {
  if (family != 1 && family != 2) throw std::invalid_argument("family must be 1 or 2");
  if (!is_pow2(cfg.n) || cfg.n < 16) throw std::invalid_argument("n must be a power of two >= 16");
  if (!(cfg.dt > 0.0) || !(cfg.t_end >= cfg.dt))
    throw std::invalid_argument("need 0 < dt <= t_end");
  if (!(cfg.boundary_tol > 0.0)) throw std::invalid_argument("boundary_tol must be positive");

  double L = cfg.L;
  if (L <= 0.0) {
    const double need = fp.c * (cfg.t_end + 1.0) + 12.0 * std::sqrt(fp.nu * (cfg.t_end + 1.0));
    L = 16.0 * std::ceil(need / 16.0);
  }

  const EigenStructure es = eigen_structure(fp);
  const int i = family - 1, ip = 1 - i;
  const double lam = es.lambda[i];
  const DiffusionWave own = make_wave(i == 0 ? masses.M1 : masses.M2, lam, fp.nu);
  const DiffusionWave opp = make_wave(ip == 0 ? masses.M1 : masses.M2, es.lambda[ip], fp.nu);

  Spectral sp(cfg.n, L);
  const int nh = cfg.n / 2 + 1;
  const double dt = cfg.dt;

  // exact per-mode propagators for the linear part over dt/2 and dt
  std::vector<std::complex<double>> prop_half(nh), prop_full(nh);
  for (int m = 0; m < nh; ++m) {
    const std::complex<double> lin(-0.5 * fp.nu * sp.k[m] * sp.k[m], -lam * sp.k[m]);
    prop_half[m] = std::exp(lin * (0.5 * dt));
    prop_full[m] = prop_half[m] * prop_half[m];
  }

  StageTheta stage;
  stage.own = &own;
  stage.opp = &opp;
  stage.x = &sp.x;
  stage.couple = advect_by_own_wave;
  StageTheta stage_half = stage;

  std::vector<double> xi_real(cfg.n);
  // nonlinear term: N(t, hat) = -ik dealias(fft(theta_own xi + theta_opp^2 / 2))
  auto nonlinear = [&](double tq, const std::vector<std::complex<double>>& hat, StageTheta& th,
                       std::vector<std::complex<double>>& out) {
    th.ensure(tq);
    sp.to_real(hat, xi_real);
    for (int j = 0; j < cfg.n; ++j) {
      const double coupled = advect_by_own_wave ? th.own_v[j] * xi_real[j] : 0.0;
      sp.real_buf[j] = coupled + 0.5 * th.opp_v[j] * th.opp_v[j];
    }
    sp.forward();
    for (int m = 0; m < nh; ++m) {
      if (m > sp.dealias_max) {
        out[m] = 0.0;
      } else {
        out[m] = std::complex<double>(0.0, -sp.k[m]) * sp.spec_buf[m];
      }
    }
  };

  const long n_steps = std::lround(cfg.t_end / dt);
  if (std::abs(n_steps * dt - cfg.t_end) > 1e-9 * std::max(1.0, cfg.t_end))
    throw std::invalid_argument("t_end must be an integer multiple of dt");

  // snapshot step indices, sorted and deduplicated
  std::vector<long> snap_steps;
  for (double ts : cfg.snapshot_times) {
    if (ts < -1e-12 || ts > cfg.t_end + 1e-9) throw std::invalid_argument("snapshot time out of range");
    snap_steps.push_back(std::clamp(std::lround(ts / dt), 0L, n_steps));
  }
  std::sort(snap_steps.begin(), snap_steps.end());
  snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());

  WaveField field;
  field.family = family;
  field.L = L;
  field.n = cfg.n;
  field.x = sp.x;

  std::vector<std::complex<double>> state(nh, 0.0), n1(nh), n2(nh), n3(nh), n4(nh), tmp(nh);
  double running_max = 0.0;

  auto record = [&](long step) {
    WaveSnapshot snap;
    snap.t = step * dt;
    sp.to_real(state, snap.value);
    for (int m = 0; m < nh; ++m) tmp[m] = std::complex<double>(0.0, sp.k[m]) * state[m];
    sp.to_real(tmp, snap.dx);
    double vmax = 0.0;
    for (double v : snap.value) vmax = std::max(vmax, std::abs(v));
    if (!std::isfinite(vmax) || (running_max > 0.0 && vmax > 10.0 * running_max && vmax > 1e-8))
      throw std::runtime_error("interaction-wave solve unstable; reduce dt");
    running_max = std::max(running_max, vmax);
    const double edge = std::max(std::abs(snap.value.front()), std::abs(snap.value.back()));
    field.boundary_max = std::max(field.boundary_max, edge);
    if (edge > cfg.boundary_tol)
      throw std::runtime_error("interaction wave reached the box edge; enlarge L");
    field.snaps.push_back(std::move(snap));
  };

  std::size_t next_snap = 0;
  if (next_snap < snap_steps.size() && snap_steps[next_snap] == 0) {
    record(0);
    ++next_snap;
  }

  for (long step = 0; step < n_steps; ++step) {
    const double t0 = step * dt;
    // integrating-factor RK4: propagators fold the exact linear flow into
    // the classical stage combination
    nonlinear(t0, state, stage, n1);
    for (int m = 0; m < nh; ++m) tmp[m] = prop_half[m] * (state[m] + 0.5 * dt * n1[m]);
    nonlinear(t0 + 0.5 * dt, tmp, stage_half, n2);
    for (int m = 0; m < nh; ++m) tmp[m] = prop_half[m] * state[m] + 0.5 * dt * n2[m];
    nonlinear(t0 + 0.5 * dt, tmp, stage_half, n3);
    for (int m = 0; m < nh; ++m) tmp[m] = prop_full[m] * state[m] + dt * prop_half[m] * n3[m];
    nonlinear(t0 + dt, tmp, stage, n4);
    for (int m = 0; m < nh; ++m) {
      state[m] = prop_full[m] * state[m] +
                 (dt / 6.0) * (prop_full[m] * n1[m] + 2.0 * prop_half[m] * (n2[m] + n3[m]) + n4[m]);
    }
    if (next_snap < snap_steps.size() && snap_steps[next_snap] == step + 1) {
      record(step + 1);
      ++next_snap;
    }
  }
  return field;
}

// ==== lemma-style relation check ============================================

RelationCheck interaction_relation_check(const FluidParams& fp, const MassPair& masses,
                                         const WaveField& field, int deriv_order) {
  if (deriv_order != 0 && deriv_order != 1) throw std::invalid_argument("deriv_order must be 0 or 1");
  const EigenStructure es = eigen_structure(fp);
  const int i = field.family - 1, ip = 1 - i;
  const double lam = es.lambda[i];
  const DiffusionWave opp = make_wave(ip == 0 ? masses.M1 : masses.M2, es.lambda[ip], fp.nu);
  const double sign = (field.family == 1) ? -1.0 : 1.0;
  const double scale = sign / (4.0 * fp.c);

  RelationCheck out;
  for (std::size_t s = 0; s < field.snaps.size(); ++s) {
    const WaveSnapshot& snap = field.snaps[s];
    const double T = snap.t + 1.0;
    double sup = 0.0;
    for (int j = 0; j < field.n; ++j) {
      const double xj = field.x[j];
      double model;
      if (deriv_order == 0) {
        const double th = theta(opp, xj, snap.t);
        model = scale * th * th;
      } else {
        model = scale * 2.0 * theta(opp, xj, snap.t) * theta_dx(opp, xj, snap.t);
      }
      const double num = std::abs((deriv_order == 0 ? snap.value[j] : snap.dx[j]) - model);
      const double z = xj - lam * T;
      const double w = std::pow(T, -0.5 * deriv_order) * std::pow(z * z + T, -0.75);
      sup = std::max(sup, num / w);
    }
    out.t.push_back(snap.t);
    out.sup_ratio.push_back(sup);
    out.overall = std::max(out.overall, sup);
  }
  return out;
}

// ==== interface functionals =================================================

namespace {

// common nested Simpson driver: integrand(y, s) against the backward kernel
// (t-s)^(-1/2) exp(-(y + lam (t-s))^2 / (2 nu (t-s))) over [sqrt(t), t] x R,
// with a source window center +- half-width supplied per s
template <typename Src, typename Win>
double backward_kernel_integral(double t, double lam, double nu, const Src& src, const Win& win,
                                const FunctionalQuad& q) {
  if (!(t > 1.0)) throw std::invalid_argument("interface functionals need t > 1");
  auto outer = [&](double s) {
    if (t - s <= 1e-12 * t) {
      // kernel collapses to a point mass of weight sqrt(2 pi nu) at y = 0
      return std::sqrt(k_two_pi * nu) * src(0.0, t);
    }
    const double dtm = t - s;
    const double kc = -lam * dtm;             // kernel center
    const double kw = q.y_sigmas * std::sqrt(nu * dtm);
    auto [sc, sw] = win(s);                   // source window center and half-width
    const double a = std::max(kc - kw, sc - sw);
    const double b = std::min(kc + kw, sc + sw);
    if (a >= b) return 0.0;
    auto inner = [&](double y) {
      const double u = y + lam * dtm;
      return std::exp(-u * u / (2.0 * nu * dtm)) * src(y, s);
    };
    return simpson(inner, a, b, q.y_panels) / std::sqrt(dtm);
  };
  return simpson(outer, std::sqrt(t), t, q.s_panels);
}

}  // namespace

double interface_functional_family(const FluidParams& fp, const MassPair& masses, int family,
                                   double t, const FunctionalQuad& q) {
  if (family != 1 && family != 2) throw std::invalid_argument("family must be 1 or 2");
  const EigenStructure es = eigen_structure(fp);
  const int i = family - 1, ip = 1 - i;
  const DiffusionWave opp = make_wave(ip == 0 ? masses.M1 : masses.M2, es.lambda[ip], fp.nu);
  const double sign = (family == 1) ? -1.0 : 1.0;
  const double pref = sign * std::sqrt(fp.nu) / (4.0 * fp.c * std::sqrt(k_two_pi));

  auto src = [&](double y, double s) {
    const double g = theta_dx(opp, y, s);
    return g * g;
  };
  auto win = [&](double s) {
    return std::pair<double, double>(es.lambda[ip] * (s + 1.0),
                                     q.y_sigmas * std::sqrt(fp.nu * (s + 1.0)));
  };
  return pref * backward_kernel_integral(t, es.lambda[i], fp.nu, src, win, q);
}

double interface_functional(const FluidParams& fp, const MassPair& masses, double t,
                            const FunctionalQuad& q) {
  return (2.0 * fp.c * fp.c / fp.p2) * (interface_functional_family(fp, masses, 1, t, q) +
                                        interface_functional_family(fp, masses, 2, t, q));
}

double interface_functional_model(const FluidParams& fp, const MassPair& masses, double t,
                                  const FunctionalQuad& q) {
  const double c = fp.c, nu = fp.nu;
  const double m_diff = masses.M1 * masses.M1 - masses.M2 * masses.M2;
  const double pref = c * m_diff / (2.0 * k_two_pi * fp.p2 * std::sqrt(k_two_pi * nu));

  // squared x derivative of the unit Gaussian hump riding the backward ray
  auto src = [&](double y, double s) {
    const double T = s + 1.0;
    const double u = y + c * T;
    const double g = -(u / (nu * T)) * std::exp(-u * u / (2.0 * nu * T)) / std::sqrt(T);
    return g * g;
  };
  auto win = [&](double s) {
    return std::pair<double, double>(-c * (s + 1.0), q.y_sigmas * std::sqrt(nu * (s + 1.0)));
  };
  return pref * backward_kernel_integral(t, c, nu, src, win, q);
}

BoundarySeries interface_asymptotics(const FluidParams& fp, const MassPair& masses,
                                     const WaveField& xi1, const WaveField& xi2,
                                     const FunctionalQuad& q) {
  if (xi1.snaps.size() != xi2.snaps.size())
    throw std::invalid_argument("snapshot sets must match");
  BoundarySeries out;
  const std::size_t c1 = xi1.center_index(), c2 = xi2.center_index();
  for (std::size_t s = 0; s < xi1.snaps.size(); ++s) {
    if (std::abs(xi1.snaps[s].t - xi2.snaps[s].t) > 1e-12)
      throw std::invalid_argument("snapshot sets must match");
    const double t = xi1.snaps[s].t;
    if (t <= 1.0) continue;
    const double lhs =
        (2.0 * fp.c * fp.c / fp.p2) * (xi1.snaps[s].value[c1] + xi2.snaps[s].value[c2]);
    const double rhs = interface_functional(fp, masses, t, q);
    out.t.push_back(t);
    out.boundary_sum.push_back(lhs);
    out.functional.push_back(rhs);
    out.diff.push_back(lhs - rhs);
  }
  return out;
}

}  // namespace pmlab
