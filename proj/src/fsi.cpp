#include "pmlab/fsi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmlab {

namespace {

// ==== spatial operators (one half-line) =====================================

// interface-face volume by quadratic extrapolation from the first three cells
double face_v0(const std::vector<double>& v) {
  return (15.0 * v[0] - 10.0 * v[1] + 3.0 * v[2]) / 8.0;
}

// one-sided velocity gradient at the interface face through (0, Vt) and the
// first two cell centers
double face_grad0(const std::vector<double>& u, double Vt, double h) {
  return (-8.0 * Vt / 3.0 + 3.0 * u[0] - u[1] / 3.0) / h;
}

// mass-equation face velocities: Dirichlet Vt at the interface, zero ghost far
void mass_faces(const std::vector<double>& u, double Vt, std::vector<double>& uf) {
  const std::size_t n = u.size();
  uf.resize(n + 1);
  uf[0] = Vt;
  for (std::size_t j = 1; j < n; ++j) uf[j] = 0.5 * (u[j - 1] + u[j]);
  uf[n] = 0.5 * u[n - 1];
}

// pressure part of the stress at every face (ghost state v = 1, p = 1)
void pressure_faces(const FluidParams& fp, const std::vector<double>& v,
                    std::vector<double>& sp) {
  const std::size_t n = v.size();
  sp.resize(n + 1);
  sp[0] = -pressure(fp, face_v0(v));
  double p_prev = pressure(fp, v[0]);
  for (std::size_t j = 1; j < n; ++j) {
    const double p_cur = pressure(fp, v[j]);
    sp[j] = -0.5 * (p_prev + p_cur);
    p_prev = p_cur;
  }
  sp[n] = -0.5 * (p_prev + 1.0);
}

// viscous part of the stress at every face for a given volume field
void viscous_faces(const FluidParams& fp, const std::vector<double>& v,
                   const std::vector<double>& u, double Vt, double h, std::vector<double>& sv) {
  const std::size_t n = v.size();
  sv.resize(n + 1);
  sv[0] = fp.nu * face_grad0(u, Vt, h) / face_v0(v);
  for (std::size_t j = 1; j < n; ++j)
    sv[j] = fp.nu * (u[j] - u[j - 1]) / (h * 0.5 * (v[j - 1] + v[j]));
  sv[n] = fp.nu * (0.0 - u[n - 1]) / (h * 0.5 * (v[n - 1] + 1.0));
}

void divergence(const std::vector<double>& f, double h, std::vector<double>& out) {
  const std::size_t n = f.size() - 1;
  out.resize(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = (f[j + 1] - f[j]) / h;
}

// ==== implicit viscous operator =============================================

// du/dt = A u + b Vt with A tridiagonal; built from a frozen volume field.
// s0_* give the interface viscous stress sigma_v0 = s0_u0 u0 + s0_u1 u1 + s0_v Vt.
struct ViscousOp {
  std::vector<double> lo, di, up;
  double bv0 = 0.0;
  double s0_u0 = 0.0, s0_u1 = 0.0, s0_v = 0.0;

  void build(const FluidParams& fp, const std::vector<double>& vstar, double h) {
    const std::size_t n = vstar.size();
    lo.assign(n, 0.0);
    di.assign(n, 0.0);
    up.assign(n, 0.0);
    std::vector<double> k(n + 1);
    const double q = fp.nu / (h * face_v0(vstar));
    for (std::size_t j = 1; j < n; ++j) k[j] = fp.nu / (h * 0.5 * (vstar[j - 1] + vstar[j]));
    k[n] = fp.nu / (h * 0.5 * (vstar[n - 1] + 1.0));
    di[0] = (-k[1] - 3.0 * q) / h;
    up[0] = (k[1] + q / 3.0) / h;
    bv0 = (8.0 * q / 3.0) / h;
    for (std::size_t j = 1; j + 1 < n; ++j) {
      lo[j] = k[j] / h;
      di[j] = -(k[j] + k[j + 1]) / h;
      up[j] = k[j + 1] / h;
    }
    lo[n - 1] = k[n - 1] / h;
    di[n - 1] = -(k[n - 1] + k[n]) / h;
    s0_u0 = 3.0 * q;
    s0_u1 = -q / 3.0;
    s0_v = -8.0 * q / 3.0;
  }

  void apply(const std::vector<double>& u, double Vt, std::vector<double>& out) const {
    const std::size_t n = u.size();
    out.resize(n);
    out[0] = di[0] * u[0] + up[0] * u[1] + bv0 * Vt;
    for (std::size_t j = 1; j + 1 < n; ++j)
      out[j] = lo[j] * u[j - 1] + di[j] * u[j] + up[j] * u[j + 1];
    out[n - 1] = lo[n - 1] * u[n - 2] + di[n - 1] * u[n - 1];
  }

  double interface_stress(const std::vector<double>& u, double Vt) const {
    return s0_u0 * u[0] + s0_u1 * u[1] + s0_v * Vt;
  }
};

// solves (I - c A) x = rhs by the Thomas algorithm
void solve_shifted(const ViscousOp& op, double c, std::vector<double> rhs,
                   std::vector<double>& x) {
  const std::size_t n = rhs.size();
  std::vector<double> d(n), e(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = 1.0 - c * op.di[j];
  e[0] = -c * op.up[0] / d[0];
  rhs[0] /= d[0];
  for (std::size_t j = 1; j < n; ++j) {
    const double l = -c * op.lo[j];
    const double m = d[j] - l * e[j - 1];
    if (j + 1 < n) e[j] = -c * op.up[j] / m;
    rhs[j] = (rhs[j] - l * rhs[j - 1]) / m;
  }
  x.resize(n);
  x[n - 1] = rhs[n - 1];
  for (std::size_t j = n - 1; j-- > 0;) x[j] = rhs[j] - e[j] * x[j + 1];
}

// ==== diagnostics ===========================================================

// fluid mass relative to the uniform background; summing the deviations keeps
// the partial sums small, so the diagnostic measures drift instead of creating
// it through rounding of a large near-constant sum
double fluid_mass_dev(const SimState& s) {
  double sum = 0.0;
  for (double v : s.v_r) sum += v - 1.0;
  for (double v : s.v_m) sum += v - 1.0;
  return sum * s.h;
}

double total_momentum(const SimState& s) {
  double sum = 0.0;
  for (double u : s.u_r) sum += u;
  for (double u : s.u_m) sum -= u;  // mirrored sign
  return sum * s.h + s.V;
}

void sanity_check(const SimState& s) {
  if (!std::isfinite(s.V)) throw std::runtime_error("point-mass velocity became non-finite");
  // the far-field Dirichlet state is only exact while nothing reaches the
  // boundary; a sized domain keeps the outermost cells quiescent to roundoff
  const double edge = std::max(
      {std::abs(s.v_r.back() - 1.0), std::abs(s.v_m.back() - 1.0),
       std::abs(s.u_r.back()), std::abs(s.u_m.back())});
  if (edge > 1e-9)
    throw std::runtime_error(
        "the solution reached the far boundary; enlarge the domain half-width L");
  for (const auto* v : {&s.v_r, &s.v_m}) {
    for (double vv : *v) {
      if (!(vv > 0.05 && vv < 20.0))
        throw std::runtime_error("specific volume left its physical range; reduce dt");
    }
  }
}

// full explicit right-hand side of one half-line, used by the rk3 scheme
struct HalfRhs {
  std::vector<double> dv, du, uf, sf, sv;
  double s0 = 0.0;  // total interface stress

  void eval(const FluidParams& fp, const std::vector<double>& v, const std::vector<double>& u,
            double Vt, double h) {
    mass_faces(u, Vt, uf);
    divergence(uf, h, dv);
    pressure_faces(fp, v, sf);
    viscous_faces(fp, v, u, Vt, h, sv);
    for (std::size_t j = 0; j < sf.size(); ++j) sf[j] += sv[j];
    s0 = sf[0];
    divergence(sf, h, du);
  }
};

}  // namespace

// ==== scenarios =============================================================

Scenario scenario_from_name(const std::string& name) {
  if (name == "equilibrium") return Scenario::equilibrium;
  if (name == "gaussian-momentum") return Scenario::gaussian_momentum;
  if (name == "zero-mass-momentum") return Scenario::zero_mass_momentum;
  if (name == "antisymmetric") return Scenario::antisymmetric;
  if (name == "mirror-symmetric") return Scenario::mirror_symmetric;
  if (name == "generic") return Scenario::generic;
  if (name == "traveling-pulse") return Scenario::traveling_pulse;
  throw std::invalid_argument("unknown scenario: " + name);
}

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::equilibrium: return "equilibrium";
    case Scenario::gaussian_momentum: return "gaussian-momentum";
    case Scenario::zero_mass_momentum: return "zero-mass-momentum";
    case Scenario::antisymmetric: return "antisymmetric";
    case Scenario::mirror_symmetric: return "mirror-symmetric";
    case Scenario::generic: return "generic";
    case Scenario::traveling_pulse: return "traveling-pulse";
  }
  throw std::logic_error("unreachable");
}

InitialData make_scenario(Scenario s, double amplitude, double width, double center) {
  InitialData data;
  data.V0 = 0.0;
  switch (s) {
    case Scenario::equilibrium:
      break;
    case Scenario::gaussian_momentum:
      data.u = gaussian_bump(amplitude, center, width);
      break;
    case Scenario::zero_mass_momentum:
      data.dv = gaussian_slope_bump(amplitude, -center, width);
      data.u = gaussian_bump(amplitude, center, width);
      break;
    case Scenario::antisymmetric:
      data.dv = gaussian_bump(amplitude, -center, width);
      data.u = gaussian_slope_bump(amplitude, center, width);
      break;
    case Scenario::mirror_symmetric:
      data.dv = gaussian_bump(amplitude, 0.0, width);
      data.u = gaussian_slope_bump(amplitude, 0.0, width);
      break;
    case Scenario::generic:
      data.dv = gaussian_bump(-amplitude, -center, width);
      data.u = gaussian_bump(amplitude, center, width);
      break;
    case Scenario::traveling_pulse:
      data.dv = gaussian_bump(-amplitude, center, width);
      data.u = gaussian_bump(amplitude, center, width);
      break;
  }
  return data;
}

// ==== driver ================================================================

SimResult run_simulation(const FluidParams& fp, const InitialData& data, const SimConfig& cfg) {
  if (!(cfg.h > 0.0)) throw std::invalid_argument("h must be positive");
  if (!(cfg.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (cfg.series_stride < 1) throw std::invalid_argument("series_stride must be >= 1");

  double L = cfg.L;
  if (L <= 0.0) {
    // sized so the acoustic cone of the whole initial support, padded by the
    // diffusive spread, stays away from the far boundary until t_end
    const double reach = std::max(data.dv.support_radius(), data.u.support_radius());
    L = reach + fp.c * (cfg.t_end + 1.0) + 12.0 * std::sqrt(fp.nu * (cfg.t_end + 1.0));
  }
  const long n = static_cast<long>(std::ceil(L / cfg.h));
  if (n < 8) throw std::invalid_argument("domain too short for the stencils");
  const double h = cfg.h;

  double dt = cfg.dt;
  if (dt <= 0.0) {
    if (cfg.scheme == TimeScheme::semi_implicit) {
      const double acoustic = 0.4 * h / fp.c;
      const double ab2 = 0.6 * std::cbrt(2.0 * fp.nu * h * h /
                                         (std::pow(fp.c, 4) * 9.8696044010893586));
      dt = std::min({acoustic, ab2, 0.5 * fp.nu / (fp.c * fp.c)});
    } else {
      dt = std::min(0.3 * h * h / fp.nu, 0.5 * h / fp.c);
    }
  }
  const long n_steps = std::max(1L, static_cast<long>(std::ceil(cfg.t_end / dt - 1e-9)));
  dt = cfg.t_end / n_steps;

  SimState st;
  st.h = h;
  st.n = n;
  st.V = data.V0;
  st.v_r.resize(n);
  st.u_r.resize(n);
  st.v_m.resize(n);
  st.u_m.resize(n);
  for (long j = 0; j < n; ++j) {
    const double x = (j + 0.5) * h;
    st.v_r[j] = 1.0 + data.dv(x);
    st.u_r[j] = data.u(x);
    st.v_m[j] = 1.0 + data.dv(-x);
    st.u_m[j] = -data.u(-x);
  }

  SimResult res;
  res.cfg = cfg;
  res.cfg.L = L;
  res.cfg.dt = dt;
  res.mass0 = fluid_mass_dev(st);
  res.mom0 = total_momentum(st);

  std::vector<long> snap_steps;
  for (double ts : cfg.snapshot_times) {
    if (ts < -1e-12 || ts > cfg.t_end + 1e-9)
      throw std::invalid_argument("snapshot time out of range");
    snap_steps.push_back(std::clamp(std::lround(ts / dt), 0L, n_steps));
  }
  std::sort(snap_steps.begin(), snap_steps.end());
  snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());
  std::size_t next_snap = 0;

  auto record_series = [&](long step) {
    SeriesPoint pt;
    pt.t = step * dt;
    pt.V = st.V;
    pt.mass_err = fluid_mass_dev(st) - res.mass0;
    pt.mom_err = total_momentum(st) - res.mom0;
    res.max_mass_drift = std::max(res.max_mass_drift, std::abs(pt.mass_err));
    res.max_mom_drift = std::max(res.max_mom_drift, std::abs(pt.mom_err));
    res.series.push_back(pt);
  };
  auto maybe_snapshot = [&](long step) {
    if (next_snap < snap_steps.size() && snap_steps[next_snap] == step) {
      res.snaps.push_back({step * dt, st.v_r, st.u_r, st.v_m, st.u_m});
      ++next_snap;
    }
  };
  record_series(0);
  maybe_snapshot(0);

  if (cfg.scheme == TimeScheme::semi_implicit) {
    // pressure flux by a two-step explicit combination, viscous flux by the
    // trapezoid rule around a frozen volume field, interface velocity folded
    // into the implicit solve by superposition
    std::vector<double> pdiv_r, pdiv_m, pdiv_r_prev, pdiv_m_prev;
    std::vector<double> vstar(n), visc_r, visc_m, rhs_r, rhs_m;
    std::vector<double> u0_r, u0_m, u1_r, u1_m, bvec(n, 0.0), uf(n + 1);
    std::vector<double> v_r_prev = st.v_r, v_m_prev = st.v_m;
    ViscousOp op_r, op_m;
    double pv_prev = 0.0;

    for (long step = 0; step < n_steps; ++step) {
      const bool first = (step == 0);
      pressure_faces(fp, st.v_r, rhs_r);  // reuse as scratch for faces
      const double sp0_r = rhs_r[0];
      divergence(rhs_r, h, pdiv_r);
      pressure_faces(fp, st.v_m, rhs_m);
      const double sp0_m = rhs_m[0];
      divergence(rhs_m, h, pdiv_m);
      const double pv = sp0_r - sp0_m;

      for (long j = 0; j < n; ++j) vstar[j] = first ? st.v_r[j] : 1.5 * st.v_r[j] - 0.5 * v_r_prev[j];
      op_r.build(fp, vstar, h);
      for (long j = 0; j < n; ++j) vstar[j] = first ? st.v_m[j] : 1.5 * st.v_m[j] - 0.5 * v_m_prev[j];
      op_m.build(fp, vstar, h);

      op_r.apply(st.u_r, st.V, visc_r);
      op_m.apply(st.u_m, -st.V, visc_m);

      rhs_r.resize(n);
      rhs_m.resize(n);
      for (long j = 0; j < n; ++j) {
        const double pr = first ? pdiv_r[j] : 1.5 * pdiv_r[j] - 0.5 * pdiv_r_prev[j];
        const double pm = first ? pdiv_m[j] : 1.5 * pdiv_m[j] - 0.5 * pdiv_m_prev[j];
        rhs_r[j] = st.u_r[j] + dt * pr + 0.5 * dt * visc_r[j];
        rhs_m[j] = st.u_m[j] + dt * pm + 0.5 * dt * visc_m[j];
      }
      solve_shifted(op_r, 0.5 * dt, rhs_r, u0_r);
      solve_shifted(op_m, 0.5 * dt, rhs_m, u0_m);
      bvec.assign(n, 0.0);
      bvec[0] = 0.5 * dt * op_r.bv0;
      solve_shifted(op_r, 0.5 * dt, bvec, u1_r);
      bvec.assign(n, 0.0);
      bvec[0] = 0.5 * dt * (-op_m.bv0);
      solve_shifted(op_m, 0.5 * dt, bvec, u1_m);

      const double sv_now = op_r.interface_stress(st.u_r, st.V) -
                            op_m.interface_stress(st.u_m, -st.V);
      const double sv_u0 = op_r.interface_stress(u0_r, 0.0) - op_m.interface_stress(u0_m, 0.0);
      const double sv_u1 = (op_r.interface_stress(u1_r, 1.0)) -
                           (op_m.interface_stress(u1_m, -1.0));
      const double pv_ab = first ? pv : 1.5 * pv - 0.5 * pv_prev;
      const double V_new = (st.V + dt * pv_ab + 0.5 * dt * (sv_now + sv_u0)) /
                           (1.0 - 0.5 * dt * sv_u1);

      v_r_prev = st.v_r;
      v_m_prev = st.v_m;
      const double V_half = 0.5 * (st.V + V_new);
      for (long j = 0; j < n; ++j) rhs_r[j] = 0.5 * (st.u_r[j] + u0_r[j] + V_new * u1_r[j]);
      mass_faces(rhs_r, V_half, uf);
      for (long j = 0; j < n; ++j) st.v_r[j] += dt * (uf[j + 1] - uf[j]) / h;
      for (long j = 0; j < n; ++j) rhs_m[j] = 0.5 * (st.u_m[j] + u0_m[j] + V_new * u1_m[j]);
      mass_faces(rhs_m, -V_half, uf);
      for (long j = 0; j < n; ++j) st.v_m[j] += dt * (uf[j + 1] - uf[j]) / h;

      for (long j = 0; j < n; ++j) {
        st.u_r[j] = u0_r[j] + V_new * u1_r[j];
        st.u_m[j] = u0_m[j] + V_new * u1_m[j];
      }
      st.shift += dt * V_half;
      st.V = V_new;
      st.t = (step + 1) * dt;

      pdiv_r_prev = pdiv_r;
      pdiv_m_prev = pdiv_m;
      pv_prev = pv;

      if ((step + 1) % cfg.series_stride == 0 || step + 1 == n_steps) {
        record_series(step + 1);
        sanity_check(st);
      }
      maybe_snapshot(step + 1);
    }
  } else {
    // three-stage strong-stability-preserving explicit scheme on the joint
    // state (v_r, u_r, v_m, u_m, V)
    HalfRhs f_r, f_m;
    struct Stage {
      std::vector<double> v_r, u_r, v_m, u_m;
      double V, shift;
    };
    Stage s1, s2;
    auto euler = [&](const std::vector<double>& v_r, const std::vector<double>& u_r,
                     const std::vector<double>& v_m, const std::vector<double>& u_m, double V,
                     double shift, Stage& out) {
      f_r.eval(fp, v_r, u_r, V, h);
      f_m.eval(fp, v_m, u_m, -V, h);
      out.v_r.resize(n);
      out.u_r.resize(n);
      out.v_m.resize(n);
      out.u_m.resize(n);
      for (long j = 0; j < n; ++j) {
        out.v_r[j] = v_r[j] + dt * f_r.dv[j];
        out.u_r[j] = u_r[j] + dt * f_r.du[j];
        out.v_m[j] = v_m[j] + dt * f_m.dv[j];
        out.u_m[j] = u_m[j] + dt * f_m.du[j];
      }
      out.V = V + dt * (f_r.s0 - f_m.s0);
      out.shift = shift + dt * V;
    };

    for (long step = 0; step < n_steps; ++step) {
      euler(st.v_r, st.u_r, st.v_m, st.u_m, st.V, st.shift, s1);
      euler(s1.v_r, s1.u_r, s1.v_m, s1.u_m, s1.V, s1.shift, s2);
      for (long j = 0; j < n; ++j) {
        s2.v_r[j] = 0.75 * st.v_r[j] + 0.25 * s2.v_r[j];
        s2.u_r[j] = 0.75 * st.u_r[j] + 0.25 * s2.u_r[j];
        s2.v_m[j] = 0.75 * st.v_m[j] + 0.25 * s2.v_m[j];
        s2.u_m[j] = 0.75 * st.u_m[j] + 0.25 * s2.u_m[j];
      }
      s2.V = 0.75 * st.V + 0.25 * s2.V;
      s2.shift = 0.75 * st.shift + 0.25 * s2.shift;
      euler(s2.v_r, s2.u_r, s2.v_m, s2.u_m, s2.V, s2.shift, s1);
      for (long j = 0; j < n; ++j) {
        st.v_r[j] = st.v_r[j] / 3.0 + 2.0 / 3.0 * s1.v_r[j];
        st.u_r[j] = st.u_r[j] / 3.0 + 2.0 / 3.0 * s1.u_r[j];
        st.v_m[j] = st.v_m[j] / 3.0 + 2.0 / 3.0 * s1.v_m[j];
        st.u_m[j] = st.u_m[j] / 3.0 + 2.0 / 3.0 * s1.u_m[j];
      }
      st.V = st.V / 3.0 + 2.0 / 3.0 * s1.V;
      st.shift = st.shift / 3.0 + 2.0 / 3.0 * s1.shift;
      st.t = (step + 1) * dt;

      if ((step + 1) % cfg.series_stride == 0 || step + 1 == n_steps) {
        record_series(step + 1);
        sanity_check(st);
      }
      maybe_snapshot(step + 1);
    }
  }

  res.state = st;
  return res;
}

// ==== physical-space view ===================================================

EulerianProfile lagrangian_to_eulerian(const SimState& s) {
  EulerianProfile out;
  out.interface_pos = s.shift;
  const long n = s.n;
  out.X.resize(2 * n);
  out.v.resize(2 * n);
  out.u.resize(2 * n);
  // left side: X(-x) = shift - integral of v_m, traversed outward then stored reversed
  double acc = 0.5 * s.h * s.v_m[0];
  for (long j = 0; j < n; ++j) {
    if (j > 0) acc += 0.5 * s.h * (s.v_m[j - 1] + s.v_m[j]);
    out.X[n - 1 - j] = s.shift - acc;
    out.v[n - 1 - j] = s.v_m[j];
    out.u[n - 1 - j] = -s.u_m[j];
  }
  acc = 0.5 * s.h * s.v_r[0];
  for (long j = 0; j < n; ++j) {
    if (j > 0) acc += 0.5 * s.h * (s.v_r[j - 1] + s.v_r[j]);
    out.X[n + j] = s.shift + acc;
    out.v[n + j] = s.v_r[j];
    out.u[n + j] = s.u_r[j];
  }
  return out;
}

// ==== refined-ansatz residual ===============================================

AnsatzSeries ansatz_residual_check(const FluidParams& fp, const MassPair& masses,
                                   const SimResult& sim, const WaveField& xi1,
                                   const WaveField& xi2) {
  if (sim.snaps.empty()) throw std::invalid_argument("simulation carries no snapshots");
  if (xi1.snaps.size() != sim.snaps.size() || xi2.snaps.size() != sim.snaps.size())
    throw std::invalid_argument("snapshot counts must match");

  const EigenStructure es = eigen_structure(fp);
  const DiffusionWave w1 = make_wave(masses.M1, es.lambda[0], fp.nu);
  const DiffusionWave w2 = make_wave(masses.M2, es.lambda[1], fp.nu);
  const double h = sim.state.h;
  const long n = sim.state.n;

  AnsatzSeries out;
  double run_sup[2] = {0.0, 0.0};
  for (std::size_t k = 0; k < sim.snaps.size(); ++k) {
    const SimSnapshot& snap = sim.snaps[k];
    if (std::abs(xi1.snaps[k].t - snap.t) > 1e-9 || std::abs(xi2.snaps[k].t - snap.t) > 1e-9)
      throw std::invalid_argument("snapshot times must match");
    AnsatzPoint pt;
    pt.t = snap.t;
    const WeightSpec sharp1 = sharp_weight(es, 1), sharp2 = sharp_weight(es, 2);
    const WeightSpec base1 = base_weight(es, 1), base2 = base_weight(es, 2);
    for (long idx = 0; idx < 2 * n; ++idx) {
      const bool left = idx < n;
      const long j = left ? (n - 1 - idx) : (idx - n);
      const double x = left ? -(j + 0.5) * h : (j + 0.5) * h;
      const double dv = (left ? snap.v_m[j] : snap.v_r[j]) - 1.0;
      const double u = left ? -snap.u_m[j] : snap.u_r[j];
      const Vec2 comp = characteristic_project(es, dv, u);
      const double th1 = theta(w1, x, snap.t), th2 = theta(w2, x, snap.t);
      const double model1 =
          th1 + xi1.value_at(k, x) + es.gamma_coef[1] * theta_dx(w2, x, snap.t);
      const double model2 =
          th2 + xi2.value_at(k, x) + es.gamma_coef[0] * theta_dx(w1, x, snap.t);
      const double r1 = std::abs(comp[0] - model1) / weight_eval(sharp1, x, snap.t);
      const double r2 = std::abs(comp[1] - model2) / weight_eval(sharp2, x, snap.t);
      const double b1 = std::abs(comp[0] - th1) / weight_eval(base1, x, snap.t);
      const double b2 = std::abs(comp[1] - th2) / weight_eval(base2, x, snap.t);
      pt.refined_sup[0] = std::max(pt.refined_sup[0], r1);
      pt.refined_sup[1] = std::max(pt.refined_sup[1], r2);
      pt.base_sup[0] = std::max(pt.base_sup[0], b1);
      pt.base_sup[1] = std::max(pt.base_sup[1], b2);
    }
    run_sup[0] = std::max(run_sup[0], pt.refined_sup[0]);
    run_sup[1] = std::max(run_sup[1], pt.refined_sup[1]);
    out.points.push_back(pt);
    out.P_running.push_back(run_sup[0] + run_sup[1]);
    out.base_final = std::max(out.base_final, pt.base_sup[0] + pt.base_sup[1]);
  }
  out.P_final = out.P_running.empty() ? 0.0 : out.P_running.back();
  return out;
}

}  // namespace pmlab
