// Command-line laboratory for the coupled point-mass / viscous-fluid model:
// runs the interface simulation, builds the wave approximations and kernel
// tables, checks the inequality battery, and fits decay rates. Every
// subcommand writes CSV files plus a metadata.json into a staged output
// directory, and identical inputs produce identical bytes.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmlab/analysis.hpp"
#include "pmlab/diffusion.hpp"
#include "pmlab/fsi.hpp"
#include "pmlab/greens.hpp"
#include "pmlab/interdiffusion.hpp"
#include "pmlab/io.hpp"
#include "pmlab/lemmas.hpp"
#include "pmlab/model.hpp"

namespace {

using namespace pmlab;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("-c,--config", c.config_path, "key=value configuration file");
  sub->add_option("-s,--set", c.overrides, "inline key=value override (repeatable)");
  sub->add_option("-o,--out", c.out_dir, "output directory (must not exist)")->required();
}

Config load_config(const CommonOpts& c) {
  Config cfg;
  if (!c.config_path.empty()) cfg = Config::from_file(c.config_path);
  for (const auto& kv : c.overrides) {
    const Config one = Config::from_string(kv);
    for (const auto& [key, val] : one.values) cfg.values[key] = val;
  }
  return cfg;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

FluidParams params_from(const Config& cfg) {
  return derive_params(cfg.get_num("gamma", 1.0), cfg.get_num("nu", 1.0));
}

TimeScheme scheme_from(const Config& cfg) {
  const std::string s = cfg.get_str("scheme", "semi_implicit");
  if (s == "semi_implicit") return TimeScheme::semi_implicit;
  if (s == "rk3") return TimeScheme::rk3;
  throw std::invalid_argument("unknown scheme: " + s);
}

// Minimal CSV reader for the `fit` subcommand: header + numeric rows.
std::map<std::string, std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  std::vector<std::string> cols = split_names(line);
  std::map<std::string, std::vector<double>> out;
  for (const auto& c : cols) out[c] = {};
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    size_t i = 0;
    while (std::getline(row, cell, ',')) {
      if (i >= cols.size()) throw std::runtime_error("ragged csv row in " + path);
      out[cols[i]].push_back(std::strtod(cell.c_str(), nullptr));
      ++i;
    }
    if (i != cols.size()) throw std::runtime_error("ragged csv row in " + path);
  }
  return out;
}

double interp_series(const std::vector<double>& t, const std::vector<double>& v, double tq) {
  if (t.empty()) throw std::invalid_argument("empty series");
  if (tq <= t.front()) return v.front();
  if (tq >= t.back()) return v.back();
  const auto it = std::lower_bound(t.begin(), t.end(), tq);
  const size_t j = it - t.begin();
  const double w = (tq - t[j - 1]) / (t[j] - t[j - 1]);
  return (1.0 - w) * v[j - 1] + w * v[j];
}

// ============================ simulate ====================================

int run_simulate(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  cfg.require_known({"gamma", "nu", "scenario", "amplitude", "width", "center",
                     "t_end", "h", "L", "dt", "scheme", "series_stride",
                     "snapshots"});
  const FluidParams fp = params_from(cfg);
  const InitialData data = make_scenario(
      scenario_from_name(cfg.get_str("scenario", "generic")),
      cfg.get_num("amplitude", 0.05), cfg.get_num("width", 2.0),
      cfg.get_num("center", 25.0));
  SimConfig sc;
  sc.h = cfg.get_num("h", 0.1);
  sc.L = cfg.get_num("L", 0.0);
  sc.dt = cfg.get_num("dt", 0.0);
  sc.t_end = cfg.get_num("t_end", 100.0);
  sc.scheme = scheme_from(cfg);
  sc.series_stride = static_cast<int>(cfg.get_int("series_stride", 25));
  sc.snapshot_times = cfg.get_list("snapshots", {});

  const SimResult sim = run_simulation(fp, data, sc);
  const MassPair masses = compute_masses(fp, data);

  OutputDir out(opts.out_dir);
  {
    CsvWriter series(out.path("series.csv"), {"t", "V", "mass_drift", "momentum_drift"});
    for (const auto& p : sim.series) series.row({p.t, p.V, p.mass_err, p.mom_err});
    series.close();
  }
  for (size_t k = 0; k < sim.snaps.size(); ++k) {
    const auto& s = sim.snaps[k];
    char name[64];
    std::snprintf(name, sizeof name, "profile_%02zu.csv", k);
    CsvWriter prof(out.path(name), {"x", "v", "u"});
    const long n = static_cast<long>(s.v_m.size());
    for (long j = n - 1; j >= 0; --j) {
      const double x = -(j + 0.5) * sim.state.h;
      prof.row({x, s.v_m[j], -s.u_m[j]});
    }
    for (long j = 0; j < static_cast<long>(s.v_r.size()); ++j) {
      const double x = (j + 0.5) * sim.state.h;
      prof.row({x, s.v_r[j], s.u_r[j]});
    }
    prof.close();
  }
  {
    CsvWriter sum(out.path("summary.csv"),
                  {"t_end", "V_final", "shift", "M1", "M2", "max_mass_drift",
                   "max_momentum_drift"});
    sum.row({sim.state.t, sim.state.V, sim.state.shift, masses.M1, masses.M2,
             sim.max_mass_drift, sim.max_mom_drift});
    sum.close();
  }
  write_metadata(out.path("metadata.json"), cfg, "simulate",
                 "interface velocity series and profile snapshots");
  out.commit();
  std::printf("simulate: t_end=%s V_final=%s -> %s\n",
              format_full(sim.state.t).c_str(), format_full(sim.state.V).c_str(),
              out.final_path().c_str());
  return 0;
}

// ============================ waves =======================================

int run_waves(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  cfg.require_known({"gamma", "nu", "m1", "m2", "t_end", "n", "dt", "L",
                     "snapshots", "self_transport"});
  const FluidParams fp = params_from(cfg);
  const MassPair masses{cfg.get_num("m1", 1.0), cfg.get_num("m2", 1.0)};
  SpectralConfig sc;
  sc.L = cfg.get_num("L", 0.0);
  sc.n = static_cast<int>(cfg.get_int("n", 8192));
  sc.dt = cfg.get_num("dt", 0.05);
  sc.t_end = cfg.get_num("t_end", 100.0);
  sc.snapshot_times = cfg.get_list("snapshots", {sc.t_end});
  const bool self_transport = cfg.get_flag("self_transport", true);

  const WaveField xi1 = solve_interaction_wave(fp, masses, 1, sc, self_transport);
  const WaveField xi2 = solve_interaction_wave(fp, masses, 2, sc, self_transport);
  const DiffusionWave th1 = diffusion_wave(fp, masses, 1);
  const DiffusionWave th2 = diffusion_wave(fp, masses, 2);

  OutputDir out(opts.out_dir);
  for (size_t k = 0; k < xi1.snaps.size(); ++k) {
    const double t = xi1.snaps[k].t;
    char name[64];
    std::snprintf(name, sizeof name, "wave_%02zu.csv", k);
    CsvWriter w(out.path(name),
                {"x", "theta1", "theta2", "xi1", "xi2", "xi1_dx", "xi2_dx"});
    for (int j = 0; j < xi1.n; ++j) {
      const double x = xi1.x[j];
      w.row({x, theta(th1, x, t), theta(th2, x, t), xi1.snaps[k].value[j],
             xi2.snaps[k].value[j], xi1.snaps[k].dx[j], xi2.snaps[k].dx[j]});
    }
    w.close();
  }
  {
    CsvWriter m(out.path("masses.csv"),
                {"M1", "M2", "theta1_int", "theta2_int", "xi1_int", "xi2_int",
                 "edge1", "edge2"});
    const size_t last = xi1.snaps.size() - 1;
    m.row({masses.M1, masses.M2, theta_integral(th1, sc.t_end),
           theta_integral(th2, sc.t_end), xi1.integral(last), xi2.integral(last),
           xi1.boundary_max, xi2.boundary_max});
    m.close();
  }
  {
    const RelationCheck r10 = interaction_relation_check(fp, masses, xi1, 0);
    const RelationCheck r11 = interaction_relation_check(fp, masses, xi1, 1);
    const RelationCheck r20 = interaction_relation_check(fp, masses, xi2, 0);
    const RelationCheck r21 = interaction_relation_check(fp, masses, xi2, 1);
    CsvWriter rel(out.path("relation.csv"),
                  {"t", "f1_value", "f1_slope", "f2_value", "f2_slope"});
    for (size_t k = 0; k < r10.t.size(); ++k)
      rel.row({r10.t[k], r10.sup_ratio[k], r11.sup_ratio[k], r20.sup_ratio[k],
               r21.sup_ratio[k]});
    rel.close();
  }
  if (std::any_of(sc.snapshot_times.begin(), sc.snapshot_times.end(),
                  [](double t) { return t > 1.0; })) {
    const BoundarySeries b = interface_asymptotics(fp, masses, xi1, xi2);
    CsvWriter bw(out.path("boundary.csv"),
                 {"t", "boundary_sum", "functional", "gap"});
    for (size_t k = 0; k < b.t.size(); ++k)
      bw.row({b.t[k], b.boundary_sum[k], b.functional[k], b.diff[k]});
    bw.close();
  }
  write_metadata(out.path("metadata.json"), cfg, "waves",
                 "diffusion and interaction wave profiles");
  out.commit();
  std::printf("waves: %zu snapshots -> %s\n", xi1.snaps.size(),
              out.final_path().c_str());
  return 0;
}

// ============================ greens ======================================

int run_greens(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  cfg.require_known({"gamma", "nu", "t", "L", "n", "stride"});
  const FluidParams fp = params_from(cfg);
  const double t = cfg.get_num("t", 2.0);
  GreensConfig gc;
  gc.L = cfg.get_num("L", 48.0);
  gc.n = static_cast<int>(cfg.get_int("n", 32768));
  const int stride = static_cast<int>(cfg.get_int("stride", 8));

  const KernelGrid g = fundamental_kernel(fp, t, gc);
  const KernelGrid gdx = fundamental_kernel_dx(fp, t, gc);
  const HalfLineKernels hk = half_line_kernels(g);
  const EigenStructure es = eigen_structure(fp);

  OutputDir out(opts.out_dir);
  {
    CsvWriter w(out.path("kernel.csv"),
                {"x", "g00", "g01", "g10", "g11", "gx00", "gx01", "gx10",
                 "gx11", "star00", "star01", "star10", "star11"});
    for (int j = 0; j < g.n; j += stride) {
      const Mat2 s = gstar(fp, g.x[j], t);
      w.row({g.x[j], g.val[j][0], g.val[j][1], g.val[j][2], g.val[j][3],
             gdx.val[j][0], gdx.val[j][1], gdx.val[j][2], gdx.val[j][3], s[0],
             s[1], s[2], s[3]});
    }
    w.close();
  }
  {
    CsvWriter w(out.path("halfline.csv"),
                {"x", "tra00", "tra01", "tra10", "tra11", "ref00", "ref01",
                 "ref10", "ref11"});
    for (size_t r = 0; r < hk.x.size(); r += stride)
      w.row({hk.x[r], hk.tra[r][0], hk.tra[r][1], hk.tra[r][2], hk.tra[r][3],
             hk.ref[r][0], hk.ref[r][1], hk.ref[r][2], hk.ref[r][3]});
    w.close();
  }
  {
    const RayBoundScan scan = row_bound_scan(fp, {1.0, 2.0, 4.0, 8.0, 16.0}, gc);
    const BoundReport smooth = smooth_part_scan(fp, {1.0, 2.0, 4.0, 8.0}, gc);
    CsvWriter w(out.path("scan.csv"),
                {"refined_sup_1", "refined_sup_2", "unrefined_sup_1",
                 "unrefined_sup_2", "smooth_sup", "delta_coef",
                 "transmissive_residual_16", "transmissive_residual_32",
                 "reflected_mismatch", "identity_residual_16",
                 "identity_residual_32"});
    w.row({scan.refined_sup[0], scan.refined_sup[1], scan.unrefined_sup[0],
           scan.unrefined_sup[1], smooth.sup_ratio, g.delta_coef,
           transmissive_identity_residual(hk, 16),
           transmissive_identity_residual(hk, 32), reflected_row_mismatch(fp, hk),
           projected_identity_residual(fp, t, 16, gc),
           projected_identity_residual(fp, t, 32, gc)});
    w.close();
  }
  (void)es;
  write_metadata(out.path("metadata.json"), cfg, "greens",
                 "kernel tables, half-line kernels, and bound scans");
  out.commit();
  std::printf("greens: t=%s -> %s\n", format_full(t).c_str(),
              out.final_path().c_str());
  return 0;
}

// ============================ verify-lemma ================================

int run_verify_lemma(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  cfg.require_known({"rel_tol", "which"});
  const double rel_tol = cfg.get_num("rel_tol", 1e-6);
  const std::string which = cfg.get_str("which", "all");

  OutputDir out(opts.out_dir);
  int failures = 0;
  {
    std::vector<CheckReport> reports;
    if (which == "all") {
      reports = run_inequality_battery(rel_tol);
    } else {
      ConvParams p;
      p.rel_tol = rel_tol;
      bool found = false;
      for (const ConvId id :
           {ConvId::early_window, ConvId::single_slice, ConvId::mid_gauss,
            ConvId::same_ray_sharp, ConvId::mid_cross, ConvId::same_ray_log_early,
            ConvId::same_ray_log_late, ConvId::cross_ray_log_early,
            ConvId::cross_ray_log_late, ConvId::boundary_time,
            ConvId::boundary_moving, ConvId::memory_decay, ConvId::memory_early}) {
        if (conv_name(id) == which) {
          if (id == ConvId::same_ray_sharp) p.alpha = 3.5;
          if (id == ConvId::same_ray_log_early || id == ConvId::cross_ray_log_early)
            p.beta = 1.0;
          if (id == ConvId::same_ray_log_late || id == ConvId::cross_ray_log_late) {
            p.alpha = 1.0;
            p.beta = 1.0;
          }
          if (id == ConvId::same_ray_sharp || id == ConvId::same_ray_log_early ||
              id == ConvId::same_ray_log_late || id == ConvId::memory_decay ||
              id == ConvId::memory_early)
            p.lambda_p = p.lambda;
          reports.push_back(check_convolution(id, p));
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("unknown check name: " + which);
    }
    CsvWriter w(out.path("battery.csv"),
                {"passed", "overall_sup", "decade_ok", "n_times"});
    std::ofstream names(out.path("battery_names.txt"));
    for (const auto& r : reports) {
      names << r.name << '\n';
      w.row({r.passed ? 1.0 : 0.0, r.overall, r.decade_ok ? 1.0 : 0.0,
             static_cast<double>(r.times.size())});
      if (!r.passed) ++failures;
      std::printf("%-28s %s sup=%.6g\n", r.name.c_str(),
                  r.passed ? "ok" : "FAIL", r.overall);
    }
    w.close();
  }
  write_metadata(out.path("metadata.json"), cfg, "verify-lemma",
                 "weighted inequality battery");
  out.commit();
  std::printf("verify-lemma: %d failing -> %s\n", failures,
              out.final_path().c_str());
  return failures == 0 ? 0 : 1;
}

// ============================ fit =========================================

int run_fit(const CommonOpts& opts, const std::string& input_dir) {
  const Config cfg = load_config(opts);
  cfg.require_known({"t_min", "t_max", "m1", "m2"});
  const auto series = read_csv(input_dir + "/series.csv");
  if (!series.count("t") || !series.count("V"))
    throw std::runtime_error("series.csv must have t and V columns");
  const auto& t = series.at("t");
  const auto& V = series.at("V");
  const double t_min = cfg.get_num("t_min", t.front());
  const double t_max = cfg.get_num("t_max", t.back());

  MassPair masses{cfg.get_num("m1", 0.0), cfg.get_num("m2", 0.0)};
  if (!cfg.has("m1") || !cfg.has("m2")) {
    const auto sum = read_csv(input_dir + "/summary.csv");
    masses.M1 = sum.at("M1").at(0);
    masses.M2 = sum.at("M2").at(0);
  }

  const DecayFit alg = fit_decay(t, V, t_min, t_max);
  const DecayFit exp = fit_exponential(t, V, t_min, t_max);
  const DichotomyVerdict v = classify_dichotomy(t, V, masses, t_min, t_max);

  OutputDir out(opts.out_dir);
  CsvWriter w(out.path("fit.csv"),
              {"t_min", "t_max", "exponent", "r2", "n_points", "exp_rate",
               "exp_r2", "kind", "expected_exponent", "matches_theory",
               "eventual_sign"});
  w.row({t_min, t_max, alg.exponent, alg.r2, static_cast<double>(alg.n_points),
         exp.exponent, exp.r2, static_cast<double>(v.kind), v.expected_exponent,
         v.matches_theory ? 1.0 : 0.0, static_cast<double>(v.eventual_sign)});
  w.close();
  write_metadata(out.path("metadata.json"), cfg, "fit",
                 "decay-rate fit of a velocity series");
  out.commit();
  std::printf("fit: exponent=%.4f (r2=%.4f) expected=%.4f -> %s\n", alg.exponent,
              alg.r2, v.expected_exponent, out.final_path().c_str());
  return 0;
}

// ============================ dichotomy ===================================

int run_dichotomy(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  cfg.require_known({"gamma", "nu", "amplitude", "width", "center", "t_end",
                     "h", "scheme", "t_min", "t_max", "scenarios"});
  const FluidParams fp = params_from(cfg);
  const double t_end = cfg.get_num("t_end", 500.0);
  const double t_min = cfg.get_num("t_min", t_end / 5.0);
  const double t_max = cfg.get_num("t_max", t_end);
  const std::vector<std::string> names = split_names(cfg.get_str(
      "scenarios", "traveling-pulse,gaussian-momentum,antisymmetric,mirror-symmetric"));

  OutputDir out(opts.out_dir);
  CsvWriter w(out.path("dichotomy.csv"),
              {"M1", "M2", "max_abs_V", "exponent", "r2_algebraic",
               "r2_exponential", "expected_exponent", "kind", "matches_theory",
               "eventual_sign"});
  std::ofstream names_out(out.path("scenario_names.txt"));
  for (const auto& name : names) {
    const InitialData data = make_scenario(scenario_from_name(name),
                                           cfg.get_num("amplitude", 0.05),
                                           cfg.get_num("width", 2.0),
                                           cfg.get_num("center", 25.0));
    SimConfig sc;
    sc.h = cfg.get_num("h", 0.1);
    sc.t_end = t_end;
    sc.scheme = scheme_from(cfg);
    const SimResult sim = run_simulation(fp, data, sc);
    const MassPair masses = compute_masses(fp, data);
    std::vector<double> ts, Vs;
    double vmax = 0.0;
    for (const auto& p : sim.series) {
      ts.push_back(p.t);
      Vs.push_back(p.V);
      vmax = std::max(vmax, std::abs(p.V));
    }
    const DichotomyVerdict v = classify_dichotomy(ts, Vs, masses, t_min, t_max);
    names_out << name << '\n';
    w.row({masses.M1, masses.M2, vmax, v.exponent, v.r2_algebraic,
           v.r2_exponential, v.expected_exponent, static_cast<double>(v.kind),
           v.matches_theory ? 1.0 : 0.0, static_cast<double>(v.eventual_sign)});
    std::printf("%-18s M=(%.4g,%.4g) exp=%.3f kind=%d %s\n", name.c_str(),
                masses.M1, masses.M2, v.exponent, static_cast<int>(v.kind),
                v.matches_theory ? "ok" : "off-theory");
  }
  w.close();
  write_metadata(out.path("metadata.json"), cfg, "dichotomy",
                 "long-time velocity decay classification per scenario");
  out.commit();
  std::printf("dichotomy -> %s\n", out.final_path().c_str());
  return 0;
}

// ============================ report ======================================

int run_report(const CommonOpts& opts) {
  const Config cfg = load_config(opts);
  cfg.require_known({"gamma", "nu", "scenario", "amplitude", "width", "center",
                     "t_end", "h", "scheme", "times"});
  const FluidParams fp = params_from(cfg);
  const double t_end = cfg.get_num("t_end", 200.0);
  std::vector<double> times = cfg.get_list("times", {});
  if (times.empty())
    for (double t = 4.0; t <= t_end + 1e-9; t *= 2.0) times.push_back(t);

  const InitialData data = make_scenario(
      scenario_from_name(cfg.get_str("scenario", "generic")),
      cfg.get_num("amplitude", 0.05), cfg.get_num("width", 2.0),
      cfg.get_num("center", 25.0));
  const MassPair masses = compute_masses(fp, data);
  SimConfig sc;
  sc.h = cfg.get_num("h", 0.1);
  sc.t_end = t_end;
  sc.scheme = scheme_from(cfg);
  const SimResult sim = run_simulation(fp, data, sc);
  std::vector<double> ts, Vs;
  for (const auto& p : sim.series) {
    ts.push_back(p.t);
    Vs.push_back(p.V);
  }

  OutputDir out(opts.out_dir);
  CsvWriter w(out.path("asymptotics.csv"),
              {"t", "V_sim", "duhamel", "gaussian_model", "model_total", "gap"});
  for (const double t : times) {
    if (t > t_end + 1e-9) continue;
    const double v_sim = interp_series(ts, Vs, t);
    double duhamel = 0.0, model = 0.0;
    if (t > 1.0) {
      duhamel = interface_functional(fp, masses, t);
      model = interface_functional_model(fp, masses, t);
    }
    w.row({t, v_sim, duhamel, model, duhamel + model,
           v_sim - duhamel - model});
  }
  w.close();
  write_metadata(out.path("metadata.json"), cfg, "report",
                 "simulated velocity against the interface functionals");
  out.commit();
  std::printf("report: M=(%.6g,%.6g) -> %s\n", masses.M1, masses.M2,
              out.final_path().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point-mass in a viscous compressible fluid: numerical laboratory"};
  app.require_subcommand(1);

  CommonOpts sim_o, waves_o, greens_o, lemma_o, fit_o, dich_o, rep_o;
  std::string fit_input;

  add_common(app.add_subcommand("simulate", "coupled interface simulation"), sim_o);
  add_common(app.add_subcommand("waves", "diffusion and interaction waves"), waves_o);
  add_common(app.add_subcommand("greens", "linearized kernel tables and scans"), greens_o);
  add_common(app.add_subcommand("verify-lemma", "weighted inequality battery"), lemma_o);
  CLI::App* fit_cmd = app.add_subcommand("fit", "decay fit of a velocity series");
  add_common(fit_cmd, fit_o);
  fit_cmd->add_option("-i,--in", fit_input, "simulate output directory")->required();
  add_common(app.add_subcommand("dichotomy", "decay classification per scenario"), dich_o);
  add_common(app.add_subcommand("report", "velocity vs interface functionals"), rep_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("simulate")) return run_simulate(sim_o);
    if (app.got_subcommand("waves")) return run_waves(waves_o);
    if (app.got_subcommand("greens")) return run_greens(greens_o);
    if (app.got_subcommand("verify-lemma")) return run_verify_lemma(lemma_o);
    if (app.got_subcommand("fit")) return run_fit(fit_o, fit_input);
    if (app.got_subcommand("dichotomy")) return run_dichotomy(dich_o);
    if (app.got_subcommand("report")) return run_report(rep_o);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
