#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pmlab/fsi.hpp"
#include "pmlab/interdiffusion.hpp"

using namespace pmlab;

TEST_SUITE_BEGIN("fsi");

TEST_CASE("the equilibrium state is an exact fixed point") {
  const FluidParams fp = derive_params(1.4, 0.7);
  const InitialData data = make_scenario(Scenario::equilibrium);
  SimConfig cfg;
  cfg.h = 0.2;
  cfg.t_end = 1.0;
  const SimResult sim = run_simulation(fp, data, cfg);
  CHECK(sim.state.V == 0.0);
  CHECK(sim.state.shift == 0.0);
  CHECK(sim.max_mass_drift == 0.0);
  CHECK(sim.max_mom_drift == 0.0);
  for (const double v : sim.state.v_r) CHECK(v == 1.0);
  for (const double u : sim.state.u_r) CHECK(u == 0.0);
}

TEST_CASE("mirror-symmetric data keeps the mass at rest to the last bit") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const InitialData data = make_scenario(Scenario::mirror_symmetric);
  SimConfig cfg;
  cfg.h = 0.1;
  cfg.t_end = 5.0;
  cfg.series_stride = 5;
  const SimResult sim = run_simulation(fp, data, cfg);
  for (const auto& p : sim.series) CHECK(p.V == 0.0);
  CHECK(sim.state.V == 0.0);

  cfg.scheme = TimeScheme::rk3;
  cfg.t_end = 0.5;
  const SimResult rk = run_simulation(fp, data, cfg);
  CHECK(rk.state.V == 0.0);
}

TEST_CASE("fluid mass and total momentum telescope to roundoff") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const InitialData data = make_scenario(Scenario::generic);
  SimConfig cfg;
  cfg.h = 0.1;
  cfg.t_end = 20.0;
  const SimResult sim = run_simulation(fp, data, cfg);
  CHECK(sim.max_mass_drift < 1e-12);
  CHECK(sim.max_mom_drift < 1e-12);
  CHECK(std::abs(sim.state.V) > 0.0);  // the signal has reached the interface
}

TEST_CASE("semi-implicit velocity converges to the explicit reference") {
  const FluidParams fp = derive_params(1.0, 1.0);
  InitialData data;
  data.dv = gaussian_bump(0.05, 3.0, 1.0);
  data.u = gaussian_bump(0.05, 3.0, 1.0);
  SimConfig ref_cfg;
  ref_cfg.h = 0.1;
  ref_cfg.t_end = 2.0;
  ref_cfg.scheme = TimeScheme::rk3;
  const double v_ref = run_simulation(fp, data, ref_cfg).state.V;

  SimConfig cfg;
  cfg.h = 0.1;
  cfg.t_end = 2.0;
  cfg.dt = 0.02;
  const double e1 = std::abs(run_simulation(fp, data, cfg).state.V - v_ref);
  cfg.dt = 0.01;
  const double e2 = std::abs(run_simulation(fp, data, cfg).state.V - v_ref);
  CHECK(std::abs(v_ref) > 1e-5);
  CHECK(e1 < 1e-3);
  CHECK(e1 / e2 > 2.5);  // second order in dt against a higher-order reference
  CHECK(e1 / e2 < 6.0);
}

TEST_CASE("snapshots land on the requested times") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const InitialData data = make_scenario(Scenario::gaussian_momentum);
  SimConfig cfg;
  cfg.h = 0.1;
  cfg.t_end = 2.0;
  cfg.snapshot_times = {0.5, 1.0, 2.0};
  const SimResult sim = run_simulation(fp, data, cfg);
  REQUIRE(sim.snaps.size() == 3);
  for (size_t k = 0; k < 3; ++k)
    CHECK(std::abs(sim.snaps[k].t - cfg.snapshot_times[k]) < 0.05);
}

TEST_CASE("the physical-space view is monotone and anchored at the interface") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const InitialData data = make_scenario(Scenario::generic);
  SimConfig cfg;
  cfg.h = 0.1;
  cfg.t_end = 10.0;
  const SimResult sim = run_simulation(fp, data, cfg);
  const EulerianProfile prof = lagrangian_to_eulerian(sim.state);
  REQUIRE(prof.X.size() == prof.v.size());
  REQUIRE(prof.X.size() == prof.u.size());
  CHECK(prof.interface_pos == doctest::Approx(sim.state.shift).epsilon(1e-12));
  for (size_t j = 1; j < prof.X.size(); ++j) CHECK(prof.X[j] > prof.X[j - 1]);
  CHECK(prof.v.front() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(prof.v.back() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("scenario names round-trip and bad names are rejected") {
  for (const Scenario s :
       {Scenario::equilibrium, Scenario::gaussian_momentum,
        Scenario::zero_mass_momentum, Scenario::antisymmetric,
        Scenario::mirror_symmetric, Scenario::generic, Scenario::traveling_pulse})
    CHECK(scenario_from_name(scenario_name(s)) == s);
  CHECK_THROWS_AS(scenario_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("the traveling pulse rides one characteristic family") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const EigenStructure es = eigen_structure(fp);
  const InitialData data = make_scenario(Scenario::traveling_pulse, 0.05, 2.0, 10.0);
  // at c = 1 the incoming component vanishes pointwise, not just on average
  for (double x : {6.0, 8.0, 10.0, 12.0, 14.0}) {
    const Vec2 w = characteristic_project(es, data.dv(x), data.u(x));
    CHECK(std::abs(w[1]) < 1e-15);
  }
  const MassPair m = compute_masses(fp, data);
  CHECK(m.M1 == doctest::Approx(0.05 * 2.0 * std::sqrt(2.0 * M_PI)).epsilon(1e-9));
  CHECK(std::abs(m.M2) < 1e-12);
}

TEST_CASE("the body velocity locks onto the backward-radiation tail") {
  // the receding packet feeds the interface through the quadratic coupling;
  // by t = 64 the simulated velocity should match the closed Duhamel
  // prediction for the packet masses to within a few percent
  const FluidParams fp = derive_params(1.0, 1.0);
  const InitialData data = make_scenario(Scenario::traveling_pulse, 0.05, 2.0, 10.0);
  SimConfig cfg;
  cfg.h = 0.1;
  cfg.t_end = 64.0;
  const SimResult sim = run_simulation(fp, data, cfg);
  const MassPair m = compute_masses(fp, data);
  const double predicted = interface_functional(fp, m, 64.0);
  CHECK(predicted > 0.0);
  CHECK(sim.state.V / predicted == doctest::Approx(1.06).epsilon(0.08));
}

TEST_CASE("canonical scenarios satisfy the interface coupling conditions") {
  const FluidParams fp = derive_params(1.0, 1.0);
  // data supported away from the interface leaves every gap at the level of
  // the underflowed tails
  for (const Scenario s : {Scenario::gaussian_momentum, Scenario::antisymmetric,
                           Scenario::generic}) {
    const CompatibilityReport rep = compatibility_check(fp, make_scenario(s));
    CHECK(rep.satisfied(1e-8));
  }
  // the mirror-symmetric pair (even volume, odd velocity) satisfies all three
  // conditions by symmetry, but it is centered on the interface, so the check
  // certifies each gap only to the accuracy of its stencil: the velocity match
  // is sampled exactly, the stress slope carries one derivative level, and the
  // stress rate stacks three of them
  const CompatibilityReport rep =
      compatibility_check(fp, make_scenario(Scenario::mirror_symmetric));
  for (int side = 0; side < 2; ++side) {
    CHECK(rep.velocity_gap[side] == 0.0);
    CHECK(std::abs(rep.stress_slope_gap[side]) < 1e-8);
    CHECK(std::abs(rep.stress_rate_gap[side]) < 1e-3);
  }
  CHECK(rep.stress_jump == 0.0);
  CHECK(rep.stress_rate_jump == 0.0);
}

TEST_CASE("the refined ansatz residual assembles at matched times") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const InitialData data = make_scenario(Scenario::gaussian_momentum);
  const MassPair masses = compute_masses(fp, data);

  SimConfig sim_cfg;
  sim_cfg.h = 0.1;
  sim_cfg.t_end = 16.0;
  sim_cfg.snapshot_times = {4.0, 16.0};
  const SimResult sim = run_simulation(fp, data, sim_cfg);

  SpectralConfig sp;
  sp.n = 2048;
  sp.dt = 0.05;
  sp.t_end = 16.0;
  sp.snapshot_times = {4.0, 16.0};
  const WaveField xi1 = solve_interaction_wave(fp, masses, 1, sp);
  const WaveField xi2 = solve_interaction_wave(fp, masses, 2, sp);

  const AnsatzSeries series = ansatz_residual_check(fp, masses, sim, xi1, xi2);
  REQUIRE(series.points.size() == 2);
  CHECK(series.P_final > 0.0);
  CHECK(series.P_final < 5.0);
  CHECK(series.base_final > 0.0);
  CHECK(series.base_final < 10.0);
  // running sups never decrease
  CHECK(series.P_running.back() == doctest::Approx(series.P_final));
  CHECK(series.P_running.front() <= series.P_running.back());
}

TEST_SUITE_END();
