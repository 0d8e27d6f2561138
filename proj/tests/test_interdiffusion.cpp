#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pmlab/interdiffusion.hpp"

using namespace pmlab;

TEST_SUITE_BEGIN("interdiffusion");

namespace {

SpectralConfig short_cfg() {
  SpectralConfig cfg;
  cfg.L = 64.0;
  cfg.n = 1024;
  cfg.t_end = 2.0;
  cfg.snapshot_times = {2.0};
  return cfg;
}

double sup_diff(const WaveField& a, const WaveField& b) {
  double sup = 0.0;
  for (int j = 0; j < a.n; ++j)
    sup = std::max(sup, std::abs(a.snaps[0].value[j] - b.snaps[0].value[j]));
  return sup;
}

}  // namespace

TEST_CASE("time stepping converges at fourth order") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const MassPair m{0.5, 0.5};
  SpectralConfig c1 = short_cfg(), c2 = short_cfg(), c4 = short_cfg();
  c1.dt = 0.05;
  c2.dt = 0.025;
  c4.dt = 0.0125;
  const WaveField f1 = solve_interaction_wave(fp, m, 1, c1);
  const WaveField f2 = solve_interaction_wave(fp, m, 1, c2);
  const WaveField f4 = solve_interaction_wave(fp, m, 1, c4);
  const double e1 = sup_diff(f1, f4);
  const double e2 = sup_diff(f2, f4);
  // against the dt/4 reference a fourth-order step gives (256-1)/(16-1)=17
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
  CHECK(e1 < 1e-6);
}

TEST_CASE("zero-mean forcing keeps the integral at zero") {
  const FluidParams fp = derive_params(1.4, 0.8);
  const MassPair m{0.7, -0.4};
  SpectralConfig cfg;
  cfg.n = 2048;
  cfg.t_end = 8.0;
  cfg.dt = 0.05;
  cfg.snapshot_times = {4.0, 8.0};
  const WaveField f = solve_interaction_wave(fp, m, 2, cfg);
  CHECK(std::abs(f.integral(0)) < 1e-12);
  CHECK(std::abs(f.integral(1)) < 1e-12);
  CHECK(f.boundary_max < cfg.boundary_tol);
  CHECK(f.x[f.center_index()] == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("invalid configurations are rejected") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const MassPair m{0.5, 0.5};
  SpectralConfig cfg = short_cfg();
  cfg.n = 1000;  // not a power of two
  CHECK_THROWS_AS(solve_interaction_wave(fp, m, 1, cfg), std::invalid_argument);
  cfg = short_cfg();
  cfg.dt = 0.3;  // t_end = 2 is not a multiple
  cfg.t_end = 2.0;
  CHECK_THROWS_AS(solve_interaction_wave(fp, m, 1, cfg), std::invalid_argument);
  cfg = short_cfg();
  cfg.snapshot_times = {5.0};  // beyond t_end
  CHECK_THROWS_AS(solve_interaction_wave(fp, m, 1, cfg), std::invalid_argument);
  CHECK_THROWS_AS(solve_interaction_wave(fp, m, 3, cfg), std::invalid_argument);
}

TEST_CASE("a box too small for the causal cone triggers the edge guard") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const MassPair m{0.5, 0.5};
  SpectralConfig cfg;
  cfg.L = 32.0;
  cfg.n = 2048;
  cfg.dt = 0.05;
  cfg.t_end = 40.0;
  cfg.snapshot_times = {40.0};
  CHECK_THROWS_AS(solve_interaction_wave(fp, m, 2, cfg), std::runtime_error);
}

TEST_CASE("interaction wave tracks the scaled square of the opposite wave") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const MassPair m{0.1, 0.1};
  SpectralConfig cfg;
  cfg.n = 4096;
  cfg.dt = 0.05;
  cfg.t_end = 64.0;
  cfg.snapshot_times = {4.0, 16.0, 64.0};
  const WaveField f = solve_interaction_wave(fp, m, 1, cfg);
  const RelationCheck r0 = interaction_relation_check(fp, m, f, 0);
  CHECK(r0.t.size() == 3);
  CHECK(r0.overall > 0.0);
  CHECK(r0.overall < 10.0);
  const RelationCheck r1 = interaction_relation_check(fp, m, f, 1);
  CHECK(r1.overall > 0.0);
  CHECK(r1.overall < 10.0);
}

TEST_CASE("opposite masses cancel the combined interface functional") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const MassPair m{0.3, -0.3};
  const double v1 = interface_functional_family(fp, m, 1, 16.0);
  const double v2 = interface_functional_family(fp, m, 2, 16.0);
  CHECK(std::abs(v1) > 1e-9);  // each family contributes
  CHECK(std::abs(v1 + v2) < 1e-10);
  CHECK(std::abs(interface_functional(fp, m, 16.0)) < 1e-10);
}

TEST_CASE("the Gaussian model functional carries the mass-square sign and rate") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const MassPair heavy1{0.6, 0.2};
  const MassPair heavy2{0.2, 0.6};
  CHECK(interface_functional_model(fp, heavy1, 16.0) > 0.0);
  CHECK(interface_functional_model(fp, heavy2, 16.0) < 0.0);
  const double w1 = interface_functional_model(fp, heavy1, 64.0);
  const double w2 = interface_functional_model(fp, heavy1, 512.0);
  // t^(-3/2) decay: a factor 8 in time gives 22.6 in value
  CHECK(w1 / w2 > 17.0);
  CHECK(w1 / w2 < 28.0);
}

TEST_SUITE_END();
