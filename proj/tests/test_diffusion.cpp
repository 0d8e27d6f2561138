#include <doctest.h>

#include <cmath>

#include "pmlab/diffusion.hpp"
#include "pmlab/quadrature.hpp"

using namespace pmlab;

TEST_SUITE_BEGIN("diffusion");

TEST_CASE("profile value at a reference point against a quadrature oracle") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const DiffusionWave w = diffusion_wave(fp, {1.0, 0.0}, 1);

  // Independent oracle at x = 1, t = 0 (similarity coordinate z = 0):
  // prefactor sqrt(nu/(2(t+1))) times m / (sqrt(pi) + m I(0)),
  // with I(0) = integral_0^inf exp(-y^2) dy computed by quadrature.
  const double m = std::exp(1.0) - 1.0;
  const double tail0 = simpson([](double y) { return std::exp(-y * y); }, 0.0, 12.0, 4000);
  const double oracle = std::sqrt(0.5) * m / (std::sqrt(M_PI) + m * tail0);
  CHECK(theta(w, 1.0, 0.0) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(theta(w, 1.0, 0.0) == doctest::Approx(0.36872).epsilon(2e-5));
}

TEST_CASE("analytic derivatives agree with centered differences at second order") {
  const FluidParams fp = derive_params(1.3, 0.6);
  const DiffusionWave w = diffusion_wave(fp, {0.8, 0.0}, 1);
  const double pts[][2] = {{0.0, 1.0}, {1.4, 0.5}, {3.0, 2.0}, {-2.0, 4.0}};
  for (const auto& p : pts) {
    const double x = p[0], t = p[1];
    auto fd1 = [&](double h) { return (theta(w, x + h, t) - theta(w, x - h, t)) / (2 * h); };
    auto fd2 = [&](double h) {
      return (theta(w, x + h, t) - 2 * theta(w, x, t) + theta(w, x - h, t)) / (h * h);
    };
    const double e1a = std::abs(fd1(1e-2) - theta_dx(w, x, t));
    const double e1b = std::abs(fd1(5e-3) - theta_dx(w, x, t));
    CHECK(e1b < e1a);
    CHECK(e1a / e1b == doctest::Approx(4.0).epsilon(0.2));
    const double e2a = std::abs(fd2(2e-2) - theta_dxx(w, x, t));
    const double e2b = std::abs(fd2(1e-2) - theta_dxx(w, x, t));
    CHECK(e2a / e2b == doctest::Approx(4.0).epsilon(0.25));
  }
}

TEST_CASE("equation residual vanishes at second order in the time step") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const DiffusionWave w = diffusion_wave(fp, {1.0, -0.5}, 1);
  const double x = 0.7, t = 2.0;
  const double r1 = std::abs(burgers_residual(w, x, t, 1e-2));
  const double r2 = std::abs(burgers_residual(w, x, t, 5e-3));
  CHECK(r1 < 1e-5);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));

  // the other family satisfies its own equation as well
  const DiffusionWave w2 = diffusion_wave(fp, {0.0, -0.7}, 2);
  CHECK(std::abs(burgers_residual(w2, -2.0, 1.0, 1e-3)) < 1e-7);
}

TEST_CASE("the carried integral is conserved") {
  const FluidParams fp = derive_params(1.0, 1.0);
  for (const double mass : {1.0, -0.4}) {
    const DiffusionWave w = make_wave(mass, fp.c, fp.nu);
    for (const double t : {0.0, 1.0, 10.0, 100.0}) {
      CHECK(theta_integral(w, t) == doctest::Approx(mass).epsilon(1e-8));
    }
  }
}

TEST_CASE("mirror and translation identities of the profile pair") {
  const FluidParams fp = derive_params(1.0, 1.0);
  for (const double t : {0.0, 3.0, 20.0}) {
    CHECK(antisymmetry_mismatch(fp, 0.7, t) < 1e-13);
    CHECK(translation_mismatch(fp, 0.7, t) < 1e-13);
  }
  // also at a different sound speed
  const FluidParams fq = derive_params(2.0, 0.5);
  CHECK(antisymmetry_mismatch(fq, 0.3, 2.0) < 1e-13);
  CHECK(translation_mismatch(fq, 0.3, 2.0) < 1e-13);
}

TEST_CASE("amplitude guard and large-mass stability") {
  CHECK_THROWS_AS(make_wave(60.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_wave(1.0, 1.0, 0.0), std::invalid_argument);
  // near the guard the profile must stay finite and positive at the peak
  const DiffusionWave w = make_wave(49.0, 1.0, 1.0);
  const double peak = theta(w, 1.0, 0.0);
  CHECK(std::isfinite(peak));
  CHECK(peak > 0.0);
  // strongly negative mass: the stable branch avoids cancellation
  const DiffusionWave wn = make_wave(-49.0, 1.0, 1.0);
  const double vn = theta(wn, -5.0, 0.25);
  CHECK(std::isfinite(vn));
  CHECK(vn <= 0.0);
  CHECK(theta_integral(wn, 1.0) == doctest::Approx(-49.0).epsilon(1e-8));
}

TEST_SUITE_END();
