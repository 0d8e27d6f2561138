#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "pmlab/greens.hpp"

using namespace pmlab;

TEST_SUITE_BEGIN("greens");

namespace {

GreensConfig small_cfg() {
  GreensConfig cfg;
  cfg.L = 48.0;
  cfg.n = 32768;
  return cfg;
}

CMat2 cmul(const CMat2& a, const CMat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

double cdist(const CMat2& a, const CMat2& b) {
  double sup = 0.0;
  for (int e = 0; e < 4; ++e) sup = std::max(sup, std::abs(a[e] - b[e]));
  return sup;
}

}  // namespace

TEST_CASE("the symbol is the identity at zero frequency") {
  const FluidParams fp = derive_params(1.4, 0.7);
  const CMat2 e = kernel_symbol(fp, 0.0, 3.0);
  CHECK(std::abs(e[0] - 1.0) < 1e-14);
  CHECK(std::abs(e[3] - 1.0) < 1e-14);
  CHECK(std::abs(e[1]) < 1e-14);
  CHECK(std::abs(e[2]) < 1e-14);
}

TEST_CASE("the symbol satisfies the semigroup property across branch switches") {
  const FluidParams fp = derive_params(1.0, 1.0);
  // k = 8e-4 keeps t = 1 in the series branch and t = 2 in the split branch
  for (const double k : {8e-4, 0.5, 2.5, 40.0}) {
    const CMat2 e1 = kernel_symbol(fp, k, 1.0);
    const CMat2 e2 = kernel_symbol(fp, k, 2.0);
    CHECK(cdist(e2, cmul(e1, e1)) < 1e-12);
  }
}

TEST_CASE("the symbol solves its own evolution equation") {
  const FluidParams fp = derive_params(1.3, 0.9);
  const double k = 0.6, t = 1.5, h = 1e-3;
  const CMat2 ep = kernel_symbol(fp, k, t + h);
  const CMat2 em = kernel_symbol(fp, k, t - h);
  const CMat2 e0 = kernel_symbol(fp, k, t);
  const CMat2 m = {std::complex<double>(0, 0), std::complex<double>(0, k),
                   std::complex<double>(0, fp.c * fp.c * k),
                   std::complex<double>(-fp.nu * k * k, 0)};
  const CMat2 me = cmul(m, e0);
  for (int e = 0; e < 4; ++e) {
    const std::complex<double> fd = (ep[e] - em[e]) / (2.0 * h);
    CHECK(std::abs(fd - me[e]) < 1e-6);
  }
}

TEST_CASE("high frequencies relax to the damped constant mode") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const CMat2 e = kernel_symbol(fp, 3000.0, 2.0);
  CHECK(std::abs(e[0] - std::exp(-2.0)) < 1e-6);
  CHECK(std::abs(e[1]) < 1e-3);
  CHECK(std::abs(e[2]) < 1e-3);
  CHECK(std::abs(e[3]) < 1e-6);
}

TEST_CASE("far-field model value at a reference point") {
  const FluidParams fp = derive_params(1.0, 1.0);
  // both translating kernels sit one standard width away from x = 0 at t = 1
  const Mat2 g = gstar(fp, 0.0, 1.0);
  CHECK(g[0] == doctest::Approx(0.24197072451914337).epsilon(1e-14));
  CHECK(g[3] == doctest::Approx(0.24197072451914337).epsilon(1e-14));
  CHECK(std::abs(g[1]) < 1e-16);
  CHECK(std::abs(g[2]) < 1e-16);

  // on the family-1 ray the row carries the centered heat kernel 1/sqrt(2 pi)
  const Vec2 row = gstar_row(fp, 0, 1.0, 1.0);
  CHECK(row[0] == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  CHECK(row[1] == 0.0);
}

TEST_CASE("far-field derivative matches centered differences") {
  const FluidParams fp = derive_params(1.4, 0.6);
  const double x = 0.8, t = 2.0, h = 1e-4;
  const Mat2 gp = gstar(fp, x + h, t);
  const Mat2 gm = gstar(fp, x - h, t);
  const Mat2 gd = gstar_dx(fp, x, t);
  for (int e = 0; e < 4; ++e)
    CHECK(gd[e] == doctest::Approx((gp[e] - gm[e]) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("grid kernel integrates to the zero-frequency symbol exactly") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const double t = 2.0;
  const KernelGrid g = fundamental_kernel(fp, t, small_cfg());
  double sum[4] = {0, 0, 0, 0};
  for (int j = 0; j < g.n; ++j)
    for (int e = 0; e < 4; ++e) sum[e] += g.val[j][e] * g.dx;
  CHECK(std::abs(sum[0] - (1.0 - g.delta_coef)) < 1e-12);
  CHECK(std::abs(sum[1]) < 1e-12);
  CHECK(std::abs(sum[2]) < 1e-12);
  CHECK(std::abs(sum[3] - 1.0) < 1e-12);
  CHECK(g.delta_coef == doctest::Approx(std::exp(-t)).epsilon(1e-15));
}

TEST_CASE("grid kernel has the parity of the underlying system") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const KernelGrid g = fundamental_kernel(fp, 1.5, small_cfg());
  const int j0 = g.center_index();
  for (const int r : {40, 400, 2000, 6000}) {
    CHECK(std::abs(g.val[j0 + r][0] - g.val[j0 - r][0]) < 1e-12);
    CHECK(std::abs(g.val[j0 + r][3] - g.val[j0 - r][3]) < 1e-12);
    CHECK(std::abs(g.val[j0 + r][1] + g.val[j0 - r][1]) < 1e-12);
    CHECK(std::abs(g.val[j0 + r][2] + g.val[j0 - r][2]) < 1e-12);
  }
}

TEST_CASE("index lookup maps coordinates to grid points") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const KernelGrid g = fundamental_kernel(fp, 1.0, small_cfg());
  CHECK(g.index_of(0.0) == g.center_index());
  const int j = g.index_of(3.217);
  CHECK(std::abs(g.x[j] - 3.217) <= g.dx / 2 + 1e-12);
}

TEST_CASE("half-line kernels satisfy the moment derivative identity") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const KernelGrid g = fundamental_kernel(fp, 2.0, small_cfg());
  const HalfLineKernels hk = half_line_kernels(g);
  const double r32 = transmissive_identity_residual(hk, 32);
  const double r16 = transmissive_identity_residual(hk, 16);
  CHECK(r32 < 1e-2);
  CHECK(r32 / r16 > 3.0);
  CHECK(r32 / r16 < 5.2);
}

TEST_CASE("reflected rows are the swapped half of the moment derivative") {
  const FluidParams fp = derive_params(1.4, 0.8);
  const KernelGrid g = fundamental_kernel(fp, 2.0, small_cfg());
  const HalfLineKernels hk = half_line_kernels(g);
  CHECK(reflected_row_mismatch(fp, hk) < 1e-13);
}

TEST_CASE("characteristic rows obey the coupled evolution identity at second order") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const double r32 = projected_identity_residual(fp, 2.0, 32, small_cfg());
  const double r16 = projected_identity_residual(fp, 2.0, 16, small_cfg());
  CHECK(r32 < 2e-2);
  CHECK(r32 / r16 > 3.0);
  CHECK(r32 / r16 < 5.5);
}

TEST_CASE("ray-weight scans stay bounded and show the correction term working") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const RayBoundScan scan = row_bound_scan(fp, {1.0, 2.0, 4.0, 8.0, 16.0}, small_cfg());
  for (int f = 0; f < 2; ++f) {
    CHECK(scan.refined_sup[f] > 0.0);
    CHECK(scan.refined_sup[f] < 40.0);
    CHECK(scan.unrefined_sup[f] < 40.0);
    // without the cross-ray correction the same weight is eventually exceeded
    CHECK(scan.same_weight_sup[f].back() > scan.same_weight_sup[f].front());
  }
}

TEST_CASE("the smooth kernel part sits under the two-ray Gaussian weight") {
  const FluidParams fp = derive_params(1.0, 1.0);
  const BoundReport rep = smooth_part_scan(fp, {1.0, 2.0, 4.0, 8.0}, small_cfg());
  CHECK(rep.sup_ratio > 0.0);
  CHECK(rep.sup_ratio < 30.0);
}

TEST_CASE("bad grid requests are rejected") {
  const FluidParams fp = derive_params(1.0, 1.0);
  GreensConfig cfg;
  cfg.n = 1000;  // not a power of two
  CHECK_THROWS_AS((void)fundamental_kernel(fp, 1.0, cfg), std::invalid_argument);
  cfg.n = 1024;
  CHECK_THROWS_AS((void)fundamental_kernel(fp, 0.0, cfg), std::invalid_argument);
  cfg.L = -1.0;
  CHECK_THROWS_AS((void)fundamental_kernel(fp, 1.0, cfg), std::invalid_argument);
}

TEST_SUITE_END();
