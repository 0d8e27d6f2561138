#include <doctest.h>

#include <set>
#include <stdexcept>

#include "pmlab/lemmas.hpp"

using namespace pmlab;

TEST_SUITE_BEGIN("lemmas");

namespace {

const ConvId kAllIds[] = {
    ConvId::early_window,       ConvId::single_slice,
    ConvId::mid_gauss,          ConvId::same_ray_sharp,
    ConvId::mid_cross,          ConvId::same_ray_log_early,
    ConvId::same_ray_log_late,  ConvId::cross_ray_log_early,
    ConvId::cross_ray_log_late, ConvId::boundary_time,
    ConvId::boundary_moving,    ConvId::memory_decay,
    ConvId::memory_early,
};

ConvParams fast_params() {
  ConvParams p;
  p.times = {4.0, 16.0, 64.0};
  p.x_offsets = {0.0, -1.0, 1.0, -3.0, 3.0};
  p.rel_tol = 1e-6;
  return p;
}

}  // namespace

TEST_CASE("every inequality id has a distinct name") {
  std::set<std::string> names;
  for (ConvId id : kAllIds) {
    const std::string n = conv_name(id);
    CHECK(!n.empty());
    names.insert(n);
  }
  CHECK(names.size() == 13);
}

TEST_CASE("representative windows verify with a stable constant") {
  ConvParams p = fast_params();

  SUBCASE("gaussian source on the other ray") {
    p.alpha = 1.0;
    p.times = {16.0, 64.0};  // at t=4 the window is barely open and the
                             // constant has not settled yet
    const CheckReport rep = check_convolution(ConvId::mid_gauss, p);
    CHECK(rep.passed);
    CHECK(rep.decade_ok);
    CHECK(rep.overall > 0.0);
  }
  SUBCASE("single time slice allows coincident rays") {
    p.lambda_p = p.lambda;
    p.alpha = 0.5;
    p.beta = 0.5;
    const CheckReport rep = check_convolution(ConvId::single_slice, p);
    CHECK(rep.passed);
  }
  SUBCASE("same-ray window just past the sharp threshold") {
    p.alpha = 3.5;
    p.times = {64.0, 256.0};  // the window [sqrt(t), t/2] is empty at t=4
    const CheckReport rep = check_convolution(ConvId::same_ray_sharp, p);
    CHECK(rep.passed);
  }
  SUBCASE("time-only boundary kernel") {
    const CheckReport rep = check_convolution(ConvId::boundary_time, p);
    CHECK(rep.passed);
  }
  SUBCASE("memory kernel preserves algebraic decay") {
    p.alpha = 2.0;
    p.times = {16.0, 64.0};  // past the transient hump near mu*(alpha+3/2)
    const CheckReport rep = check_convolution(ConvId::memory_decay, p);
    CHECK(rep.passed);
  }
  SUBCASE("early memory window dies exponentially") {
    p.mu = 5.0;
    p.times = {64.0, 256.0, 1024.0};
    const CheckReport rep = check_convolution(ConvId::memory_early, p);
    CHECK(rep.passed);
    CHECK(rep.sup_ratio.back() < rep.sup_ratio.front());
  }
}

TEST_CASE("hypothesis violations are rejected up front") {
  ConvParams p = fast_params();

  SUBCASE("early window needs the source power below the log threshold") {
    p.beta = 1.3;
    CHECK_THROWS_AS((void)check_convolution(ConvId::early_window, p), std::invalid_argument);
  }
  SUBCASE("cross-ray windows need distinct rays") {
    p.lambda_p = p.lambda;
    p.alpha = 1.0;
    CHECK_THROWS_AS((void)check_convolution(ConvId::mid_gauss, p), std::invalid_argument);
  }
  SUBCASE("sharpened same-ray window needs a steep source") {
    p.alpha = 3.0;
    CHECK_THROWS_AS((void)check_convolution(ConvId::same_ray_sharp, p), std::invalid_argument);
  }
  SUBCASE("moving boundary kernel needs a nonzero ray speed") {
    p.lambda = 0.0;
    CHECK_THROWS_AS((void)check_convolution(ConvId::boundary_moving, p), std::invalid_argument);
  }
  SUBCASE("memory kernel needs a positive rate") {
    p.mu = 0.0;
    CHECK_THROWS_AS((void)check_convolution(ConvId::memory_decay, p), std::invalid_argument);
  }
  SUBCASE("memory windows starting inside the transient are rejected") {
    p.alpha = 2.0;  // hump sits near mu*(alpha+3/2) = 14, so t=4 is too early
    CHECK_THROWS_AS((void)check_convolution(ConvId::memory_decay, p), std::invalid_argument);
  }
  SUBCASE("times below the window start are rejected") {
    p.times = {1.0, 4.0};
    CHECK_THROWS_AS((void)check_convolution(ConvId::boundary_time, p), std::invalid_argument);
  }
}

TEST_CASE("the log factor is detected exactly at the borderline exponent") {
  ConvParams p;
  p.x_offsets = {0.0, -1.0, 1.0, -3.0, 3.0};

  SUBCASE("late window at the borderline") {
    p.alpha = 1.0;
    const LogSplit split = check_log_threshold(ConvId::same_ray_log_late, p);
    CHECK(split.log_detected);
    CHECK(split.growth_plain > 1.12);
    CHECK(split.growth_with_log < 1.10);
  }
  SUBCASE("early window at the borderline") {
    p.beta = 1.25;
    const LogSplit split = check_log_threshold(ConvId::same_ray_log_early, p);
    CHECK(split.log_detected);
  }
  SUBCASE("off the borderline no log factor is needed") {
    p.beta = 1.0;
    // below the threshold the ratio settles like t^(-1/4), so the dis-
    // criminating decade has to sit late enough for the transient to die
    p.times = {4096.0, 16384.0};
    const LogSplit split = check_log_threshold(ConvId::same_ray_log_early, p);
    CHECK(!split.log_detected);
    CHECK(split.growth_plain < 1.12);
  }
  SUBCASE("non-log windows are rejected") {
    CHECK_THROWS_AS((void)check_log_threshold(ConvId::mid_gauss, p), std::invalid_argument);
  }
}

TEST_CASE("weight product rows hold pointwise") {
  ProductParams p;
  p.times = {4.0, 16.0, 64.0};
  p.n_grid = 2001;

  SUBCASE("gaussian weight against its own algebraic envelope") {
    const CheckReport rep = check_product_row(1, p);
    CHECK(rep.passed);
    CHECK(rep.overall > 0.0);
  }
  SUBCASE("two gaussians widen into one") {
    const CheckReport rep = check_product_row(4, p);
    CHECK(rep.passed);
  }
  SUBCASE("two algebraic weights on the same ray") {
    const CheckReport rep = check_product_row(9, p);
    CHECK(rep.passed);
  }
  SUBCASE("inter-ray indicator bound") {
    const CheckReport rep = check_indicator_product(p);
    CHECK(rep.passed);
  }
}

TEST_CASE("product rows reject exponents outside their range") {
  ProductParams p;
  p.times = {4.0, 16.0};

  SUBCASE("row index range") {
    CHECK_THROWS_AS((void)check_product_row(0, p), std::invalid_argument);
    CHECK_THROWS_AS((void)check_product_row(13, p), std::invalid_argument);
  }
  SUBCASE("same-ray algebraic pair needs enough combined decay") {
    p.alpha = 0.5;
    p.beta = 0.5;
    CHECK_THROWS_AS((void)check_product_row(9, p), std::invalid_argument);
  }
  SUBCASE("cross-ray algebraic pair caps each exponent") {
    p.alpha = 2.0;
    CHECK_THROWS_AS((void)check_product_row(10, p), std::invalid_argument);
  }
  SUBCASE("algebraic-times-threshold row caps its exponent") {
    p.alpha = 2.0;
    CHECK_THROWS_AS((void)check_product_row(11, p), std::invalid_argument);
  }
  SUBCASE("coincident rays are rejected") {
    p.lambda_p = p.lambda;
    CHECK_THROWS_AS((void)check_product_row(1, p), std::invalid_argument);
  }
}

TEST_SUITE_END();
