#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "gwkde/errors.hpp"
#include "gwkde/kernels.hpp"
#include "gwkde/quadrature.hpp"
#include "gwkde/rng.hpp"
#include "gwkde/specfun.hpp"

using namespace gwkde;

TEST_CASE("make_config validates and derives the coupled bandwidth") {
  EstimatorConfig cfg = make_config(1.0, -1.0, -1.0, 0.25);
  CHECK(cfg.h == 0.25);  // c2/c1 = 1 exactly
  cfg = make_config(2.0, -2.0, -1.0, 0.3);
  CHECK(cfg.h == doctest::Approx(0.15).epsilon(1e-15));

  CHECK_THROWS_AS(make_config(0.0, -1.0, -1.0, 1.0), config_error);
  CHECK_THROWS_AS(make_config(-1.0, -1.0, -1.0, 1.0), config_error);
  CHECK_THROWS_AS(make_config(1.0, 1.0, -1.0, 1.0), config_error);
  CHECK_THROWS_AS(make_config(1.0, 0.0, -1.0, 1.0), config_error);
  CHECK_THROWS_AS(make_config(1.0, -1.0, 0.5, 1.0), config_error);
  CHECK_THROWS_AS(make_config(1.0, -1.0, -1.0, 0.0), config_error);
  CHECK_THROWS_AS(make_config(1.0, -1.0, -1.0, -2.0), config_error);
  CHECK_THROWS_AS(
      make_config(std::numeric_limits<double>::quiet_NaN(), -1.0, -1.0, 1.0),
      config_error);
}

TEST_CASE("branch shapes agree at the junction under the coupling") {
  for (double c1 : {-0.5, -1.0, -3.0}) {
    for (double c2 : {-0.25, -1.0, -2.0}) {
      EstimatorConfig cfg = make_config(1.3, c1, c2, 0.2);
      double rho_at_a = rho_shape(cfg.a, cfg);
      // k_shape requires x > a; its closed form extends continuously.
      double k_at_a = (cfg.a + cfg.c2 * cfg.b) / cfg.a;
      CHECK(rho_at_a == doctest::Approx(k_at_a).epsilon(1e-14));
    }
  }
}

TEST_CASE("shape arithmetic") {
  EstimatorConfig cfg = make_config(1.0, -1.0, -1.0, 0.05);
  CHECK(rho_shape(0.5, cfg) == doctest::Approx(0.45).epsilon(1e-15));

  EstimatorConfig tail = make_config(1.0, -1.0, -1.0, 0.2);
  CHECK(k_shape(2.0, tail) == doctest::Approx(1.8).epsilon(1e-15));

  EstimatorConfig steep = make_config(1.0, -2.0, -2.0, 0.3);
  CHECK(k_shape(1.5, steep) == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("shape domain and positivity errors") {
  EstimatorConfig cfg = make_config(1.0, -1.0, -1.0, 0.1);
  CHECK_THROWS_AS(rho_shape(0.0, cfg), invalid_shape_error);  // 0 - 0.1 <= 0
  CHECK_THROWS_AS(rho_shape(2.0, cfg), domain_error);         // x > a
  CHECK_THROWS_AS(k_shape(0.5, cfg), domain_error);           // x <= a

  EstimatorConfig wide = make_config(1.0, -2.0, -2.0, 0.6);
  CHECK_THROWS_AS(k_shape(1.1, wide), invalid_shape_error);  // 1.1 - 1.2 <= 0

  try {
    rho_shape(0.0, cfg);
    CHECK(false);
  } catch (const invalid_shape_error& e) {
    CHECK(e.branch() == "gamma");
    CHECK(e.shape() == doctest::Approx(-0.1));
    CHECK(e.x() == 0.0);
    CHECK(e.bandwidth() == doctest::Approx(0.1));
  }
}

TEST_CASE("gamma kernel closed forms") {
  // rho = 0.5, scale 1: pdf(y) = exp(-y) / sqrt(pi y).
  EstimatorConfig cfg = make_config(1.0, -1.0, -1.0, 0.25);
  double x = 0.75;
  CHECK(rho_shape(x, cfg) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gamma_kernel(1.0, x, cfg) ==
        doctest::Approx(std::exp(-1.0) / std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(gamma_kernel(4.0, x, cfg) ==
        doctest::Approx(std::exp(-4.0) / std::sqrt(4.0 * M_PI))
            .epsilon(1e-13));
  // generic value against the pdf formula with independent pieces
  double rho = rho_shape(0.9, cfg);
  double y = 0.37;
  double expected = std::pow(y, rho - 1.0) * std::exp(-y) /
                    (std::pow(1.0, rho) * specfun::gamma_fn(rho));
  CHECK(gamma_kernel(y, 0.9, cfg) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("weibull kernel closed forms") {
  // k = 2, scale 1: pdf(y) = 2 y exp(-y^2).
  EstimatorConfig cfg = make_config(1.0, -1.0, -1.0, 0.5);
  double x = 2.5;
  CHECK(k_shape(x, cfg) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(weibull_kernel(1.0, x, cfg) ==
        doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-13));
  CHECK(weibull_kernel(0.5, x, cfg) ==
        doctest::Approx(1.0 * std::exp(-0.25)).epsilon(1e-13));
  // k = 1 reduces to Exp(1/a)
  double x1 = 1.5;
  CHECK(k_shape(x1, cfg) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(weibull_kernel(2.0, x1, cfg) ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("y = 0 limit policy") {
  EstimatorConfig cfg = make_config(1.0, -1.0, -1.0, 0.25);
  // gamma shape 0.5 < 1 -> diverges
  CHECK(std::isinf(gamma_kernel(0.0, 0.75, cfg)));
  // weibull shape 2 > 1 -> 0
  CHECK(weibull_kernel(0.0, 2.5, cfg) == 0.0);
  // weibull shape exactly 1 -> 1/a
  EstimatorConfig cfg2 = make_config(2.0, -1.0, -1.0, 0.5);
  double x1 = 2.5;  // k = (2.5 - 0.5)/2 = 1
  CHECK(k_shape(x1, cfg2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(weibull_kernel(0.0, x1, cfg2) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("both kernels integrate to one over the half line") {
  CounterRng rng(99u, 3u);
  for (std::uint64_t i = 0; i < 10; ++i) {
    double a = 0.5 + 2.0 * rng.uniform(3 * i);
    double b = 0.02 + 0.2 * rng.uniform(3 * i + 1);
    EstimatorConfig cfg = make_config(a, -1.0, -1.0, b);
    double xg = cfg.h * 1.5 + rng.uniform(3 * i + 2) * (a - cfg.h * 1.5);
    double rho = rho_shape(xg, cfg);
    double hi = asym::gamma_kernel_quantile(rho, a, 1.0 - 1e-14) * 1.5;
    double mass = quadrature::integrate(
        [&](double y) { return gamma_kernel(y, xg, cfg); }, 0.0, hi, 1e-10,
        1e-10);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

    double xw = a * (1.2 + rng.uniform(3 * i + 2));
    double k = k_shape(xw, cfg);
    double hiw = asym::weibull_kernel_quantile(k, a, 1.0 - 1e-14) * 1.5;
    double massw = quadrature::integrate(
        [&](double y) { return weibull_kernel(y, xw, cfg); }, 0.0, hiw, 1e-10,
        1e-10);
    CHECK(massw == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("shape is linear in x with slope 1/a") {
  EstimatorConfig cfg = make_config(1.7, -1.0, -1.0, 0.1);
  double d = 1e-3;
  for (double x : {0.3, 0.8, 1.5}) {
    double slope = (rho_shape(x + d, cfg) - rho_shape(x, cfg)) / d;
    CHECK(slope == doctest::Approx(1.0 / cfg.a).epsilon(1e-9));
  }
}
