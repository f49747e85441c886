// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "depthsep/errors.hpp"
#include "depthsep/measure.hpp"
#include "depthsep/quadrature.hpp"

using namespace depthsep;

TEST_CASE("density examples") {
  CHECK(SphereMeasure(3).density(0.7) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(SphereMeasure(5).density(0.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(SphereMeasure(10).density(1.0) == 0.0);
  CHECK(std::isinf(SphereMeasure(2).density(1.0)));
  CHECK(SphereMeasure(2).density(0.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
  CHECK_THROWS_AS(SphereMeasure(5).density(1.2), DomainError);
  CHECK_THROWS_AS(SphereMeasure(1), DomainError);
}

TEST_CASE("density is symmetric and cdf hits its anchors") {
  for (int d : {2, 3, 5, 10, 50, 200}) {
    const SphereMeasure mu(d);
    for (double x : {0.1, 0.45, 0.9}) CHECK(mu.density(x) == mu.density(-x));
    CHECK(mu.cdf(0.0) == 0.5);
    CHECK(mu.cdf(-1.0) == 0.0);
    CHECK(mu.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(SphereMeasure(3).cdf(0.5) == doctest::Approx(0.75).epsilon(1e-12));
  // scipy/mpmath reference values (tests/oracles/freeze_values.py).
  CHECK(std::fabs(SphereMeasure(10).cdf(0.2) - 0.72227727894720722) < 1e-9);
  CHECK(std::fabs(SphereMeasure(2).cdf(0.5) - 2.0 / 3.0) < 1e-9);
  CHECK(std::fabs(SphereMeasure(5).cdf(0.3) - (0.5 + 0.75 * (0.3 - 0.009))) < 1e-9);
}

TEST_CASE("cdf is nondecreasing on a fine grid") {
  for (int d : {2, 3, 7, 40, 400}) {
    const SphereMeasure mu(d);
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = -1.0 + 2.0 * i / 1000.0;
      const double c = mu.cdf(x);
      CHECK(c >= prev - 1e-12);
      prev = c;
    }
  }
}

TEST_CASE("total mass is one under Gauss quadrature") {
  for (int d : {2, 3, 5, 10, 50, 200}) {
    const auto rule = gauss_rule(d, 30);
    CHECK(std::fabs(integrate(rule, [](double) { return 1.0; }) - 1.0) < 1e-10);
  }
  for (int d : {3, 5, 10, 50, 200}) {
    CHECK(std::fabs(adaptive_integrate(d, [](double) { return 1.0; }, 1e-12) - 1.0) < 1e-10);
  }
}

TEST_CASE("density floor near the origin for large d") {
  for (int d : {100, 400, 1000}) {
    const SphereMeasure mu(d);
    const double floor = std::sqrt(static_cast<double>(d)) / (2.0 * std::numbers::e * std::numbers::pi);
    for (int i = -50; i <= 50; ++i) {
      const double x = i / (50.0 * std::sqrt(static_cast<double>(d)));
      CHECK(mu.density(x) >= floor);
    }
  }
}
