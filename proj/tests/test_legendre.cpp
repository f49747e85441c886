// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "depthsep/errors.hpp"
#include "depthsep/legendre.hpp"

using namespace depthsep;

TEST_CASE("eval_all examples") {
  const LegendreFamily five(5, 30);
  for (double p : five.eval_all(1.0)) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(LegendreFamily(9, 3).eval_all(0.3)[1] == 0.3);
  CHECK(std::fabs(LegendreFamily(4, 2).eval_all(0.5)[2]) < 1e-15);
  // Explicit Gegenbauer power sums (tests/oracles/freeze_values.py), d = 7, x = 0.3.
  const double expected[] = {1.0, 0.3, -0.061666666666666667, -0.1095, -0.02204375, 0.039114375, 0.02862334375};
  const auto got = LegendreFamily(7, 6).eval_all(0.3);
  for (int n = 0; n <= 6; ++n) CHECK(got[n] == doctest::Approx(expected[n]).epsilon(1e-13));
}

TEST_CASE("P_2 closed form (d x^2 - 1)/(d - 1)") {
  for (int d : {3, 4, 8, 50}) {
    const LegendreFamily fam(d, 2);
    for (double x : {-0.9, -0.2, 0.0, 0.6}) {
      CHECK(fam.eval_all(x)[2] == doctest::Approx((d * x * x - 1.0) / (d - 1.0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("eval_orthonormal examples") {
  const auto at_one = LegendreFamily(3, 12).eval_orthonormal(1.0);
  for (int n = 0; n <= 12; ++n) CHECK(at_one[n] == doctest::Approx(std::sqrt(2.0 * n + 1.0)).epsilon(1e-13));
  CHECK(LegendreFamily(11, 4).eval_orthonormal(-0.37)[0] == 1.0);
  CHECK(LegendreFamily(3, 4).eval_orthonormal(0.0)[1] == 0.0);
}

TEST_CASE("orthonormal scaling survives overflow of sqrt(N)") {
  // N_{2000,1000} is far beyond double range.
  const LegendreFamily fam(2000, 1000);
  CHECK(fam.log_dimension(1000) > 1420.0);
  for (double x : {0.999, 0.05}) {
    const auto q = fam.eval_orthonormal(x);
    const auto p = fam.eval_all(x);
    for (int n : {100, 400, 1000}) {
      if (p[n] == 0.0) continue;
      const double log_expected = 0.5 * fam.log_dimension(n) + std::log(std::fabs(p[n]));
      if (log_expected < 700.0) {
        CHECK(std::log(std::fabs(q[n])) == doctest::Approx(log_expected).epsilon(1e-12));
      } else if (log_expected > 710.0) {
        CHECK(std::isinf(q[n]));
      }
    }
  }
}

TEST_CASE("sup norm of P_n is one on a dense grid") {
  for (int d : {3, 5, 10, 25}) {
    const LegendreFamily fam(d, 50);
    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) {
      const auto p = fam.eval_all(-1.0 + 2.0 * i / 10000.0);
      for (double v : p) worst = std::max(worst, std::fabs(v));
    }
    CHECK(worst <= 1.0 + 1e-9);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(LegendreFamily(3, 4).eval_all(1.0001), DomainError);
  CHECK_THROWS_AS(LegendreFamily(2, 2), DomainError);
  CHECK_NOTHROW(LegendreFamily(2, 1));
  CHECK_THROWS_AS(LegendreFamily(1, 0), DomainError);
  CHECK_THROWS_AS(recurrence_coefficients(3, 0), DomainError);
}

TEST_CASE("recurrence coefficient examples") {
  const auto three = recurrence_coefficients(3, 6);
  CHECK(three.off_diagonal[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(three.off_diagonal[1] == doctest::Approx(2.0 / std::sqrt(15.0)).epsilon(1e-15));
  for (int k = 1; k <= 6; ++k) {
    CHECK(three.off_diagonal[k - 1] == doctest::Approx(k / std::sqrt(4.0 * k * k - 1.0)).epsilon(1e-15));
  }
  const auto two = recurrence_coefficients(2, 4);
  CHECK(two.off_diagonal[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(two.off_diagonal[2] == doctest::Approx(0.5).epsilon(1e-15));
  for (int d : {3, 7, 40}) {
    const auto rc = recurrence_coefficients(d, 200);
    for (double b : rc.off_diagonal) CHECK((b > 0.0 && b < 1.0));
    CHECK(rc.off_diagonal[199] >= 0.4);
    CHECK(rc.off_diagonal[199] <= 0.6);
  }
}

TEST_CASE("recurrence coefficients reconstruct x q_k from q_{k-1}, q_{k+1}") {
  for (int d : {3, 4, 10, 60}) {
    const int kmax = 30;
    const auto rc = recurrence_coefficients(d, kmax + 1);
    const LegendreFamily fam(d, kmax + 1);
    for (int i = 0; i < 100; ++i) {
      const double x = -0.995 + 1.99 * i / 99.0;
      const auto q = fam.eval_orthonormal(x);
      for (int k = 0; k <= kmax; ++k) {
        const double lhs = x * q[k];
        const double rhs = rc.off_diagonal[k] * q[k + 1] + (k > 0 ? rc.off_diagonal[k - 1] * q[k - 1] : 0.0);
        CHECK(std::fabs(lhs - rhs) <= 1e-9 * std::max(1.0, std::fabs(lhs)));
      }
    }
  }
}
