// SPDX-License-Identifier: Apache-2.0
#include "depthsep/measure.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "depthsep/errors.hpp"
#include "depthsep/numerics.hpp"
#include "depthsep/special_fn.hpp"

namespace depthsep {

SphereMeasure::SphereMeasure(int d) : d_(d) {
  if (d < 2) throw DomainError("mu_d needs d >= 2, got d=" + std::to_string(d));
  log_norm_const_ = log_gamma(0.5 * d) - 0.5 * std::log(std::numbers::pi) - log_gamma(0.5 * (d - 1));
}

double SphereMeasure::density(double x) const {
  if (!(std::fabs(x) <= 1.0)) throw DomainError("mu_d density: |x| > 1 (x=" + std::to_string(x) + ")");
  if (d_ == 3) return std::exp(log_norm_const_);
  if (std::fabs(x) == 1.0) {
    return d_ == 2 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  const double log_one_minus_x2 = std::log1p(-x) + std::log1p(x);
  return std::exp(log_norm_const_ + 0.5 * (d_ - 3) * log_one_minus_x2);
}

double SphereMeasure::cdf(double x) const {
  if (!(std::fabs(x) <= 1.0)) throw DomainError("mu_d cdf: |x| > 1 (x=" + std::to_string(x) + ")");
  if (x == 0.0) return 0.5;
  if (x > 0.0) return 1.0 - cdf(-x);
  if (x == -1.0) return 0.0;
  // x = -cos(theta) turns the density into c_d sin^{d-2}(theta) d theta, which
  // is smooth for every d >= 2 (no endpoint singularity at d = 2).
  const double upper = std::acos(-x);
  const double log_c = log_norm_const_;
  const int power = d_ - 2;
  auto integrand = [log_c, power](double theta) {
    const double s = std::sin(theta);
    if (power == 0) return std::exp(log_c);
    if (s <= 0.0) return 0.0;
    return std::exp(log_c + power * std::log(s));
  };
  return integrate_gauss_kronrod(integrand, 0.0, upper, 1e-12).value;
}

}  // namespace depthsep
