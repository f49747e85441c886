// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace depthsep {

/// The probability measure mu_d on [-1, 1] with density
/// c_d (1 - x^2)^((d-3)/2), c_d = Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2)).
///
/// mu_d is the law of x_1 (equivalently of <x, x'>) for x, x' uniform on S^{d-1}.
class SphereMeasure {
 public:
  explicit SphereMeasure(int d);

  int dimension() const { return d_; }
  double log_norm_const() const { return log_norm_const_; }

  /// Density at x. Throws DomainError for |x| > 1; returns +inf at the
  /// endpoints when d = 2.
  double density(double x) const;

  /// mu_d([-1, x]) to absolute accuracy 1e-9.
  double cdf(double x) const;

  /// Second moment, exactly 1/d.
  double second_moment() const { return 1.0 / d_; }

 private:
  int d_;
  double log_norm_const_;
};

}  // namespace depthsep
