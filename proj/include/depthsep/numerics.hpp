// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

namespace depthsep {

/// Neumaier (improved Kahan) compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  void add(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
///
/// Repeatedly bisects the interval with the largest |K15 - G7| until the sum
/// of those estimates drops below abs_tol. Throws NumericFailure when
/// max_evaluations is exhausted first.
AdaptiveResult integrate_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                                       double abs_tol, std::size_t max_evaluations = 1'000'000);

}  // namespace depthsep
