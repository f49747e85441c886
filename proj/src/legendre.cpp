// SPDX-License-Identifier: Apache-2.0
#include "depthsep/legendre.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "depthsep/errors.hpp"
#include "depthsep/special_fn.hpp"

namespace depthsep {

LegendreFamily::LegendreFamily(int d, int max_degree) : d_(d), max_degree_(max_degree) {
  if (d < 2) throw DomainError("Legendre family needs d >= 2, got d=" + std::to_string(d));
  if (max_degree < 0) throw DomainError("Legendre family needs max_degree >= 0");
  if (d == 2 && max_degree >= 2) {
    throw DomainError("Legendre recursion is singular for d = 2 at degree >= 2; use d >= 3");
  }
  x_coeff_.assign(max_degree + 1, 0.0);
  prev_coeff_.assign(max_degree + 1, 0.0);
  log_dim_.resize(max_degree + 1);
  sqrt_dim_.resize(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n) {
    if (n >= 2) {
      const double denom = n + d - 3;
      x_coeff_[n] = (2.0 * n + d - 4) / denom;
      prev_coeff_[n] = (n - 1.0) / denom;
    }
    log_dim_[n] = log_harmonic_dimension(d, n).log_abs;
    sqrt_dim_[n] = std::exp(0.5 * log_dim_[n]);
  }
}

void LegendreFamily::eval_all(double x, std::span<double> out) const {
  if (!(std::fabs(x) <= 1.0)) throw DomainError("Legendre evaluation needs |x| <= 1 (x=" + std::to_string(x) + ")");
  if (out.size() < static_cast<std::size_t>(max_degree_ + 1)) throw DomainError("output span too short");
  out[0] = 1.0;
  if (max_degree_ == 0) return;
  out[1] = x;
  for (int n = 2; n <= max_degree_; ++n) {
    out[n] = x_coeff_[n] * x * out[n - 1] - prev_coeff_[n] * out[n - 2];
  }
}

std::vector<double> LegendreFamily::eval_all(double x) const {
  std::vector<double> out(max_degree_ + 1);
  eval_all(x, out);
  return out;
}

void LegendreFamily::eval_orthonormal(double x, std::span<double> out) const {
  eval_all(x, out);
  for (int n = 0; n <= max_degree_; ++n) {
    const double p = out[n];
    if (std::isfinite(sqrt_dim_[n])) {
      out[n] = sqrt_dim_[n] * p;
    } else if (p != 0.0) {
      out[n] = std::copysign(std::exp(0.5 * log_dim_[n] + std::log(std::fabs(p))), p);
    }
  }
}

std::vector<double> LegendreFamily::eval_orthonormal(double x) const {
  std::vector<double> out(max_degree_ + 1);
  eval_orthonormal(x, out);
  return out;
}

RecurrenceCoefficients recurrence_coefficients(int d, int count) {
  if (d < 2) throw DomainError("recurrence coefficients need d >= 2");
  if (count < 1) throw DomainError("recurrence coefficients need count >= 1");
  RecurrenceCoefficients rc{d, std::vector<double>(count)};
  // b_{k+1}^2 = (k+d-2)(k+1) / ((2k+d-2)(2k+d)), the norm ratio N_{d,k}/N_{d,k+1}
  // written out; at k = 0 it reduces to 1/d, which also covers d = 2.
  rc.off_diagonal[0] = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 1; k < count; ++k) {
    const double num = (k + d - 2.0) * (k + 1.0);
    const double den = (2.0 * k + d - 2.0) * (2.0 * k + d);
    rc.off_diagonal[k] = std::sqrt(num / den);
  }
  return rc;
}

}  // namespace depthsep
