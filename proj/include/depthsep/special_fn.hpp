// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

namespace depthsep {

/// A real number stored as sign * exp(log_abs).
///
/// Used for quantities with factorial growth (harmonic dimensions, neuron
/// thresholds) that overflow a double long before they stop being useful.
/// `sign == 0` marks an exact zero; `log_abs` is then meaningless.
struct LogNumber {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static LogNumber zero() { return {}; }
  static LogNumber from_log(double log_abs, int sign = 1) { return {log_abs, sign}; }
  static LogNumber from_double(double v);

  bool is_zero() const { return sign == 0; }
  /// Converts back to a double; may return +/-inf or 0 on over/underflow.
  double to_double() const;
  double log2_abs() const { return log_abs / std::log(2.0); }

  friend LogNumber operator*(LogNumber a, LogNumber b);
  friend LogNumber operator/(LogNumber a, LogNumber b);
  friend LogNumber operator+(LogNumber a, LogNumber b);
  friend LogNumber operator-(LogNumber a, LogNumber b);
  LogNumber operator-() const { return {log_abs, -sign}; }
  LogNumber sqrt() const;
};

/// ln Gamma(x) for x > 0.
///
/// Arguments below 10 are shifted up with the recurrence Gamma(x+1) = x Gamma(x);
/// the Stirling series with Bernoulli terms through B_16 is then accurate to
/// about one ulp. Absolute error is below 1e-13 * max(1, |ln Gamma(x)|) on
/// [0.5, 1e6]. Throws DomainError for x <= 0.
double log_gamma(double x);

/// ln N_{d,n}, the dimension of the degree-n spherical harmonics on S^{d-1}:
/// N_{d,n} = (2n+d-2)(n+d-3)! / (n!(d-2)!), with N_{d,0} = 1.
LogNumber log_harmonic_dimension(int d, int n);

/// N_{d,n} from the same closed form in exact integer arithmetic, or nullopt
/// once it reaches 2^62.
std::optional<std::uint64_t> harmonic_dimension_exact(int d, int n);

}  // namespace depthsep
