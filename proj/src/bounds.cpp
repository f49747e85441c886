// SPDX-License-Identifier: Apache-2.0
#include "depthsep/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "depthsep/errors.hpp"

namespace depthsep {

BoundReport theorem1_bound(int d, int n, int r, double B, double sigma_max, double A) {
  if (d < 3) throw DomainError("theorem1_bound needs d >= 3, got d=" + std::to_string(d));
  if (n < 0) throw DomainError("theorem1_bound needs n >= 0");
  if (r < 0) throw DomainError("theorem1_bound needs r >= 0");
  if (!(B > 0.0)) throw DomainError("theorem1_bound needs B > 0");
  if (!(sigma_max >= 0.0)) throw DomainError("theorem1_bound needs sigma_max >= 0");
  if (!(A >= 0.0)) throw DomainError("theorem1_bound needs A >= 0");

  BoundReport rep;
  rep.d = d;
  rep.n = n;
  rep.r = r;
  rep.B = B;
  rep.sigma_max = sigma_max;
  rep.A = A;
  rep.log_harmonic_dim = log_harmonic_dimension(d, n).log_abs;
  const double numerator = 2.0 * r * B * sigma_max + 2.0 * B;
  const double N = std::exp(rep.log_harmonic_dim);
  rep.penalty = std::isfinite(N) ? numerator / std::sqrt(N) : std::exp(std::log(numerator) - 0.5 * rep.log_harmonic_dim);
  rep.lower_bound = A * (A - rep.penalty);
  rep.vacuous = rep.lower_bound <= 0.0;
  return rep;
}

double relu_sigma_max(int d, double B) {
  if (d < 1) throw DomainError("relu_sigma_max needs d >= 1");
  if (!(B > 0.0)) throw DomainError("relu_sigma_max needs B > 0");
  return std::sqrt(4.0 * d) * B + B;
}

LogNumber theorem1_width_threshold(int d, int n, double B, double sigma_max, double A, double target) {
  if (!(A > 0.0)) return LogNumber::zero();
  if (!(B > 0.0) || !(sigma_max > 0.0)) throw DomainError("width threshold needs B > 0 and sigma_max > 0");
  const LogNumber sqrt_dim = log_harmonic_dimension(d, n).sqrt();
  const LogNumber margin = LogNumber::from_double(A - target / A);
  const LogNumber numerator = sqrt_dim * margin - LogNumber::from_double(2.0 * B);
  return numerator / LogNumber::from_double(2.0 * B * sigma_max);
}

LogNumber example1_threshold(int d) {
  if (d < 3) throw DomainError("example1_threshold needs d >= 3");
  const double ln2 = std::log(2.0);
  const LogNumber sqrt_dim = log_harmonic_dimension(d, d * d).sqrt();
  const LogNumber first = LogNumber::from_log(std::log(20.0 * std::numbers::e * std::numbers::pi) + 2.0 * d * ln2 +
                                              std::log1p(std::sqrt(4.0 * d)));
  const LogNumber second = LogNumber::from_log((d + 1.0) * ln2);
  return sqrt_dim / (first + second);
}

double sine_lemma_bound(double m, int k) {
  if (!(m >= 1.0) || k < 0) throw DomainError("sine_lemma_bound needs m >= 1 and k >= 0");
  return std::max(0.0, (m - k) / (4.0 * std::numbers::e * std::numbers::pi * m));
}

double example1_A_floor() { return 1.0 / (5.0 * std::numbers::e * std::numbers::pi); }

double example1_target_error() {
  const double e_pi = std::numbers::e * std::numbers::pi;
  return 1.0 / (50.0 * e_pi * e_pi);
}

}  // namespace depthsep
