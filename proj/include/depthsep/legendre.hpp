// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace depthsep {

/// The d-dimensional Legendre polynomials P_0..P_max_degree, normalized so
/// P_n(1) = 1, and their orthonormal rescaling q_n = sqrt(N_{d,n}) P_n in L^2(mu_d).
///
/// Evaluation uses the forward three-term recursion
///   P_n = (2n+d-4)/(n+d-3) x P_{n-1} - (n-1)/(n+d-3) P_{n-2},
/// which is stable on [-1, 1]. d = 2 is refused for degrees >= 2 because the
/// recursion denominator n+d-3 vanishes at n = 2.
class LegendreFamily {
 public:
  LegendreFamily(int d, int max_degree);

  int dimension() const { return d_; }
  int max_degree() const { return max_degree_; }

  std::vector<double> eval_all(double x) const;
  void eval_all(double x, std::span<double> out) const;

  std::vector<double> eval_orthonormal(double x) const;
  void eval_orthonormal(double x, std::span<double> out) const;

  /// ln N_{d,n} for n <= max_degree.
  double log_dimension(int n) const { return log_dim_[n]; }

 private:
  int d_;
  int max_degree_;
  std::vector<double> x_coeff_;     // (2n+d-4)/(n+d-3)
  std::vector<double> prev_coeff_;  // (n-1)/(n+d-3)
  std::vector<double> log_dim_;
  std::vector<double> sqrt_dim_;    // +inf where sqrt(N_{d,n}) overflows
};

/// Off-diagonal of the symmetric Jacobi matrix of {q_n}: x q_k = b_{k+1} q_{k+1} + b_k q_{k-1}.
/// The diagonal is identically zero because mu_d is even.
struct RecurrenceCoefficients {
  int d = 0;
  std::vector<double> off_diagonal;  // b_1..b_K
};

/// b_{k+1} = ((k+d-2)/(2k+d-2)) sqrt(N_{d,k} / N_{d,k+1}) for k = 0..K-1,
/// with the k = 0 ratio equal to 1 (x P_0 = P_1 for every d).
RecurrenceCoefficients recurrence_coefficients(int d, int count);

}  // namespace depthsep
