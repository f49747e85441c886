// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "depthsep/quadrature.hpp"

namespace depthsep {

using Profile1D = std::function<double(double)>;

/// Coefficients of a profile g in the orthonormal basis q_i = sqrt(N_{d,i}) P_i
/// of L^2(mu_d), together with an independent quadrature estimate of ||g||^2.
struct Expansion {
  int d = 0;
  std::vector<double> coefficients;  // alpha_0..alpha_N
  double norm_sq_estimate = 0.0;
  int node_count = 0;
  /// Set when g turned direction more than once between adjacent nodes
  /// somewhere, i.e. the rule likely under-samples it.
  bool under_resolved = false;

  int max_degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// alpha_i = integral of g q_i against mu_d for i = 0..max_degree, using `rule`.
/// Throws DomainError unless rule.d == d and rule.exact_degree >= 2 max_degree.
Expansion expand(const Profile1D& g, int d, int max_degree, const QuadratureRule& rule);

/// A_{n,d}(g): L^2(mu_d) distance from g to polynomials of degree <= n-1,
/// as sqrt(max(0, ||g||^2 - sum_{i<n} alpha_i^2)). Valid for 0 <= n <= N+1.
double residual(const Expansion& e, int n);

struct OracleOptions {
  int panels = 256;
  int points_per_panel = 16;
};

/// min over degree-k polynomials p of ||g - p||^2 in L^2(mu_d), computed on a
/// path that shares nothing with `expand`: composite Gauss-Legendre in the
/// angle variable, a discrete Stieltjes (Gram-Schmidt) basis built with full
/// reorthogonalization, and the residual integrated directly.
double best_poly_error_oracle(const Profile1D& g, int d, int k, const OracleOptions& options = {});

/// Smallest d in [d_min, d_max] from which the sine lower bound
/// (m-k)/(4 e pi m) holds for sin(pi sqrt(d) m x) against all degree-k
/// polynomials, for every tested d up to d_max. Returns -1 if it fails at d_max.
int measured_sine_threshold(int m, int k, int d_min, int d_max);

}  // namespace depthsep
