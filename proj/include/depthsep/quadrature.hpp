// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace depthsep {

/// Gauss rule for mu_d: sum_i weights[i] f(nodes[i]) integrates every
/// polynomial of degree <= exact_degree exactly against mu_d.
struct QuadratureRule {
  int d = 0;
  std::vector<double> nodes;    // strictly increasing, symmetric about 0
  std::vector<double> weights;  // positive, summing to 1
  int exact_degree = -1;        // 2K - 1 for K nodes

  std::size_t size() const { return nodes.size(); }
};

/// K-point Gauss rule for mu_d via Golub-Welsch on the zero-diagonal Jacobi
/// matrix of the orthonormal Legendre family. Nodes and weights are
/// symmetrized explicitly.
///
/// To expand a function oscillating at angular frequency omega up to degree
/// D, use K >= max(2 D, ceil(1.5 omega)); see `recommended_node_count`.
QuadratureRule gauss_rule(int d, int node_count);

int recommended_node_count(int target_degree, double angular_frequency);

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

/// Integral of f against mu_d by adaptive Gauss-Kronrod in the angle
/// variable x = -cos(theta). Requires d >= 3. Throws NumericFailure if
/// max_evaluations runs out before the error estimate reaches abs_tol.
double adaptive_integrate(int d, const std::function<double(double)>& f, double abs_tol,
                          std::size_t max_evaluations = 1'000'000);

}  // namespace depthsep
