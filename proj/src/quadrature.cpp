// SPDX-License-Identifier: Apache-2.0
#include "depthsep/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "depthsep/errors.hpp"
#include "depthsep/legendre.hpp"
#include "depthsep/measure.hpp"
#include "depthsep/numerics.hpp"
#include "depthsep/tridiagonal.hpp"

namespace depthsep {

QuadratureRule gauss_rule(int d, int node_count) {
  if (d < 2) throw DomainError("gauss_rule needs d >= 2, got d=" + std::to_string(d));
  if (node_count < 1) throw DomainError("gauss_rule needs at least one node");

  QuadratureRule rule;
  rule.d = d;
  rule.exact_degree = 2 * node_count - 1;
  if (node_count == 1) {
    rule.nodes = {0.0};
    rule.weights = {1.0};
    return rule;
  }

  const auto rc = recurrence_coefficients(d, node_count - 1);
  const std::vector<double> diag(node_count, 0.0);
  const auto eig = symmetric_tridiagonal_eigen(diag, rc.off_diagonal);

  // mu_d is even: pair node i with node K-1-i and average.
  const int k = node_count;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  for (int i = 0; i < k; ++i) {
    const int j = k - 1 - i;
    const double wi = eig.first_components[i] * eig.first_components[i];
    const double wj = eig.first_components[j] * eig.first_components[j];
    rule.nodes[i] = 0.5 * (eig.eigenvalues[i] - eig.eigenvalues[j]);
    rule.weights[i] = 0.5 * (wi + wj);
  }
  if (k % 2 == 1) rule.nodes[k / 2] = 0.0;

  CompensatedSum total;
  for (double w : rule.weights) total.add(w);
  const double scale = 1.0 / total.value();
  for (double& w : rule.weights) w *= scale;
  return rule;
}

int recommended_node_count(int target_degree, double angular_frequency) {
  const int by_degree = 2 * std::max(target_degree, 1);
  const int by_frequency = static_cast<int>(std::ceil(1.5 * std::fabs(angular_frequency)));
  return std::max(by_degree, by_frequency);
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum.add(rule.weights[i] * f(rule.nodes[i]));
  return sum.value();
}

double adaptive_integrate(int d, const std::function<double(double)>& f, double abs_tol,
                          std::size_t max_evaluations) {
  if (d < 3) throw DomainError("adaptive_integrate needs d >= 3, got d=" + std::to_string(d));
  const SphereMeasure mu(d);
  const double log_c = mu.log_norm_const();
  const int power = d - 2;
  auto integrand = [&f, log_c, power](double theta) {
    const double s = std::sin(theta);
    if (s <= 0.0) return 0.0;
    return f(-std::cos(theta)) * std::exp(log_c + power * std::log(s));
  };
  return integrate_gauss_kronrod(integrand, 0.0, std::numbers::pi, abs_tol, max_evaluations).value;
}

}  // namespace depthsep
