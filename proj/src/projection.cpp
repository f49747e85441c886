// SPDX-License-Identifier: Apache-2.0
#include "depthsep/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "depthsep/errors.hpp"
#include "depthsep/legendre.hpp"
#include "depthsep/measure.hpp"
#include "depthsep/numerics.hpp"

namespace depthsep {

namespace {

bool oscillates_between_nodes(const Profile1D& g, const QuadratureRule& rule, const std::vector<double>& at_nodes) {
  for (std::size_t i = 0; i + 1 < rule.nodes.size(); ++i) {
    const double a = rule.nodes[i];
    const double b = rule.nodes[i + 1];
    const double values[5] = {at_nodes[i], g(a + 0.25 * (b - a)), g(a + 0.5 * (b - a)), g(a + 0.75 * (b - a)),
                              at_nodes[i + 1]};
    int turns = 0;
    double prev = values[1] - values[0];
    for (int j = 2; j < 5; ++j) {
      const double step = values[j] - values[j - 1];
      if (step * prev < 0.0) ++turns;
      if (step != 0.0) prev = step;
    }
    if (turns >= 2) return true;
  }
  return false;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the classical
// Legendre polynomial.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double z_prev = z;
      z = z_prev - p0 / dp;
      if (std::fabs(z - z_prev) <= 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    w[n - 1 - i] = w[i];
  }
}

double dot(const std::vector<double>& w, const std::vector<double>& a, const std::vector<double>& b) {
  CompensatedSum s;
  for (std::size_t i = 0; i < w.size(); ++i) s.add(w[i] * a[i] * b[i]);
  return s.value();
}

}  // namespace

Expansion expand(const Profile1D& g, int d, int max_degree, const QuadratureRule& rule) {
  if (rule.d != d) throw DomainError("expand: rule built for d=" + std::to_string(rule.d) + ", not d=" + std::to_string(d));
  if (max_degree < 0) throw DomainError("expand: max_degree must be >= 0");
  if (rule.exact_degree < 2 * max_degree) {
    throw DomainError("expand: rule exact to degree " + std::to_string(rule.exact_degree) + " but degree " +
                      std::to_string(2 * max_degree) + " is needed; use at least " + std::to_string(max_degree + 1) +
                      " nodes");
  }
  const LegendreFamily family(d, max_degree);
  const std::size_t k = rule.size();
  std::vector<double> values(k);
  for (std::size_t i = 0; i < k; ++i) values[i] = g(rule.nodes[i]);

  std::vector<CompensatedSum> sums(max_degree + 1);
  CompensatedSum norm;
  std::vector<double> q(max_degree + 1);
  for (std::size_t i = 0; i < k; ++i) {
    family.eval_orthonormal(rule.nodes[i], q);
    const double wg = rule.weights[i] * values[i];
    for (int n = 0; n <= max_degree; ++n) sums[n].add(wg * q[n]);
    norm.add(wg * values[i]);
  }

  Expansion e;
  e.d = d;
  e.node_count = static_cast<int>(k);
  e.coefficients.resize(max_degree + 1);
  for (int n = 0; n <= max_degree; ++n) e.coefficients[n] = sums[n].value();
  e.norm_sq_estimate = norm.value();
  e.under_resolved = oscillates_between_nodes(g, rule, values);
  return e;
}

double residual(const Expansion& e, int n) {
  if (n < 0 || n > e.max_degree() + 1) {
    throw DomainError("residual: n=" + std::to_string(n) + " outside [0, " + std::to_string(e.max_degree() + 1) + "]");
  }
  // norm - sum_{i<n} alpha_i^2 = sum_{i>=n} alpha_i^2 + (mass above degree N).
  // The second term is dropped when it is at rounding level, otherwise a fully
  // captured polynomial would show a residual of sqrt(ulp) ~ 1e-8.
  CompensatedSum all;
  CompensatedSum tail;
  for (int i = 0; i <= e.max_degree(); ++i) {
    const double sq = e.coefficients[i] * e.coefficients[i];
    all.add(sq);
    if (i >= n) tail.add(sq);
  }
  double excess = e.norm_sq_estimate - all.value();
  if (std::fabs(excess) <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, e.norm_sq_estimate)) {
    excess = 0.0;
  }
  return std::sqrt(std::max(0.0, tail.value() + excess));
}

double best_poly_error_oracle(const Profile1D& g, int d, int k, const OracleOptions& options) {
  if (k < 0) throw DomainError("best_poly_error_oracle: k must be >= 0");
  if (options.panels < 1 || options.points_per_panel < 2) throw DomainError("best_poly_error_oracle: bad options");
  const SphereMeasure mu(d);

  std::vector<double> gl_x;
  std::vector<double> gl_w;
  gauss_legendre(options.points_per_panel, gl_x, gl_w);

  std::vector<double> x;
  std::vector<double> w;
  const double width = std::numbers::pi / options.panels;
  for (int p = 0; p < options.panels; ++p) {
    const double center = (p + 0.5) * width;
    for (int j = 0; j < options.points_per_panel; ++j) {
      const double theta = center + 0.5 * width * gl_x[j];
      const double s = std::sin(theta);
      const double weight =
          0.5 * width * gl_w[j] * std::exp(mu.log_norm_const() + (d - 2) * std::log(s));
      if (weight <= 0.0) continue;
      x.push_back(-std::cos(theta));
      w.push_back(weight);
    }
  }
  const std::size_t m = x.size();
  if (static_cast<std::size_t>(k) + 1 > m) throw NumericFailure("best_poly_error_oracle: too few sample points");

  std::vector<std::vector<double>> basis;
  basis.reserve(k + 1);
  {
    std::vector<double> ones(m, 1.0);
    const double nrm = std::sqrt(dot(w, ones, ones));
    for (double& v : ones) v /= nrm;
    basis.push_back(std::move(ones));
  }
  for (int j = 1; j <= k; ++j) {
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = x[i] * basis.back()[i];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double c = dot(w, v, b);
        for (std::size_t i = 0; i < m; ++i) v[i] -= c * b[i];
      }
    }
    const double nrm = std::sqrt(dot(w, v, v));
    if (!(nrm > 1e-13)) throw NumericFailure("best_poly_error_oracle: singular basis at degree " + std::to_string(j));
    for (double& vi : v) vi /= nrm;
    basis.push_back(std::move(v));
  }

  std::vector<double> r(m);
  for (std::size_t i = 0; i < m; ++i) r[i] = g(x[i]);
  // Project twice; the second pass removes what rounding left behind.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const double c = dot(w, r, b);
      for (std::size_t i = 0; i < m; ++i) r[i] -= c * b[i];
    }
  }
  return dot(w, r, r);
}

int measured_sine_threshold(int m, int k, int d_min, int d_max) {
  if (m < 1 || k < 0 || d_min < 3 || d_max < d_min) throw DomainError("measured_sine_threshold: bad arguments");
  const double bound = std::max(0.0, (m - k) / (4.0 * std::numbers::e * std::numbers::pi * m));
  int smallest = -1;
  for (int d = d_max; d >= d_min; --d) {
    const double omega = std::numbers::pi * std::sqrt(static_cast<double>(d)) * m;
    const auto rule = gauss_rule(d, recommended_node_count(k + 1, omega) + 8);
    auto g = [omega](double x) { return std::sin(omega * x); };
    const double err = residual(expand(g, d, k, rule), k + 1);
    if (err * err < bound) break;
    smallest = d;
  }
  return smallest;
}

}  // namespace depthsep
