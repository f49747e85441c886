// SPDX-License-Identifier: Apache-2.0
#include "depthsep/constructor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "depthsep/errors.hpp"
#include "depthsep/sphere_mc.hpp"

namespace depthsep {

double Ridge1D::evaluate(double x) const {
  double s = constant;
  for (const auto& u : units) s += u.alpha * std::max(0.0, u.gamma * x - u.beta);
  return s;
}

namespace {

void check_lipschitz(const std::function<double(double)>& f, double R, double L, std::size_t points) {
  const double step = 2.0 * R / (points - 1);
  double prev = f(-R);
  double worst = 0.0;
  for (std::size_t i = 1; i < points; ++i) {
    const double x = (i + 1 == points) ? R : -R + i * step;
    const double cur = f(x);
    worst = std::max(worst, std::fabs(cur - prev) / step);
    prev = cur;
  }
  if (worst > 1.05 * L) {
    throw DomainError("profile is not " + std::to_string(L) + "-Lipschitz: measured slope " + std::to_string(worst));
  }
}

void append_side(Ridge1D& out, const std::function<double(double)>& f, int intervals, double h, int sign) {
  // Breakpoints t_j = j h along direction `sign`; slope_j is the slope of the
  // interpolant on [t_j, t_{j+1}] measured along +x.
  double prev_slope = 0.0;
  double f_prev = out.constant;
  for (int j = 0; j < intervals; ++j) {
    const double t_next = (j + 1 == intervals) ? out.R : (j + 1) * h;
    const double t_here = j * h;
    const double f_next = f(sign * t_next);
    const double slope = sign * (f_next - f_prev) / (t_next - t_here);
    const double alpha = sign * (slope - prev_slope);
    if (alpha != 0.0) out.units.push_back({alpha, sign, t_here});
    prev_slope = slope;
    f_prev = f_next;
  }
}

}  // namespace

Ridge1D approx_1d(const std::function<double(double)>& f, double R, double L, double eps) {
  if (!(R > 0.0) || !(L > 0.0) || !(eps > 0.0)) throw DomainError("approx_1d needs R, L, eps > 0");
  const double budget = 2.0 * R * L / eps;
  const auto check_points = static_cast<std::size_t>(std::clamp(std::ceil(10.0 * budget), 1000.0, 2.0e6));
  check_lipschitz(f, R, L, check_points);

  Ridge1D out;
  out.R = R;
  out.L = L;
  out.eps = eps;
  out.constant = f(0.0);
  const int intervals = static_cast<int>(std::floor(R * L / eps));
  if (intervals >= 1) {
    out.spacing = R / intervals;
    append_side(out, f, intervals, out.spacing, +1);
    append_side(out, f, intervals, out.spacing, -1);
  } else {
    out.spacing = R;  // the constant f(0) is already within L R < eps
  }

  // Grid spacing <= eps / (10 L), so Lipschitz continuity extends the grid
  // check to all of [-R, R] with at most 10% slack.
  const auto grid = static_cast<std::size_t>(
      std::max({10.0 * static_cast<double>(out.units.size()), std::ceil(20.0 * R * L / eps), 2.0}));
  const double step = 2.0 * R / grid;
  for (std::size_t i = 0; i <= grid; ++i) {
    const double x = (i == grid) ? R : -R + i * step;
    out.grid_error = std::max(out.grid_error, std::fabs(out.evaluate(x) - f(x)));
  }
  if (out.grid_error > eps || static_cast<double>(out.units.size()) > std::max(budget, 0.0)) {
    throw NumericFailure("approx_1d internal invariant violated: error " + std::to_string(out.grid_error) +
                         ", units " + std::to_string(out.units.size()));
  }
  return out;
}

Ridge1D build_square_net(int d_scale, double L, double eps) {
  if (d_scale < 1) throw DomainError("build_square_net needs d >= 1");
  if (!(L > 0.0) || !(eps > 0.0)) throw DomainError("build_square_net needs L, eps > 0");
  return approx_1d([](double t) { return 0.5 * t * t; }, 2.0, 2.0, eps / (2.0 * d_scale * L));
}

namespace {

constexpr double kHiddenBound = 2.0;
constexpr double kOutputBound = 4.0;

// Hidden layer 1 of the inner-product network: unit (i, u) computes
// relu(gamma_u (x_i + x'_i) - beta_u).
AffineLayer squaring_layer(int d, const Ridge1D& square, double bound) {
  const std::size_t m = square.unit_count();
  auto layer = AffineLayer::zeros(d * m, 2 * d, bound);
  for (int i = 0; i < d; ++i) {
    for (std::size_t u = 0; u < m; ++u) {
      const std::size_t row = i * m + u;
      layer.set_weight(row, i, square.units[u].gamma);
      layer.set_weight(row, d + i, square.units[u].gamma);
      layer.set_bias(row, -square.units[u].beta);
    }
  }
  return layer;
}

}  // namespace

ReluNetwork build_inner_product_net(int d, double L, double eps) {
  if (d < 1) throw DomainError("build_inner_product_net needs d >= 1");
  const Ridge1D square = build_square_net(d, L, eps);
  const std::size_t m = square.unit_count();
  auto hidden = squaring_layer(d, square, kHiddenBound);
  auto output = AffineLayer::zeros(1, d * m, kOutputBound);
  for (int i = 0; i < d; ++i) {
    for (std::size_t u = 0; u < m; ++u) output.set_weight(0, i * m + u, square.units[u].alpha);
  }
  output.set_bias(0, d * square.constant - 1.0);
  std::vector<AffineLayer> layers;
  layers.push_back(std::move(hidden));
  layers.push_back(std::move(output));
  return {d, std::move(layers), kOutputBound};
}

Depth3Construction build_depth3(const std::function<double(double)>& f, double L, int d, double eps) {
  if (d < 1) throw DomainError("build_depth3 needs d >= 1");
  if (!(L > 0.0) || !(eps > 0.0)) throw DomainError("build_depth3 needs L, eps > 0");
  for (int i = 0; i <= 2000; ++i) {
    const double t = -1.0 + i / 1000.0;
    if (!(std::fabs(f(t)) <= 1.0 + 1e-12)) {
      throw DomainError("build_depth3 needs f to map [-1, 1] into [-1, 1]; f(" + std::to_string(t) +
                        ") = " + std::to_string(f(t)));
    }
  }
  const double bound = std::max(4.0, 2.0 * L);
  const Ridge1D square = build_square_net(d, L, eps);
  const double radius = 1.0 + eps / (2.0 * L);
  auto extended = [&f](double t) { return f(std::clamp(t, -1.0, 1.0)); };
  const Ridge1D outer = approx_1d(extended, radius, L, eps / 2.0);

  const std::size_t m = square.unit_count();
  const std::size_t k = outer.unit_count();
  const double inner_bias = d * square.constant - 1.0;

  auto first = squaring_layer(d, square, bound);
  auto second = AffineLayer::zeros(k, d * m, bound);
  for (std::size_t j = 0; j < k; ++j) {
    const auto& unit = outer.units[j];
    for (int i = 0; i < d; ++i) {
      for (std::size_t u = 0; u < m; ++u) second.set_weight(j, i * m + u, unit.gamma * square.units[u].alpha);
    }
    second.set_bias(j, unit.gamma * inner_bias - unit.beta);
  }
  auto third = AffineLayer::zeros(1, k, bound);
  for (std::size_t j = 0; j < k; ++j) third.set_weight(0, j, outer.units[j].alpha);
  third.set_bias(0, outer.constant);

  std::vector<AffineLayer> layers;
  layers.push_back(std::move(first));
  layers.push_back(std::move(second));
  layers.push_back(std::move(third));

  Depth3Construction out{ReluNetwork(d, std::move(layers), bound), square, outer};
  out.width_budget = 16.0 * d * d * L / eps;
  out.weight_budget = bound;
  out.outer_width_budget = 2.0 * radius * L / (eps / 2.0);
  out.outer_width_stated = 2.0 * L / eps;
  return out;
}

SupError sup_error_on_sphere(const ReluNetwork& net, const std::function<double(double)>& f, std::size_t samples,
                             std::uint64_t seed) {
  const int d = net.dimension();
  SphereSampler sampler(d, seed);
  std::vector<double> x(d);
  std::vector<double> xp(d);
  SupError out;
  out.samples = samples;
  double sum_sq = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    sampler.sample(x);
    sampler.sample(xp);
    const double t = std::clamp(dot(x, xp), -1.0, 1.0);
    const double err = net.evaluate(x, xp) - f(t);
    out.sup = std::max(out.sup, std::fabs(err));
    sum_sq += err * err;
  }
  out.mean_sq = samples > 0 ? sum_sq / samples : 0.0;
  return out;
}

}  // namespace depthsep
