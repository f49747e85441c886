// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "depthsep/relu_net.hpp"

namespace depthsep {

struct RidgeUnit {
  double alpha = 0.0;
  int gamma = 1;  // +1 or -1
  double beta = 0.0;
};

/// g(x) = constant + sum_i alpha_i relu(gamma_i x - beta_i), a one-hidden-layer
/// ReLU approximant of a Lipschitz f on [-R, R].
struct Ridge1D {
  double constant = 0.0;  // f(0)
  std::vector<RidgeUnit> units;
  double R = 0.0;
  double L = 0.0;
  double eps = 0.0;
  double spacing = 0.0;     // breakpoint spacing R / floor(RL/eps)
  double grid_error = 0.0;  // measured max |g - f| on the verification grid

  double evaluate(double x) const;
  std::size_t unit_count() const { return units.size(); }
};

/// Piecewise-linear interpolation of f at uniform breakpoints anchored at 0,
/// written as a ReLU sum whose weights are slope differences. Guarantees
/// unit_count() <= 2RL/eps, |beta| <= R, |alpha| <= 2L, and g is L-Lipschitz
/// on all of R when f is.
///
/// f is spot-checked for L-Lipschitz continuity on a grid; a violation by
/// more than 5% throws DomainError.
Ridge1D approx_1d(const std::function<double(double)>& f, double R, double L, double eps);

/// t -> t^2/2 on [-2, 2] with error eps / (2 d_scale L).
Ridge1D build_square_net(int d_scale, double L, double eps);

/// Depth-2 network computing <x, x'> = sum_i (x_i + x'_i)^2 / 2 - 1 on unit
/// vectors with error <= eps / (2L).
ReluNetwork build_inner_product_net(int d, double L, double eps);

struct Depth3Construction {
  ReluNetwork net;
  Ridge1D square;  // per-coordinate squaring stage
  Ridge1D outer;   // 1-D approximant of f on [-(1 + eps/2L), 1 + eps/2L]
  double width_budget = 0.0;         // 16 d^2 L / eps
  double weight_budget = 0.0;        // max(4, 2L)
  double outer_width_budget = 0.0;   // 2 R L / (eps/2), the 1-D construction's own count
  double outer_width_stated = 0.0;   // 2 L / eps, the looser figure quoted for the outer stage
};

/// Depth-3 ReLU network approximating F(x, x') = f(<x, x'>) to sup error eps
/// for an L-Lipschitz f: [-1, 1] -> [-1, 1]. Hidden layer 1 holds the squaring
/// units, the linear map summing them (and the -1) lives in W_2, hidden
/// layer 2 holds the outer 1-D approximant of f, extended constantly past +-1.
Depth3Construction build_depth3(const std::function<double(double)>& f, double L, int d, double eps);

struct SupError {
  double sup = 0.0;
  double mean_sq = 0.0;
  std::size_t samples = 0;
};

/// max |net(x, x') - f(<x, x'>)| over `samples` seeded uniform sphere pairs.
SupError sup_error_on_sphere(const ReluNetwork& net, const std::function<double(double)>& f, std::size_t samples,
                             std::uint64_t seed);

}  // namespace depthsep
