// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "depthsep/special_fn.hpp"

namespace depthsep {

/// Inputs and outputs of one evaluation of the depth-2 lower bound
///   ||N - F|| >= A (A - (2 r B sigma_max + 2 B) / sqrt(N_{d,n})).
struct BoundReport {
  int d = 0;
  int n = 0;
  int r = 0;
  double B = 0.0;
  double sigma_max = 0.0;
  double A = 0.0;
  /// (2 r B sigma_max + 2 B) / sqrt(N_{d,n}), underflows to 0 for huge N_{d,n}.
  double penalty = 0.0;
  double log_harmonic_dim = 0.0;
  double lower_bound = 0.0;  // negative values are returned as is
  bool vacuous = true;
};

/// Depth-2 lower bound for width r, weight bound B and activation magnitude
/// sigma_max on [-(sqrt(4d)B + B), sqrt(4d)B + B]. r = 0 means no hidden
/// units (bias only).
BoundReport theorem1_bound(int d, int n, int r, double B, double sigma_max, double A);

/// max |relu(x)| over |x| <= sqrt(4d) B + B, i.e. the right endpoint.
double relu_sigma_max(int d, double B);

/// Width below which no depth-2 network with weights in [-B, B] can reach
/// L^2 error `target` on a profile with A_{n,d} = A:
///   r* = (sqrt(N_{d,n}) (A - target / A) - 2B) / (2 B sigma_max).
/// Returned in log form; zero or negative means the bound gives nothing.
LogNumber theorem1_width_threshold(int d, int n, double B, double sigma_max, double A, double target);

/// sqrt(N_{d,d^2}) / (20 e pi 2^{2d} (1 + sqrt(4d)) + 2^{d+1}), in log form.
LogNumber example1_threshold(int d);

/// max(0, (m - k) / (4 e pi m)).
double sine_lemma_bound(double m, int k);

/// 1 / (5 e pi): the floor on A_{d^2,d} for sin(pi d^3 x).
double example1_A_floor();

/// 1 / (50 e^2 pi^2): the L^2 target error in the neuron-count example.
double example1_target_error();

}  // namespace depthsep
