// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "depthsep/profiles.hpp"
#include "depthsep/relu_net.hpp"

namespace depthsep {

struct FitConfig {
  int d = 4;
  int r = 16;
  double B = 1.0;
  double learning_rate = 0.05;
  int steps = 1000;
  int batch_size = 256;
  std::uint64_t seed = 1;
  double init_scale = 0.5;            // initial weights uniform in [-init_scale B, init_scale B]
  std::size_t eval_samples = 20'000;  // Monte Carlo pairs per checkpoint
  int checkpoint_every = 250;
};

/// Parameters of w2^T relu(W z + b1) + b2 with z = (x, x') in R^{2d}.
struct Depth2Params {
  int d = 0;
  int r = 0;
  std::vector<double> W;   // r x 2d, row-major
  std::vector<double> b1;  // r
  std::vector<double> w2;  // r
  double b2 = 0.0;

  std::size_t size() const { return W.size() + b1.size() + w2.size() + 1; }
  /// Order: W, b1, w2, b2.
  std::vector<double> flatten() const;
  void assign(const std::vector<double>& flat);
  void clamp(double B);
  ReluNetwork to_network(double B) const;
};

Depth2Params init_params(const FitConfig& cfg);

struct Batch {
  std::vector<double> z;       // rows of length 2d
  std::vector<double> target;  // g(<x, x'>)
};

Batch draw_batch(int d, std::size_t size, const Profile1D& g, std::uint64_t seed, std::uint64_t stream);

/// Mean squared error over the batch.
double batch_loss(const Depth2Params& p, const Batch& batch);

/// Gradient of batch_loss in flatten() order (ReLU derivative 0 at 0).
std::vector<double> batch_gradient(const Depth2Params& p, const Batch& batch, double* loss = nullptr);

struct Checkpoint {
  int step = 0;
  double l2_error = 0.0;
  double l2_std_error = 0.0;
};

struct FitResult {
  Depth2Params params;
  std::vector<double> losses;  // batch loss before each step
  std::vector<Checkpoint> checkpoints;
};

/// Projected SGD: each step draws a fresh batch, takes a gradient step and
/// clamps every parameter to [-B, B]. `on_checkpoint` sees the network every
/// cfg.checkpoint_every steps and after the last one. Throws NumericFailure if
/// the loss stays above 10x its initial value for 100 consecutive steps.
FitResult fit_depth2(const FitConfig& cfg, const Profile1D& g);

struct FloorEntry {
  int n = 0;
  double A = 0.0;
  double lower_bound = 0.0;
  bool vacuous = true;
};

struct GapReport {
  FitConfig cfg;
  std::vector<FloorEntry> floors;  // n = 0..n_max
  double best_floor = 0.0;         // max non-vacuous floor, 0 if none
  bool asserted = false;           // a non-vacuous floor exists
  FitResult fit;
  double worst_margin = 0.0;       // min over checkpoints of (error + 4 SE - best_floor)
};

/// Fits, then compares every checkpoint's measured L^2 error with the largest
/// depth-2 floor over n = 0..n_max. Throws VerificationFailure if a non-vacuous
/// floor is beaten by more than 4 standard errors.
GapReport gap_report(const FitConfig& cfg, const Profile& profile, int n_max);

}  // namespace depthsep
