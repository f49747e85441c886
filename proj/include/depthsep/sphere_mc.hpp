// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace depthsep {

/// Uniform points on S^{d-1} by normalizing d standard normals.
///
/// Generator: std::mt19937_64 seeded with splitmix64(seed) ^ splitmix64(~stream),
/// so each (seed, stream) pair is an independent reproducible stream.
class SphereSampler {
 public:
  SphereSampler(int d, std::uint64_t seed, std::uint64_t stream = 0);

  int dimension() const { return d_; }
  void sample(std::span<double> out);
  std::vector<double> sample();

 private:
  int d_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n_samples)
  std::size_t n_samples = 0;
};

using PairFunction = std::function<double(std::span<const double>, std::span<const double>)>;

/// Samples per shard. Shard c draws x and x' from stream c of the seed, so
/// results do not depend on how shards are spread over threads.
inline constexpr std::size_t kShardSize = 8192;

/// Monte Carlo mean of h(x, x') over independent uniform x, x' in S^{d-1}.
MCEstimate mc_mean(int d, std::size_t n_samples, std::uint64_t seed, const PairFunction& h);

struct L2Estimate {
  MCEstimate squared;       // ||A - B||^2
  double norm = 0.0;        // sqrt of squared.mean
  double norm_std_error = 0.0;  // delta method
};

L2Estimate l2_error(const PairFunction& a, const PairFunction& b, int d, std::size_t n_samples,
                    std::uint64_t seed);

/// Kolmogorov-Smirnov statistic of sampled <x, x'> (x, x' uniform on
/// S^{sample_d - 1}) against the mu_{reference_d} cdf.
double pushforward_ks(int sample_d, int reference_d, std::size_t n_samples, std::uint64_t seed);
inline double pushforward_ks(int d, std::size_t n_samples, std::uint64_t seed) {
  return pushforward_ks(d, d, n_samples, seed);
}
inline double ks_critical_value(std::size_t n_samples) { return 1.63 / std::sqrt(static_cast<double>(n_samples)); }

struct KernelCheck {
  MCEstimate estimate;
  double predicted = 0.0;
  /// |estimate - predicted| in units of the standard error.
  double z_score() const;
  bool within(double sigmas) const;
};

/// E_{x,x'}[h_n(x,x') L_i^v(x) L_j^{v'}(x')] with h_n = sqrt(N_{d,n}) P_n(<x,x'>)
/// and L_k^u(x) = sqrt(N_{d,k}) P_k(<u,x>); predicted value
/// delta_{ni} delta_{nj} P_n(<v,v'>) / sqrt(N_{d,n}).
/// Supported for 3 <= d <= 25 and n, i, j <= 20.
KernelCheck verify_eq3(int d, int n, int i, int j, std::span<const double> v, std::span<const double> v_prime,
                       std::size_t n_samples, std::uint64_t seed);

/// E_x[L_i^v(x) L_j^{v'}(x)] against delta_{ij} P_i(<v,v'>).
KernelCheck verify_reproducing(int d, int i, int j, std::span<const double> v, std::span<const double> v_prime,
                               std::size_t n_samples, std::uint64_t seed);

/// Monte Carlo estimate of ||F||^2 on the product sphere for F(x,x') = g(<x,x'>).
MCEstimate inner_product_norm_sq(const std::function<double(double)>& g, int d, std::size_t n_samples,
                                 std::uint64_t seed);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace depthsep
