// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace depthsep {

/// y = W x + b with every entry of W and b in [-declared_bound, declared_bound].
class AffineLayer {
 public:
  AffineLayer(std::size_t out_dim, std::size_t in_dim, std::vector<double> weights, std::vector<double> bias,
              double declared_bound);
  static AffineLayer zeros(std::size_t out_dim, std::size_t in_dim, double declared_bound);

  std::size_t out_dim() const { return out_dim_; }
  std::size_t in_dim() const { return in_dim_; }
  double declared_bound() const { return declared_bound_; }
  double weight(std::size_t row, std::size_t col) const { return weights_[row * in_dim_ + col]; }
  std::span<const double> weights() const { return weights_; }  // row-major
  std::span<const double> bias() const { return bias_; }

  /// Mutators re-check the bound and throw DomainError on violation.
  void set_weight(std::size_t row, std::size_t col, double value);
  void set_bias(std::size_t row, double value);

  void apply(std::span<const double> in, std::span<double> out) const;
  /// Largest |entry| of W and b.
  double max_abs_entry() const;

 private:
  void check(double value) const;

  std::size_t out_dim_;
  std::size_t in_dim_;
  std::vector<double> weights_;
  std::vector<double> bias_;
  double declared_bound_;
};

/// Depth-2 or depth-3 ReLU network on S^{d-1} x S^{d-1}. The input is the
/// concatenation (x, x') in R^{2d}; ReLU follows every layer but the last,
/// whose output is scalar.
class ReluNetwork {
 public:
  ReluNetwork(int d, std::vector<AffineLayer> layers, double declared_bound);

  int dimension() const { return d_; }
  int depth() const { return static_cast<int>(layers_.size()); }
  /// r: the largest hidden-layer width.
  std::size_t width() const;
  double declared_bound() const { return declared_bound_; }
  const std::vector<AffineLayer>& layers() const { return layers_; }

  double unit_tolerance() const { return unit_tolerance_; }
  void set_unit_tolerance(double tol) { unit_tolerance_ = tol; }

  /// Forward pass on unit vectors x, x'; throws DomainError if either norm is
  /// off by more than unit_tolerance().
  double evaluate(std::span<const double> x, std::span<const double> x_prime) const;
  /// Forward pass on an arbitrary z in R^{2d}, no validation.
  double evaluate_concat(std::span<const double> z) const;
  /// Gradient of the output with respect to z (ReLU derivative taken as 0 at 0).
  std::vector<double> input_gradient(std::span<const double> z) const;

 private:
  int d_;
  std::vector<AffineLayer> layers_;
  double declared_bound_;
  double unit_tolerance_ = 1e-9;
};

struct BoundCheck {
  std::size_t r = 0;
  double B_actual = 0.0;
  bool ok = false;
};

BoundCheck validate_bounds(const ReluNetwork& net);

struct PreactivationBound {
  double analytic = 0.0;   // sqrt(4d) B + B with B the declared bound
  double empirical = 0.0;  // max |first-layer pre-activation| over sampled sphere pairs
};

/// Depth-2 only; throws DomainError for other depths.
PreactivationBound max_preactivation_bound(const ReluNetwork& net, std::size_t samples = 10'000,
                                           std::uint64_t seed = 0x5eed);

enum class NetworkFormat { binary, text };

/// Binary: magic "DSRELU01", then little-endian u32/f64 fields, layer
/// matrices row-major. Text: JSON with the same fields and shortest
/// round-trip decimals. Both carry format_version = 1.
std::string serialize_network(const ReluNetwork& net, NetworkFormat format);
ReluNetwork deserialize_network(const std::string& bytes);

void save_network(const ReluNetwork& net, const std::filesystem::path& path, NetworkFormat format);
ReluNetwork load_network(const std::filesystem::path& path);

}  // namespace depthsep
