// SPDX-License-Identifier: Apache-2.0
#include "depthsep/relu_net.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "depthsep/errors.hpp"
#include "depthsep/io.hpp"
#include "depthsep/sphere_mc.hpp"

namespace depthsep {

AffineLayer::AffineLayer(std::size_t out_dim, std::size_t in_dim, std::vector<double> weights,
                         std::vector<double> bias, double declared_bound)
    : out_dim_(out_dim),
      in_dim_(in_dim),
      weights_(std::move(weights)),
      bias_(std::move(bias)),
      declared_bound_(declared_bound) {
  if (!(declared_bound >= 0.0) || !std::isfinite(declared_bound)) throw DomainError("layer bound must be finite and >= 0");
  if (weights_.size() != out_dim * in_dim) throw DomainError("layer weight matrix has the wrong size");
  if (bias_.size() != out_dim) throw DomainError("layer bias has the wrong size");
  for (double w : weights_) check(w);
  for (double b : bias_) check(b);
}

AffineLayer AffineLayer::zeros(std::size_t out_dim, std::size_t in_dim, double declared_bound) {
  return {out_dim, in_dim, std::vector<double>(out_dim * in_dim, 0.0), std::vector<double>(out_dim, 0.0),
          declared_bound};
}

void AffineLayer::check(double value) const {
  if (!(std::fabs(value) <= declared_bound_)) {
    throw DomainError("layer entry " + std::to_string(value) + " exceeds the declared bound " +
                      std::to_string(declared_bound_));
  }
}

void AffineLayer::set_weight(std::size_t row, std::size_t col, double value) {
  check(value);
  weights_.at(row * in_dim_ + col) = value;
}

void AffineLayer::set_bias(std::size_t row, double value) {
  check(value);
  bias_.at(row) = value;
}

void AffineLayer::apply(std::span<const double> in, std::span<double> out) const {
  const double* w = weights_.data();
  // Four interleaved partial sums; a fixed order keeps results reproducible.
  const std::size_t blocked = in_dim_ - in_dim_ % 4;
  for (std::size_t r = 0; r < out_dim_; ++r, w += in_dim_) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (std::size_t c = 0; c < blocked; c += 4) {
      s0 += w[c] * in[c];
      s1 += w[c + 1] * in[c + 1];
      s2 += w[c + 2] * in[c + 2];
      s3 += w[c + 3] * in[c + 3];
    }
    for (std::size_t c = blocked; c < in_dim_; ++c) s0 += w[c] * in[c];
    out[r] = bias_[r] + ((s0 + s1) + (s2 + s3));
  }
}

double AffineLayer::max_abs_entry() const {
  double m = 0.0;
  for (double w : weights_) m = std::max(m, std::fabs(w));
  for (double b : bias_) m = std::max(m, std::fabs(b));
  return m;
}

ReluNetwork::ReluNetwork(int d, std::vector<AffineLayer> layers, double declared_bound)
    : d_(d), layers_(std::move(layers)), declared_bound_(declared_bound) {
  if (d < 1) throw DomainError("network dimension must be >= 1");
  if (layers_.size() != 2 && layers_.size() != 3) throw DomainError("only depth-2 and depth-3 networks are supported");
  if (layers_.front().in_dim() != static_cast<std::size_t>(2 * d)) throw DomainError("first layer must take 2d inputs");
  if (layers_.back().out_dim() != 1) throw DomainError("output layer must be scalar");
  for (std::size_t l = 1; l < layers_.size(); ++l) {
    if (layers_[l].in_dim() != layers_[l - 1].out_dim()) throw DomainError("layer shapes do not chain");
  }
  if (!(declared_bound > 0.0)) throw DomainError("network bound must be positive");
}

std::size_t ReluNetwork::width() const {
  std::size_t r = 0;
  for (std::size_t l = 0; l + 1 < layers_.size(); ++l) r = std::max(r, layers_[l].out_dim());
  return r;
}

double ReluNetwork::evaluate(std::span<const double> x, std::span<const double> x_prime) const {
  if (x.size() != static_cast<std::size_t>(d_) || x_prime.size() != static_cast<std::size_t>(d_)) {
    throw DomainError("network input has the wrong dimension");
  }
  if (std::fabs(std::sqrt(dot(x, x)) - 1.0) > unit_tolerance_ ||
      std::fabs(std::sqrt(dot(x_prime, x_prime)) - 1.0) > unit_tolerance_) {
    throw DomainError("network inputs must be unit vectors");
  }
  std::vector<double> z(2 * d_);
  std::copy(x.begin(), x.end(), z.begin());
  std::copy(x_prime.begin(), x_prime.end(), z.begin() + d_);
  return evaluate_concat(z);
}

double ReluNetwork::evaluate_concat(std::span<const double> z) const {
  std::vector<double> in(z.begin(), z.end());
  std::vector<double> out;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    out.resize(layers_[l].out_dim());
    layers_[l].apply(in, out);
    if (l + 1 < layers_.size()) {
      for (double& v : out) v = std::max(v, 0.0);
    }
    std::swap(in, out);
  }
  return in[0];
}

std::vector<double> ReluNetwork::input_gradient(std::span<const double> z) const {
  // Forward pass recording the activation pattern, then back-propagate.
  std::vector<std::vector<double>> pre(layers_.size());
  std::vector<double> in(z.begin(), z.end());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    pre[l].resize(layers_[l].out_dim());
    layers_[l].apply(in, pre[l]);
    in = pre[l];
    if (l + 1 < layers_.size()) {
      for (double& v : in) v = std::max(v, 0.0);
    }
  }
  std::vector<double> grad = {1.0};
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const auto& layer = layers_[l];
    if (l + 1 < layers_.size()) {
      for (std::size_t r = 0; r < grad.size(); ++r) {
        if (!(pre[l][r] > 0.0)) grad[r] = 0.0;
      }
    }
    std::vector<double> next(layer.in_dim(), 0.0);
    for (std::size_t r = 0; r < layer.out_dim(); ++r) {
      if (grad[r] == 0.0) continue;
      for (std::size_t c = 0; c < layer.in_dim(); ++c) next[c] += grad[r] * layer.weight(r, c);
    }
    grad = std::move(next);
  }
  return grad;
}

BoundCheck validate_bounds(const ReluNetwork& net) {
  BoundCheck out;
  out.r = net.width();
  for (const auto& layer : net.layers()) out.B_actual = std::max(out.B_actual, layer.max_abs_entry());
  out.ok = out.B_actual <= net.declared_bound();
  return out;
}

PreactivationBound max_preactivation_bound(const ReluNetwork& net, std::size_t samples, std::uint64_t seed) {
  if (net.depth() != 2) throw DomainError("max_preactivation_bound applies to depth-2 networks");
  const int d = net.dimension();
  const double B = net.declared_bound();
  PreactivationBound out;
  out.analytic = std::sqrt(4.0 * d) * B + B;
  if (d < 2) {
    // S^0 = {-1, 1}: enumerate the four input pairs.
    const auto& first = net.layers().front();
    std::vector<double> pre(first.out_dim());
    for (double a : {-1.0, 1.0}) {
      for (double b : {-1.0, 1.0}) {
        const double z[2] = {a, b};
        first.apply(z, pre);
        for (double p : pre) out.empirical = std::max(out.empirical, std::fabs(p));
      }
    }
    return out;
  }
  SphereSampler sampler(d, seed);
  const auto& first = net.layers().front();
  std::vector<double> z(2 * d);
  std::vector<double> pre(first.out_dim());
  for (std::size_t s = 0; s < samples; ++s) {
    sampler.sample(std::span<double>(z).first(d));
    sampler.sample(std::span<double>(z).subspan(d));
    first.apply(z, pre);
    for (double p : pre) out.empirical = std::max(out.empirical, std::fabs(p));
  }
  return out;
}

namespace {

constexpr char kMagic[8] = {'D', 'S', 'R', 'E', 'L', 'U', '0', '1'};
constexpr std::uint32_t kFormatVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_++])) << (8 * i);
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_++])) << (8 * i);
    return std::bit_cast<double>(v);
  }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > bytes_.size()) throw DomainError("network file is truncated");
  }
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

std::string to_binary(const ReluNetwork& net) {
  std::string out(kMagic, sizeof(kMagic));
  put_u32(out, kFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(net.dimension()));
  put_u32(out, static_cast<std::uint32_t>(net.depth()));
  put_f64(out, net.declared_bound());
  for (const auto& layer : net.layers()) {
    put_u32(out, static_cast<std::uint32_t>(layer.out_dim()));
    put_u32(out, static_cast<std::uint32_t>(layer.in_dim()));
    put_f64(out, layer.declared_bound());
    for (double w : layer.weights()) put_f64(out, w);
    for (double b : layer.bias()) put_f64(out, b);
  }
  return out;
}

ReluNetwork from_binary(const std::string& bytes) {
  Reader in(bytes);
  in.skip(sizeof(kMagic));
  const auto version = in.u32();
  if (version != kFormatVersion) throw DomainError("unsupported network format version " + std::to_string(version));
  const int d = static_cast<int>(in.u32());
  const auto depth = in.u32();
  const double bound = in.f64();
  if (depth != 2 && depth != 3) throw DomainError("network file declares unsupported depth");
  std::vector<AffineLayer> layers;
  for (std::uint32_t l = 0; l < depth; ++l) {
    const std::size_t out_dim = in.u32();
    const std::size_t in_dim = in.u32();
    const double layer_bound = in.f64();
    std::vector<double> w(out_dim * in_dim);
    for (double& v : w) v = in.f64();
    std::vector<double> b(out_dim);
    for (double& v : b) v = in.f64();
    layers.emplace_back(out_dim, in_dim, std::move(w), std::move(b), layer_bound);
  }
  if (!in.done()) throw DomainError("trailing bytes in network file");
  return {d, std::move(layers), bound};
}

std::string to_text(const ReluNetwork& net) {
  nlohmann::json j;
  j["format"] = "depthsep-relu-network";
  j["format_version"] = kFormatVersion;
  j["d"] = net.dimension();
  j["declared_bound"] = net.declared_bound();
  j["layers"] = nlohmann::json::array();
  for (const auto& layer : net.layers()) {
    nlohmann::json lj;
    lj["out_dim"] = layer.out_dim();
    lj["in_dim"] = layer.in_dim();
    lj["declared_bound"] = layer.declared_bound();
    lj["weights"] = std::vector<double>(layer.weights().begin(), layer.weights().end());
    lj["bias"] = std::vector<double>(layer.bias().begin(), layer.bias().end());
    j["layers"].push_back(std::move(lj));
  }
  return j.dump() + "\n";
}

ReluNetwork from_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("network file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format") != "depthsep-relu-network") throw DomainError("not a depthsep network file");
    if (j.at("format_version").get<std::uint32_t>() != kFormatVersion) throw DomainError("unsupported format_version");
    std::vector<AffineLayer> layers;
    for (const auto& lj : j.at("layers")) {
      layers.emplace_back(lj.at("out_dim").get<std::size_t>(), lj.at("in_dim").get<std::size_t>(),
                          lj.at("weights").get<std::vector<double>>(), lj.at("bias").get<std::vector<double>>(),
                          lj.at("declared_bound").get<double>());
    }
    return {j.at("d").get<int>(), std::move(layers), j.at("declared_bound").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed network file: ") + e.what());
  }
}

}  // namespace

std::string serialize_network(const ReluNetwork& net, NetworkFormat format) {
  return format == NetworkFormat::binary ? to_binary(net) : to_text(net);
}

ReluNetwork deserialize_network(const std::string& bytes) {
  if (bytes.size() >= sizeof(kMagic) && std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) == 0) {
    return from_binary(bytes);
  }
  return from_text(bytes);
}

void save_network(const ReluNetwork& net, const std::filesystem::path& path, NetworkFormat format) {
  write_file_atomic(path, serialize_network(net, format));
}

ReluNetwork load_network(const std::filesystem::path& path) { return deserialize_network(read_file(path)); }

}  // namespace depthsep
