// SPDX-License-Identifier: Apache-2.0
#include "depthsep/gap_demo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "depthsep/bounds.hpp"
#include "depthsep/errors.hpp"
#include "depthsep/io.hpp"
#include "depthsep/numerics.hpp"
#include "depthsep/quadrature.hpp"
#include "depthsep/sphere_mc.hpp"

namespace depthsep {

std::vector<double> Depth2Params::flatten() const {
  std::vector<double> out;
  out.reserve(size());
  out.insert(out.end(), W.begin(), W.end());
  out.insert(out.end(), b1.begin(), b1.end());
  out.insert(out.end(), w2.begin(), w2.end());
  out.push_back(b2);
  return out;
}

void Depth2Params::assign(const std::vector<double>& flat) {
  if (flat.size() != size()) throw DomainError("parameter vector has the wrong length");
  auto it = flat.begin();
  std::copy_n(it, W.size(), W.begin());
  it += static_cast<std::ptrdiff_t>(W.size());
  std::copy_n(it, b1.size(), b1.begin());
  it += static_cast<std::ptrdiff_t>(b1.size());
  std::copy_n(it, w2.size(), w2.begin());
  b2 = flat.back();
}

void Depth2Params::clamp(double B) {
  for (auto* v : {&W, &b1, &w2}) {
    for (double& x : *v) x = std::clamp(x, -B, B);
  }
  b2 = std::clamp(b2, -B, B);
}

ReluNetwork Depth2Params::to_network(double B) const {
  std::vector<AffineLayer> layers;
  layers.emplace_back(r, 2 * d, W, b1, B);
  layers.emplace_back(1, r, w2, std::vector<double>{b2}, B);
  return {d, std::move(layers), B};
}

Depth2Params init_params(const FitConfig& cfg) {
  if (cfg.d < 1 || cfg.d > 8) throw DomainError("gap demo is limited to 1 <= d <= 8");
  if (cfg.r < 1 || cfg.r > 4096) throw DomainError("gap demo is limited to 1 <= r <= 4096");
  if (!(cfg.B > 0.0)) throw DomainError("gap demo needs B > 0");
  Depth2Params p;
  p.d = cfg.d;
  p.r = cfg.r;
  p.W.resize(static_cast<std::size_t>(cfg.r) * 2 * cfg.d);
  p.b1.resize(cfg.r);
  p.w2.resize(cfg.r);
  std::mt19937_64 rng(cfg.seed);
  const double a = std::clamp(cfg.init_scale, 0.0, 1.0) * cfg.B;
  std::uniform_real_distribution<double> u(-a, a);
  for (auto* v : {&p.W, &p.b1, &p.w2}) {
    for (double& x : *v) x = u(rng);
  }
  p.b2 = 0.0;
  return p;
}

Batch draw_batch(int d, std::size_t size, const Profile1D& g, std::uint64_t seed, std::uint64_t stream) {
  SphereSampler sampler(d, seed, stream);
  Batch b;
  b.z.resize(size * 2 * d);
  b.target.resize(size);
  for (std::size_t s = 0; s < size; ++s) {
    std::span<double> row(b.z.data() + s * 2 * d, 2 * d);
    sampler.sample(row.first(d));
    sampler.sample(row.last(d));
    b.target[s] = g(std::clamp(dot(row.first(d), row.last(d)), -1.0, 1.0));
  }
  return b;
}

namespace {

// Forward pass for one row; fills the pre-activations and returns the output.
double forward(const Depth2Params& p, const double* z, std::vector<double>& pre) {
  const int in = 2 * p.d;
  double out = p.b2;
  for (int u = 0; u < p.r; ++u) {
    const double* w = p.W.data() + static_cast<std::size_t>(u) * in;
    double s = p.b1[u];
    for (int c = 0; c < in; ++c) s += w[c] * z[c];
    pre[u] = s;
    if (s > 0.0) out += p.w2[u] * s;
  }
  return out;
}

}  // namespace

double batch_loss(const Depth2Params& p, const Batch& batch) {
  const std::size_t n = batch.target.size();
  std::vector<double> pre(p.r);
  CompensatedSum sum;
  for (std::size_t s = 0; s < n; ++s) {
    const double e = forward(p, batch.z.data() + s * 2 * p.d, pre) - batch.target[s];
    sum.add(e * e);
  }
  return sum.value() / static_cast<double>(n);
}

std::vector<double> batch_gradient(const Depth2Params& p, const Batch& batch, double* loss) {
  const std::size_t n = batch.target.size();
  const int in = 2 * p.d;
  const std::size_t w_size = p.W.size();
  std::vector<double> grad(p.size(), 0.0);
  double* gW = grad.data();
  double* gb1 = gW + w_size;
  double* gw2 = gb1 + p.r;
  double& gb2 = grad.back();
  std::vector<double> pre(p.r);
  CompensatedSum sum;
  for (std::size_t s = 0; s < n; ++s) {
    const double* z = batch.z.data() + s * in;
    const double e = forward(p, z, pre) - batch.target[s];
    sum.add(e * e);
    const double delta = 2.0 * e / static_cast<double>(n);
    gb2 += delta;
    for (int u = 0; u < p.r; ++u) {
      if (pre[u] <= 0.0) continue;
      gw2[u] += delta * pre[u];
      const double back = delta * p.w2[u];
      gb1[u] += back;
      double* row = gW + static_cast<std::size_t>(u) * in;
      for (int c = 0; c < in; ++c) row[c] += back * z[c];
    }
  }
  if (loss != nullptr) *loss = sum.value() / static_cast<double>(n);
  return grad;
}

namespace {

Checkpoint measure(const Depth2Params& p, const FitConfig& cfg, const Profile1D& g, int step) {
  const ReluNetwork net = p.to_network(cfg.B);
  const PairFunction model = [&net](std::span<const double> x, std::span<const double> y) {
    return net.evaluate(x, y);
  };
  const PairFunction target = [&g](std::span<const double> x, std::span<const double> y) {
    return g(std::clamp(dot(x, y), -1.0, 1.0));
  };
  // A seed distinct from the training batches.
  const auto est = l2_error(model, target, cfg.d, cfg.eval_samples, cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  return {step, est.norm, est.norm_std_error};
}

}  // namespace

FitResult fit_depth2(const FitConfig& cfg, const Profile1D& g) {
  if (cfg.steps < 0 || cfg.batch_size < 1 || !(cfg.learning_rate > 0.0) || cfg.checkpoint_every < 1) {
    throw DomainError("gap demo needs steps >= 0, batch_size >= 1, learning_rate > 0, checkpoint_every >= 1");
  }
  FitResult out;
  out.params = init_params(cfg);
  Depth2Params& p = out.params;
  double initial = 0.0;
  int above = 0;
  for (int step = 0; step < cfg.steps; ++step) {
    if (step % cfg.checkpoint_every == 0) out.checkpoints.push_back(measure(p, cfg, g, step));
    const Batch batch = draw_batch(cfg.d, cfg.batch_size, g, cfg.seed, static_cast<std::uint64_t>(step) + 1);
    double loss = 0.0;
    const auto grad = batch_gradient(p, batch, &loss);
    out.losses.push_back(loss);
    if (step == 0) initial = loss;
    above = (loss > 10.0 * initial && initial > 0.0) ? above + 1 : 0;
    if (above >= 100 || !std::isfinite(loss)) {
      throw NumericFailure("gap demo diverged at step " + std::to_string(step) + ": loss " + format_double(loss) +
                           " vs initial " + format_double(initial) + "; lower the learning rate (now " +
                           format_double(cfg.learning_rate) + ")");
    }
    auto flat = p.flatten();
    for (std::size_t i = 0; i < flat.size(); ++i) flat[i] -= cfg.learning_rate * grad[i];
    p.assign(flat);
    p.clamp(cfg.B);
  }
  out.checkpoints.push_back(measure(p, cfg, g, cfg.steps));
  return out;
}

GapReport gap_report(const FitConfig& cfg, const Profile& profile, int n_max) {
  if (cfg.d < 3) throw DomainError("gap report needs d >= 3 for the depth-2 floor");
  if (n_max < 0) throw DomainError("gap report needs n >= 0");
  GapReport rep;
  rep.cfg = cfg;
  const int nodes = std::max(recommended_node_count(n_max, profile.frequency), n_max + 1) + 16;
  const Expansion e = expand(profile.g, cfg.d, n_max, gauss_rule(cfg.d, nodes));
  const double sigma = relu_sigma_max(cfg.d, cfg.B);
  for (int n = 0; n <= n_max; ++n) {
    const double A = residual(e, n);
    const BoundReport b = theorem1_bound(cfg.d, n, cfg.r, cfg.B, sigma, A);
    rep.floors.push_back({n, A, b.lower_bound, b.vacuous});
    if (!b.vacuous) {
      rep.asserted = true;
      rep.best_floor = std::max(rep.best_floor, b.lower_bound);
    }
  }
  rep.fit = fit_depth2(cfg, profile.g);
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& c : rep.fit.checkpoints) {
    rep.worst_margin = std::min(rep.worst_margin, c.l2_error + 4.0 * c.l2_std_error - rep.best_floor);
  }
  if (rep.asserted && rep.worst_margin < 0.0) {
    throw VerificationFailure("fitted depth-2 network beat the floor " + format_double(rep.best_floor) +
                              " by more than 4 standard errors (margin " + format_double(rep.worst_margin) + ")");
  }
  return rep;
}

}  // namespace depthsep
