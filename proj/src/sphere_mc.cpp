// SPDX-License-Identifier: Apache-2.0
#include "depthsep/sphere_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "depthsep/errors.hpp"
#include "depthsep/legendre.hpp"
#include "depthsep/measure.hpp"
#include "depthsep/numerics.hpp"

namespace depthsep {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct ShardSums {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  std::size_t count = 0;
};

// Runs `work(shard_index)` for every shard on a small thread pool. The first
// exception thrown by any shard is rethrown on the caller's thread.
template <typename Work>
void for_each_shard(std::size_t shards, Work&& work) {
  const std::size_t threads =
      std::max<std::size_t>(1, std::min<std::size_t>(shards, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t s = next++; s < shards; s = next++) {
      try {
        work(s);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);
}

MCEstimate finish(const std::vector<ShardSums>& shards) {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  std::size_t n = 0;
  for (const auto& s : shards) {
    sum.add(s.sum);
    sum_sq.add(s.sum_sq);
    n += s.count;
  }
  MCEstimate est;
  est.n_samples = n;
  if (n == 0) return est;
  est.mean = sum.value() / n;
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq.value() - n * est.mean * est.mean) / (n - 1));
    est.std_error = std::sqrt(var / n);
  }
  return est;
}

double clamp_unit(double t) { return std::clamp(t, -1.0, 1.0); }

void require_unit(std::span<const double> v, int d, const char* what) {
  if (static_cast<int>(v.size()) != d) throw DomainError(std::string(what) + " has the wrong dimension");
  if (std::fabs(std::sqrt(dot(v, v)) - 1.0) > 1e-9) throw DomainError(std::string(what) + " is not a unit vector");
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

SphereSampler::SphereSampler(int d, std::uint64_t seed, std::uint64_t stream)
    : d_(d), engine_(splitmix64(seed) ^ splitmix64(~stream)) {
  if (d < 2) throw DomainError("SphereSampler needs d >= 2, got d=" + std::to_string(d));
}

void SphereSampler::sample(std::span<double> out) {
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (int i = 0; i < d_; ++i) {
      out[i] = normal_(engine_);
      norm_sq += out[i] * out[i];
    }
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (int i = 0; i < d_; ++i) out[i] *= inv;
}

std::vector<double> SphereSampler::sample() {
  std::vector<double> out(d_);
  sample(out);
  return out;
}

MCEstimate mc_mean(int d, std::size_t n_samples, std::uint64_t seed, const PairFunction& h) {
  if (n_samples == 0) throw DomainError("mc_mean needs at least one sample");
  const std::size_t shards = (n_samples + kShardSize - 1) / kShardSize;
  std::vector<ShardSums> results(shards);
  for_each_shard(shards, [&](std::size_t s) {
    SphereSampler sampler(d, seed, s);
    std::vector<double> x(d);
    std::vector<double> xp(d);
    const std::size_t begin = s * kShardSize;
    const std::size_t end = std::min(n_samples, begin + kShardSize);
    ShardSums& out = results[s];
    for (std::size_t i = begin; i < end; ++i) {
      sampler.sample(x);
      sampler.sample(xp);
      const double v = h(x, xp);
      out.sum.add(v);
      out.sum_sq.add(v * v);
      ++out.count;
    }
  });
  return finish(results);
}

L2Estimate l2_error(const PairFunction& a, const PairFunction& b, int d, std::size_t n_samples, std::uint64_t seed) {
  L2Estimate out;
  out.squared = mc_mean(d, n_samples, seed, [&](std::span<const double> x, std::span<const double> xp) {
    const double diff = a(x, xp) - b(x, xp);
    return diff * diff;
  });
  out.norm = std::sqrt(out.squared.mean);
  out.norm_std_error = out.norm > 0.0 ? out.squared.std_error / (2.0 * out.norm) : 0.0;
  return out;
}

double pushforward_ks(int sample_d, int reference_d, std::size_t n_samples, std::uint64_t seed) {
  if (sample_d < 3 || reference_d < 3) throw DomainError("pushforward check needs d >= 3");
  if (n_samples == 0) throw DomainError("pushforward check needs samples");
  std::vector<double> t(n_samples);
  const std::size_t shards = (n_samples + kShardSize - 1) / kShardSize;
  for_each_shard(shards, [&](std::size_t s) {
    SphereSampler sampler(sample_d, seed, s);
    std::vector<double> x(sample_d);
    std::vector<double> xp(sample_d);
    const std::size_t end = std::min(n_samples, (s + 1) * kShardSize);
    for (std::size_t i = s * kShardSize; i < end; ++i) {
      sampler.sample(x);
      sampler.sample(xp);
      t[i] = clamp_unit(dot(x, xp));
    }
  });
  std::sort(t.begin(), t.end());
  const SphereMeasure mu(reference_d);
  const double n = static_cast<double>(n_samples);
  double stat = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double f = mu.cdf(t[i]);
    stat = std::max({stat, (i + 1) / n - f, f - i / n});
  }
  return stat;
}

double KernelCheck::z_score() const {
  const double diff = std::fabs(estimate.mean - predicted);
  if (estimate.std_error == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / estimate.std_error;
}

bool KernelCheck::within(double sigmas) const { return z_score() <= sigmas; }

KernelCheck verify_eq3(int d, int n, int i, int j, std::span<const double> v, std::span<const double> v_prime,
                       std::size_t n_samples, std::uint64_t seed) {
  if (d < 3 || d > 25) throw DomainError("verify_eq3 supports 3 <= d <= 25");
  if (n < 0 || i < 0 || j < 0 || n > 20 || i > 20 || j > 20) throw DomainError("verify_eq3 supports degrees 0..20");
  require_unit(v, d, "v");
  require_unit(v_prime, d, "v'");
  const int top = std::max({n, i, j});
  const LegendreFamily family(d, top);

  KernelCheck out;
  out.estimate = mc_mean(d, n_samples, seed, [&](std::span<const double> x, std::span<const double> xp) {
    thread_local std::vector<double> buf;
    buf.resize(top + 1);
    family.eval_orthonormal(clamp_unit(dot(x, xp)), buf);
    const double h = buf[n];
    family.eval_orthonormal(clamp_unit(dot(v, x)), buf);
    const double li = buf[i];
    family.eval_orthonormal(clamp_unit(dot(v_prime, xp)), buf);
    return h * li * buf[j];
  });
  if (n == i && n == j) {
    const double p = family.eval_all(clamp_unit(dot(v, v_prime)))[n];
    out.predicted = p * std::exp(-0.5 * family.log_dimension(n));
  }
  return out;
}

KernelCheck verify_reproducing(int d, int i, int j, std::span<const double> v, std::span<const double> v_prime,
                               std::size_t n_samples, std::uint64_t seed) {
  if (d < 3) throw DomainError("verify_reproducing needs d >= 3");
  require_unit(v, d, "v");
  require_unit(v_prime, d, "v'");
  const int top = std::max(i, j);
  const LegendreFamily family(d, top);
  KernelCheck out;
  out.estimate = mc_mean(d, n_samples, seed, [&](std::span<const double> x, std::span<const double>) {
    thread_local std::vector<double> buf;
    buf.resize(top + 1);
    family.eval_orthonormal(clamp_unit(dot(v, x)), buf);
    const double li = buf[i];
    family.eval_orthonormal(clamp_unit(dot(v_prime, x)), buf);
    return li * buf[j];
  });
  if (i == j) out.predicted = family.eval_all(clamp_unit(dot(v, v_prime)))[i];
  return out;
}

MCEstimate inner_product_norm_sq(const std::function<double(double)>& g, int d, std::size_t n_samples,
                                 std::uint64_t seed) {
  return mc_mean(d, n_samples, seed, [&](std::span<const double> x, std::span<const double> xp) {
    const double value = g(clamp_unit(dot(x, xp)));
    return value * value;
  });
}

}  // namespace depthsep
