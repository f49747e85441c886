// SPDX-License-Identifier: Apache-2.0
#include "depthsep/special_fn.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "depthsep/errors.hpp"

namespace depthsep {

LogNumber LogNumber::from_double(double v) {
  if (v == 0.0) return zero();
  return {std::log(std::fabs(v)), v > 0 ? 1 : -1};
}

double LogNumber::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

LogNumber LogNumber::sqrt() const {
  if (sign < 0) throw DomainError("LogNumber::sqrt of a negative value");
  if (sign == 0) return zero();
  return {0.5 * log_abs, 1};
}

LogNumber operator*(LogNumber a, LogNumber b) {
  if (a.sign == 0 || b.sign == 0) return LogNumber::zero();
  return {a.log_abs + b.log_abs, a.sign * b.sign};
}

LogNumber operator/(LogNumber a, LogNumber b) {
  if (b.sign == 0) throw DomainError("LogNumber division by zero");
  if (a.sign == 0) return LogNumber::zero();
  return {a.log_abs - b.log_abs, a.sign * b.sign};
}

LogNumber operator+(LogNumber a, LogNumber b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.log_abs < b.log_abs) std::swap(a, b);
  const double delta = b.log_abs - a.log_abs;  // <= 0
  if (a.sign == b.sign) return {a.log_abs + std::log1p(std::exp(delta)), a.sign};
  if (delta == 0.0) return LogNumber::zero();
  return {a.log_abs + std::log1p(-std::exp(delta)), a.sign};
}

LogNumber operator-(LogNumber a, LogNumber b) { return a + (-b); }

namespace {

// B_{2k} / (2k (2k-1)) for k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,      1.0 / 1260.0,   -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0,    -3617.0 / 122400.0,
};

double stirling_log_gamma(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return (x - 0.5) * std::log(x) - x + half_log_two_pi + series;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  if (x >= 10.0) return stirling_log_gamma(x);
  double shifted = x;
  double product = 1.0;
  while (shifted < 10.0) {
    product *= shifted;
    shifted += 1.0;
  }
  return stirling_log_gamma(shifted) - std::log(product);
}

LogNumber log_harmonic_dimension(int d, int n) {
  if (d < 2) throw DomainError("harmonic dimension needs d >= 2, got d=" + std::to_string(d));
  if (n < 0) throw DomainError("harmonic dimension needs n >= 0, got n=" + std::to_string(n));
  if (n == 0) return LogNumber::from_log(0.0);
  const double dd = d;
  const double nn = n;
  const double value = std::log(2.0 * nn + dd - 2.0) + log_gamma(nn + dd - 2.0) - log_gamma(nn + 1.0) -
                       log_gamma(dd - 1.0);
  return LogNumber::from_log(value);
}

std::optional<std::uint64_t> harmonic_dimension_exact(int d, int n) {
  if (d < 2) throw DomainError("harmonic dimension needs d >= 2, got d=" + std::to_string(d));
  if (n < 0) throw DomainError("harmonic dimension needs n >= 0, got n=" + std::to_string(n));
  if (n == 0) return 1;
  if (d == 2) return 2;
  // C(n+d-3, n) built up one factor at a time; each partial product is a
  // binomial coefficient, so every division is exact.
  using u128 = unsigned __int128;
  constexpr u128 kLimit = static_cast<u128>(1) << 62;
  const int k = std::min(n, d - 3);
  const int top = n + d - 3;
  u128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<u128>(top - k + i) / static_cast<u128>(i);
    if (c >= kLimit) return std::nullopt;
  }
  const u128 num = c * static_cast<u128>(2 * n + d - 2);
  const u128 value = num / static_cast<u128>(d - 2);
  if (value * static_cast<u128>(d - 2) != num) throw NumericFailure("harmonic dimension is not an integer");
  if (value >= kLimit) return std::nullopt;
  return static_cast<std::uint64_t>(value);
}

}  // namespace depthsep
