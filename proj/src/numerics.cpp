// SPDX-License-Identifier: Apache-2.0
#include "depthsep/numerics.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <string>
#include <vector>

#include "depthsep/errors.hpp"

namespace depthsep {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

}  // namespace

AdaptiveResult integrate_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                                       double abs_tol, std::size_t max_evaluations) {
  if (!(abs_tol > 0.0)) throw DomainError("adaptive integration needs abs_tol > 0");
  std::priority_queue<Segment> work;
  work.push(gauss_kronrod_15(f, a, b));
  std::size_t evaluations = 15;
  double total_error = work.top().error;

  auto exact_total = [&work] {
    double sum = 0.0;
    for (auto copy = work; !copy.empty(); copy.pop()) sum += copy.top().error;
    return sum;
  };

  while (total_error > abs_tol || (total_error = exact_total()) > abs_tol) {
    if (evaluations + 30 > max_evaluations) {
      throw NumericFailure("adaptive integration exhausted its budget of " + std::to_string(max_evaluations) +
                           " evaluations (error estimate " + std::to_string(total_error) + ")");
    }
    const Segment worst = work.top();
    work.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod_15(f, worst.a, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.b);
    evaluations += 30;
    work.push(left);
    work.push(right);
    total_error += left.error + right.error - worst.error;
    // Periodic exact recompute keeps the running total from drifting.
    if (evaluations % 1920 == 15) total_error = exact_total();
  }

  std::vector<Segment> segments;
  segments.reserve(work.size());
  while (!work.empty()) {
    segments.push_back(work.top());
    work.pop();
  }
  std::sort(segments.begin(), segments.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  CompensatedSum value;
  CompensatedSum error;
  for (const auto& s : segments) {
    value.add(s.value);
    error.add(s.error);
  }
  return {value.value(), error.value(), evaluations};
}

}  // namespace depthsep
