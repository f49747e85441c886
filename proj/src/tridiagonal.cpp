// SPDX-License-Identifier: Apache-2.0
#include "depthsep/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "depthsep/errors.hpp"

namespace depthsep {

TridiagonalEigen symmetric_tridiagonal_eigen(std::span<const double> diag, std::span<const double> sub,
                                             int max_iterations) {
  const int n = static_cast<int>(diag.size());
  if (n == 0) return {};
  if (sub.size() + 1 != diag.size()) throw DomainError("tridiagonal eigen: off-diagonal must have n-1 entries");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(sub.begin(), sub.end(), e.begin());
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) + dd == dd) break;
      }
      if (m == l) break;
      if (iter++ == max_iterations) {
        throw NumericFailure("implicit QL did not converge for eigenvalue " + std::to_string(l) + " within " +
                             std::to_string(max_iterations) + " iterations");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          // Underflow: the matrix has split.
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&d](int a, int b) { return d[a] < d[b]; });
  TridiagonalEigen out;
  out.eigenvalues.reserve(n);
  out.first_components.reserve(n);
  for (int k : order) {
    out.eigenvalues.push_back(d[k]);
    out.first_components.push_back(z[k]);
  }
  return out;
}

}  // namespace depthsep
