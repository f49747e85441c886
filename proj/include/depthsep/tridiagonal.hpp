// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace depthsep {

struct TridiagonalEigen {
  std::vector<double> eigenvalues;      // ascending
  std::vector<double> first_components;  // first entry of each normalized eigenvector
};

/// Eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
/// method (EISPACK imtql2), tracking only the first row of the accumulated
/// rotations, which is all Golub-Welsch needs.
///
/// `sub` holds the n-1 off-diagonal entries. Throws NumericFailure when an
/// eigenvalue does not converge within `max_iterations` sweeps.
TridiagonalEigen symmetric_tridiagonal_eigen(std::span<const double> diag, std::span<const double> sub,
                                             int max_iterations = 60);

}  // namespace depthsep
