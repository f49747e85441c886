// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "depthsep/projection.hpp"

namespace depthsep {

/// A named profile g: [-1, 1] -> R with the metadata the commands need.
struct Profile {
  std::string selector;  // the string it was parsed from
  Profile1D g;
  double lipschitz = 0.0;   // on [-1, 1]; an upper bound, not necessarily tight
  double range_min = 0.0;   // bounds on g over [-1, 1]
  double range_max = 0.0;
  double frequency = 0.0;   // angular frequency for the node-count policy, 0 if smooth
  int degree = -1;          // polynomial degree, -1 if not a polynomial
};

/// Parses a profile selector. Built-ins:
///   identity, abs, exp, const(c), poly(c0,c1,...), sine(w), sine(<w>pi),
///   q(j)        sqrt(N_{d,j}) P_j, the j-th orthonormal basis function
///   example1    sin(pi d^3 x)
///   lemma(m)    sin(pi sqrt(d) m x)
///   @path       two-column table of (x, g(x)) covering [-1, 1], linearly
///               interpolated; `declared_lipschitz` must be given
/// `d` is used by the dimension-dependent profiles. Throws DomainError with
/// the accepted forms on a bad selector.
Profile make_profile(const std::string& selector, int d, double declared_lipschitz = 0.0);

}  // namespace depthsep
