// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "depthsep/report.hpp"

namespace depthsep {

/// Parameters shared by all commands. Zero-valued d, nodes and samples mean
/// "use the command's default"; the resolved values are echoed in the report.
struct RunConfig {
  int d = 0;
  int n = 5;
  int m = 10;
  int k = 5;
  int r = 1;
  double B = 1.0;
  std::optional<double> eps;
  std::optional<double> L;
  std::string profile = "identity";
  int nodes = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::string net_path;
  std::string net_format = "binary";
  bool sweep = false;
  double width_cap = 1e6;
  double param_cap = 5e7;   // dense weight entries allowed in a built network
  int max_nodes = 20'000;   // quadrature size cap for measured A in separation-report
  std::string gap_config;   // JSON file for the gap command
};

/// Reports carry "status": "ok" or "verification_failed"; the CLI maps the
/// latter to exit code 2 after writing the report.
bool report_passed(const Json& report);

/// Expansion coefficients, ||g||^2 and A_{n,d} for n = 0..N+1 (N = cfg.n).
Json cmd_expand(const RunConfig& cfg);

/// Depth-2 lower bound for the profile with A_{n,d} from its expansion; with
/// cfg.sweep, every n' in 0..n plus the maximizing one.
Json cmd_bound(const RunConfig& cfg);

/// Builds the depth-3 network, checks width, weights and sup error over
/// cfg.samples sphere pairs, and writes it to cfg.net_path when set. Throws
/// VerificationFailure if a check fails, before anything is written.
Json cmd_build3(const RunConfig& cfg);

/// L^2 and sup error of the network at cfg.net_path against the profile.
Json cmd_verify(const RunConfig& cfg);

/// Both sides of the separation for sin(pi d^3 x): the depth-2 neuron
/// threshold and the depth-3 construction, built and measured when under
/// the width and parameter caps.
Json cmd_separation_report(const RunConfig& cfg);

/// Best degree-k approximation error of sin(pi sqrt(d) m x) on two
/// independent paths against (m - k) / (4 e pi m). Asserted for d >= 100.
Json cmd_sine(const RunConfig& cfg);

/// Fits a bounded depth-2 network (settings from cfg.gap_config) and sets the
/// measured error against the depth-2 floor.
Json cmd_gap(const RunConfig& cfg);

}  // namespace depthsep
