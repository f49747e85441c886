// SPDX-License-Identifier: Apache-2.0
// depthsep: command-line front end for the depth-separation toolkit.
#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <string>

#include "depthsep/commands.hpp"
#include "depthsep/errors.hpp"
#include "depthsep/io.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kVerification = 2, kNumeric = 3 };

struct Cli {
  depthsep::RunConfig cfg;
  double eps = 0.0;
  double L = 0.0;
  std::string out_path;
  std::string format = "json";
};

void add_common(CLI::App* sub, Cli& cli) {
  auto& c = cli.cfg;
  sub->add_option("--d", c.d, "sphere dimension (S^{d-1})");
  sub->add_option("--n", c.n, "degree / cut index n");
  sub->add_option("--m", c.m, "sine frequency multiplier m");
  sub->add_option("--k", c.k, "polynomial degree k");
  sub->add_option("--r", c.r, "depth-2 width r");
  sub->add_option("--B", c.B, "weight bound B");
  sub->add_option("--eps", cli.eps, "target accuracy");
  sub->add_option("--L", cli.L, "Lipschitz constant of the profile");
  sub->add_option("--profile", c.profile, "profile: identity, abs, exp, const(c), poly(c...), sine(w), q(j), example1, lemma(m), @file");
  sub->add_option("--nodes", c.nodes, "quadrature nodes (0: node-count policy)");
  sub->add_option("--samples", c.samples, "Monte Carlo sample pairs (0: command default)");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--out", cli.out_path, "report path (default: stdout)");
  sub->add_option("--format", cli.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--net", c.net_path, "network file (written by build3, read by verify)");
  sub->add_option("--net-format", c.net_format, "network encoding for build3")->check(CLI::IsMember({"binary", "text"}));
  sub->add_option("--width-cap", c.width_cap, "largest depth-3 width to build");
  sub->add_option("--param-cap", c.param_cap, "largest depth-3 parameter count to build");
  sub->add_option("--max-nodes", c.max_nodes, "largest quadrature rule for measured A in separation-report");
  sub->add_flag("--sweep", c.sweep, "bound: evaluate every n' <= n and report the best");
  sub->add_option("--config", c.gap_config, "gap: JSON file with the fit settings");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Depth-2 lower bounds and depth-3 constructions for inner-product functions on the sphere"};
  app.set_version_flag("--version", depthsep::tool_version());
  app.require_subcommand(1);
  Cli cli;
  using Handler = depthsep::Json (*)(const depthsep::RunConfig&);
  struct Command {
    const char* name;
    const char* help;
    Handler handler;
  };
  const Command commands[] = {
      {"expand", "Legendre coefficients, norm and best-approximation errors of a profile", depthsep::cmd_expand},
      {"bound", "depth-2 lower bound for a profile (optionally swept over n)", depthsep::cmd_bound},
      {"build3", "build and check the depth-3 network for a profile", depthsep::cmd_build3},
      {"verify", "L2 and sup error of a saved network against a profile", depthsep::cmd_verify},
      {"separation-report", "both sides of the separation for sin(pi d^3 x)", depthsep::cmd_separation_report},
      {"sine", "degree-k error of sin(pi sqrt(d) m x) against its lower bound", depthsep::cmd_sine},
      {"gap", "fit a bounded depth-2 network and compare with the floor (--config)", depthsep::cmd_gap},
  };
  for (const auto& c : commands) add_common(app.add_subcommand(c.name, c.help), cli);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    Handler handler = nullptr;
    for (const auto& c : commands) {
      if (app.got_subcommand(c.name)) handler = c.handler;
    }
    auto* sub = app.get_subcommands().front();
    if (sub->count("--eps") > 0) cli.cfg.eps = cli.eps;
    if (sub->count("--L") > 0) cli.cfg.L = cli.L;
    const depthsep::Json report = handler(cli.cfg);
    const std::string text = depthsep::render(report, depthsep::parse_report_format(cli.format));
    if (cli.out_path.empty()) {
      std::cout << text;
    } else {
      depthsep::write_file_atomic(cli.out_path, text);
    }
    if (!depthsep::report_passed(report)) {
      std::cerr << "verification failed; see the report\n";
      return kVerification;
    }
    return kOk;
  } catch (const depthsep::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const depthsep::VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const depthsep::NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kNumeric;
  }
}
