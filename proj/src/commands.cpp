// SPDX-License-Identifier: Apache-2.0
#include "depthsep/commands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "depthsep/bounds.hpp"
#include "depthsep/constructor.hpp"
#include "depthsep/errors.hpp"
#include "depthsep/io.hpp"
#include "depthsep/profiles.hpp"
#include "depthsep/projection.hpp"
#include "depthsep/quadrature.hpp"
#include "depthsep/relu_net.hpp"
#include "depthsep/sphere_mc.hpp"

#ifdef DEPTHSEP_WITH_GAP_DEMO
#include "depthsep/gap_demo.hpp"
#endif

namespace depthsep {

namespace {

int dim_or(const RunConfig& cfg, int fallback) { return cfg.d != 0 ? cfg.d : fallback; }
std::size_t samples_or(const RunConfig& cfg, std::size_t fallback) { return cfg.samples != 0 ? cfg.samples : fallback; }

int node_count_for(const RunConfig& cfg, const Profile& p, int degree) {
  // A polynomial profile needs g^2 integrated exactly for the norm as well.
  const int policy = std::max(recommended_node_count(std::max(degree, p.degree), p.frequency), degree + 1);
  if (cfg.nodes == 0) return policy;
  if (cfg.nodes < degree + 1) {
    throw DomainError("--nodes " + std::to_string(cfg.nodes) + " cannot integrate degree " + std::to_string(2 * degree) +
                      " exactly; use at least " + std::to_string(degree + 1) + " (policy suggests " +
                      std::to_string(policy) + ")");
  }
  return cfg.nodes;
}

Json bound_json(const BoundReport& b) {
  Json j;
  j["d"] = b.d;
  j["n"] = b.n;
  j["r"] = b.r;
  j["B"] = b.B;
  j["sigma_max"] = b.sigma_max;
  j["A"] = b.A;
  j["penalty"] = b.penalty;
  j["harmonic_dim_log_e"] = b.log_harmonic_dim;
  j["lower_bound"] = b.lower_bound;
  j["vacuous"] = b.vacuous;
  return j;
}

Json format_json(NetworkFormat f) { return f == NetworkFormat::binary ? "binary" : "text"; }

NetworkFormat parse_net_format(const std::string& s) {
  if (s == "binary") return NetworkFormat::binary;
  if (s == "text") return NetworkFormat::text;
  throw DomainError("unknown network format '" + s + "' (expected binary or text)");
}

void require_positive(const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string("--") + name + " must be a positive number");
}

struct Depth3Size {
  double width = 0.0;
  double outer_units = 0.0;
  double params = 0.0;
};

// Upper bounds on the construction's size, computed without building it.
Depth3Size predict_depth3(int d, double L, double eps) {
  const double square_intervals = std::floor(2.0 * 2.0 / (eps / (2.0 * d * L)));
  const double radius = 1.0 + eps / (2.0 * L);
  const double outer_intervals = std::floor(radius * L / (eps / 2.0));
  Depth3Size s;
  s.width = d * 2.0 * square_intervals;
  s.outer_units = 2.0 * outer_intervals;
  s.params = s.width * (2.0 * d + 1.0) + s.outer_units * (s.width + 2.0) + 1.0;
  return s;
}

std::string cap_violation(const Depth3Size& s, const RunConfig& cfg) {
  if (s.width > cfg.width_cap) return "skipped: width > cap (" + format_double(s.width) + " > " + format_double(cfg.width_cap) + ")";
  if (s.params > cfg.param_cap) {
    return "skipped: parameters > cap (" + format_double(s.params) + " > " + format_double(cfg.param_cap) + ")";
  }
  return {};
}

Json construction_json(const Depth3Construction& built, const SupError& err, double L, double eps) {
  const auto bc = validate_bounds(built.net);
  Json j;
  j["width"] = bc.r;
  j["width_budget"] = built.width_budget;
  j["width_within_budget"] = static_cast<double>(bc.r) <= built.width_budget;
  j["B_actual"] = bc.B_actual;
  j["declared_bound"] = built.net.declared_bound();
  j["bounds_ok"] = bc.ok;
  j["square_units"] = built.square.unit_count();
  j["outer_units"] = built.outer.unit_count();
  j["outer_width_budget"] = built.outer_width_budget;
  j["outer_width_stated"] = built.outer_width_stated;
  j["sup_error"] = err.sup;
  j["mean_sq_error"] = err.mean_sq;
  j["sup_within_eps"] = err.sup <= eps;
  j["L"] = L;
  return j;
}

}  // namespace

bool report_passed(const Json& report) { return report.value("status", std::string("ok")) == "ok"; }

Json cmd_expand(const RunConfig& cfg) {
  const int d = dim_or(cfg, 3);
  if (d < 2) throw DomainError("--d must be >= 2");
  if (cfg.n < 0) throw DomainError("--n (expansion degree) must be >= 0");
  const Profile p = make_profile(cfg.profile, d, cfg.L.value_or(0.0));
  const int nodes = node_count_for(cfg, p, cfg.n);
  const Expansion e = expand(p.g, d, cfg.n, gauss_rule(d, nodes));

  Json config;
  config["profile"] = cfg.profile;
  config["d"] = d;
  config["n"] = cfg.n;
  config["nodes"] = nodes;
  Json out = report_header("expand", std::move(config));
  out["status"] = "ok";
  out["under_resolved"] = e.under_resolved;
  out["norm_sq"] = e.norm_sq_estimate;
  out["coefficients"] = e.coefficients;
  Json residuals = Json::array();
  for (int n = 0; n <= cfg.n + 1; ++n) residuals.push_back({{"n", n}, {"A", residual(e, n)}});
  out["residuals"] = std::move(residuals);
  return out;
}

Json cmd_bound(const RunConfig& cfg) {
  const int d = dim_or(cfg, 3);
  if (d < 3) throw DomainError("--d must be >= 3 for the depth-2 bound");
  if (cfg.n < 0) throw DomainError("--n must be >= 0");
  if (cfg.r < 0) throw DomainError("--r must be >= 0");
  require_positive("B", cfg.B);
  const Profile p = make_profile(cfg.profile, d, cfg.L.value_or(0.0));
  const int nodes = node_count_for(cfg, p, cfg.n);
  const Expansion e = expand(p.g, d, cfg.n, gauss_rule(d, nodes));
  const double sigma = relu_sigma_max(d, cfg.B);
  const double target = cfg.eps.value_or(example1_target_error());

  Json config;
  config["profile"] = cfg.profile;
  config["d"] = d;
  config["n"] = cfg.n;
  config["r"] = cfg.r;
  config["B"] = cfg.B;
  config["activation"] = "relu";
  config["nodes"] = nodes;
  config["sweep"] = cfg.sweep;
  config["target"] = target;
  Json out = report_header("bound", std::move(config));
  out["status"] = "ok";

  const double A = residual(e, cfg.n);
  out["A"] = A;
  out["A_source"] = {{"expansion_degree", cfg.n}, {"node_count", nodes}, {"under_resolved", e.under_resolved}};
  out["bound"] = bound_json(theorem1_bound(d, cfg.n, cfg.r, cfg.B, sigma, A));
  Json width;
  width["target"] = target;
  put_log(width, "r_star", theorem1_width_threshold(d, cfg.n, cfg.B, sigma, A, target));
  out["width_threshold"] = std::move(width);
  Json ex;
  put_log(ex, "threshold", example1_threshold(d));
  out["example1"] = std::move(ex);

  if (cfg.sweep) {
    Json rows = Json::array();
    int best_n = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (int n = 0; n <= cfg.n; ++n) {
      const auto b = theorem1_bound(d, n, cfg.r, cfg.B, sigma, residual(e, n));
      rows.push_back({{"n", n}, {"A", b.A}, {"lower_bound", b.lower_bound}, {"vacuous", b.vacuous}});
      if (b.lower_bound > best) {
        best = b.lower_bound;
        best_n = n;
      }
    }
    out["sweep"] = std::move(rows);
    out["best"] = {{"n", best_n}, {"lower_bound", best}, {"vacuous", best <= 0.0}};
  }
  return out;
}

Json cmd_build3(const RunConfig& cfg) {
  const int d = dim_or(cfg, 3);
  if (d < 1) throw DomainError("--d must be >= 1");
  const double eps = cfg.eps.value_or(0.1);
  require_positive("eps", eps);
  const Profile p = make_profile(cfg.profile, d, cfg.L.value_or(0.0));
  const double L = cfg.L.value_or(p.lipschitz);
  if (!(L > 0.0)) throw DomainError("profile '" + cfg.profile + "' has Lipschitz constant 0; pass --L > 0");
  if (p.range_min < -1.0 - 1e-12 || p.range_max > 1.0 + 1e-12) {
    throw DomainError("profile '" + cfg.profile + "' is not bounded by 1 on [-1, 1] (range [" +
                      format_double(p.range_min) + ", " + format_double(p.range_max) + "])");
  }
  const auto size = predict_depth3(d, L, eps);
  if (const auto why = cap_violation(size, cfg); !why.empty()) throw DomainError("build3 " + why);
  const std::size_t samples = samples_or(cfg, 10'000);
  const NetworkFormat net_format = parse_net_format(cfg.net_format);

  const auto built = build_depth3(p.g, L, d, eps);
  const auto err = sup_error_on_sphere(built.net, p.g, samples, cfg.seed);
  Json results = construction_json(built, err, L, eps);
  if (!results["bounds_ok"].get<bool>() || !results["width_within_budget"].get<bool>() ||
      !results["sup_within_eps"].get<bool>()) {
    throw VerificationFailure("depth-3 construction failed its checks: " + results.dump());
  }

  Json config;
  config["profile"] = cfg.profile;
  config["d"] = d;
  config["L"] = L;
  config["eps"] = eps;
  config["samples"] = samples;
  config["seed"] = cfg.seed;
  config["net_path"] = cfg.net_path;
  config["net_format"] = format_json(net_format);
  config["width_cap"] = cfg.width_cap;
  config["param_cap"] = cfg.param_cap;
  Json out = report_header("build3", std::move(config));
  out["status"] = "ok";
  out["manifest"] = std::move(results);
  if (!cfg.net_path.empty()) save_network(built.net, cfg.net_path, net_format);
  return out;
}

Json cmd_verify(const RunConfig& cfg) {
  if (cfg.net_path.empty()) throw DomainError("verify needs --net PATH");
  const ReluNetwork net = load_network(cfg.net_path);
  const int d = net.dimension();
  if (cfg.d != 0 && cfg.d != d) {
    throw DomainError("--d " + std::to_string(cfg.d) + " does not match the network's d = " + std::to_string(d));
  }
  const Profile p = make_profile(cfg.profile, d, cfg.L.value_or(0.0));
  const std::size_t samples = samples_or(cfg, 10'000);
  const PairFunction model = [&net](std::span<const double> x, std::span<const double> y) { return net.evaluate(x, y); };
  const PairFunction target = [&p](std::span<const double> x, std::span<const double> y) {
    return p.g(std::clamp(dot(x, y), -1.0, 1.0));
  };
  const auto l2 = l2_error(model, target, d, samples, cfg.seed);
  const auto sup = sup_error_on_sphere(net, p.g, samples, cfg.seed);
  const auto bc = validate_bounds(net);

  Json config;
  config["net_path"] = cfg.net_path;
  config["profile"] = cfg.profile;
  config["d"] = d;
  config["samples"] = samples;
  config["seed"] = cfg.seed;
  if (cfg.eps) config["eps"] = *cfg.eps;
  Json out = report_header("verify", std::move(config));
  out["depth"] = net.depth();
  out["l2"] = {{"squared", l2.squared.mean},
               {"squared_std_error", l2.squared.std_error},
               {"norm", l2.norm},
               {"norm_std_error", l2.norm_std_error}};
  out["sup_error"] = sup.sup;
  out["bounds"] = {{"r", bc.r}, {"B_actual", bc.B_actual}, {"declared_bound", net.declared_bound()}, {"ok", bc.ok}};
  bool pass = bc.ok;
  if (net.depth() == 2) {
    const auto pre = max_preactivation_bound(net, samples, cfg.seed);
    out["preactivation"] = {{"analytic", pre.analytic}, {"empirical", pre.empirical}, {"ok", pre.empirical <= pre.analytic}};
    pass = pass && pre.empirical <= pre.analytic;
  }
  if (cfg.eps) {
    out["sup_within_eps"] = sup.sup <= *cfg.eps;
    pass = pass && sup.sup <= *cfg.eps;
  }
  out["status"] = pass ? "ok" : "verification_failed";
  return out;
}

Json cmd_separation_report(const RunConfig& cfg) {
  const int d = dim_or(cfg, 3);
  if (d < 3 || d > 1000) throw DomainError("separation-report supports 3 <= d <= 1000");
  const double eps = cfg.eps.value_or(0.5);
  require_positive("eps", eps);
  const std::size_t samples = samples_or(cfg, 1000);
  const double pi = std::numbers::pi;
  const double d3 = static_cast<double>(d) * d * d;
  const double L = pi * d3;
  const auto f = [L](double x) { return std::sin(L * x); };

  Json config;
  config["d"] = d;
  config["eps"] = eps;
  config["samples"] = samples;
  config["seed"] = cfg.seed;
  config["width_cap"] = cfg.width_cap;
  config["param_cap"] = cfg.param_cap;
  config["max_nodes"] = cfg.max_nodes;
  Json out = report_header("separation-report", std::move(config));
  out["status"] = "ok";
  out["profile"] = "sin(pi d^3 x)";

  // Depth-2 side.
  const int n = d * d;
  const double B = std::ldexp(1.0, d);
  const double sigma = relu_sigma_max(d, B);
  const double floor_A = example1_A_floor();
  const double target = example1_target_error();
  Json two;
  two["n"] = n;
  two["B"] = B;
  two["sigma_max"] = sigma;
  two["A_floor"] = floor_A;
  two["target_error"] = target;
  put_log(two, "harmonic_dim", log_harmonic_dimension(d, n));
  put_log(two, "neuron_threshold", example1_threshold(d));
  put_log(two, "theorem1_width_at_floor", theorem1_width_threshold(d, n, B, sigma, floor_A, target));
  const int nodes = std::max(recommended_node_count(n, L), n + 1);
  if (nodes <= cfg.max_nodes) {
    const Expansion e = expand(f, d, n, gauss_rule(d, nodes));
    const double A = residual(e, n);
    two["measured_A"] = {{"A", A}, {"node_count", nodes}, {"at_least_floor", A >= floor_A}};
  } else {
    two["measured_A"] = "skipped: nodes > cap (" + std::to_string(nodes) + " > " + std::to_string(cfg.max_nodes) + ")";
  }
  out["depth2"] = std::move(two);

  // Depth-3 side.
  Json three;
  three["L"] = L;
  three["width_stated"] = 16.0 * pi * std::pow(d, 5) / eps;
  three["weight_bound_stated"] = 2.0 * pi * d3;
  three["width_budget"] = 16.0 * d * d * L / eps;
  three["declared_bound"] = std::max(4.0, 2.0 * L);
  const auto size = predict_depth3(d, L, eps);
  three["predicted_width"] = size.width;
  three["predicted_params"] = size.params;
  if (const auto why = cap_violation(size, cfg); !why.empty()) {
    three["construction"] = why;
  } else {
    const auto built = build_depth3(f, L, d, eps);
    const auto err = sup_error_on_sphere(built.net, f, samples, cfg.seed);
    Json c = construction_json(built, err, L, eps);
    const bool ok = c["bounds_ok"].get<bool>() && c["width_within_budget"].get<bool>() && c["sup_within_eps"].get<bool>();
    three["construction"] = std::move(c);
    if (!ok) out["status"] = "verification_failed";
  }
  out["depth3"] = std::move(three);
  return out;
}

Json cmd_sine(const RunConfig& cfg) {
  const int d = dim_or(cfg, 100);
  if (d < 3) throw DomainError("--d must be >= 3");
  if (cfg.m < 1 || cfg.k < 0) throw DomainError("sine needs --m >= 1 and --k >= 0");
  const double omega = std::numbers::pi * std::sqrt(static_cast<double>(d)) * cfg.m;
  const auto g = [omega](double x) { return std::sin(omega * x); };
  const int nodes = cfg.nodes != 0 ? cfg.nodes : std::max(recommended_node_count(cfg.k + 1, omega), cfg.k + 2);
  if (nodes < 1.5 * omega) throw DomainError("--nodes must be at least 1.5 pi sqrt(d) m = " + format_double(1.5 * omega));
  const double via_expansion = std::pow(residual(expand(g, d, cfg.k, gauss_rule(d, nodes)), cfg.k + 1), 2);
  OracleOptions opts;
  opts.panels = std::max(256, static_cast<int>(std::ceil(omega)));
  const double via_oracle = best_poly_error_oracle(g, d, cfg.k, opts);
  const double bound = sine_lemma_bound(cfg.m, cfg.k);
  const bool asserted = d >= 100;

  Json config;
  config["d"] = d;
  config["m"] = cfg.m;
  config["k"] = cfg.k;
  config["nodes"] = nodes;
  config["oracle_panels"] = opts.panels;
  Json out = report_header("sine", std::move(config));
  out["expansion_sq_error"] = via_expansion;
  out["oracle_sq_error"] = via_oracle;
  out["paths_agree"] = std::fabs(via_expansion - via_oracle) <= 1e-7;
  out["bound"] = bound;
  out["holds"] = via_oracle >= bound;
  out["asserted"] = asserted;
  out["status"] = (!asserted || via_oracle >= bound) ? "ok" : "verification_failed";
  return out;
}

Json cmd_gap(const RunConfig& cfg) {
#ifdef DEPTHSEP_WITH_GAP_DEMO
  Json file = cfg.gap_config.empty() ? Json::object() : Json::parse(read_file(cfg.gap_config), nullptr, false);
  if (file.is_discarded() || !file.is_object()) throw DomainError("gap config '" + cfg.gap_config + "' is not a JSON object");
  FitConfig fc;
  fc.d = file.value("d", dim_or(cfg, fc.d));
  fc.r = file.value("r", fc.r);
  fc.B = file.value("B", fc.B);
  fc.learning_rate = file.value("learning_rate", fc.learning_rate);
  fc.steps = file.value("steps", fc.steps);
  fc.batch_size = file.value("batch_size", fc.batch_size);
  fc.seed = file.value("seed", fc.seed);
  fc.init_scale = file.value("init_scale", fc.init_scale);
  fc.eval_samples = file.value("eval_samples", fc.eval_samples);
  fc.checkpoint_every = file.value("checkpoint_every", fc.checkpoint_every);
  const std::string profile_spec = file.value("profile", cfg.profile);
  const int n = file.value("n", cfg.n);
  const Profile p = make_profile(profile_spec, fc.d, file.value("L", cfg.L.value_or(0.0)));

  Json config;
  config["d"] = fc.d;
  config["r"] = fc.r;
  config["B"] = fc.B;
  config["learning_rate"] = fc.learning_rate;
  config["steps"] = fc.steps;
  config["batch_size"] = fc.batch_size;
  config["seed"] = fc.seed;
  config["init_scale"] = fc.init_scale;
  config["eval_samples"] = fc.eval_samples;
  config["checkpoint_every"] = fc.checkpoint_every;
  config["profile"] = profile_spec;
  config["n"] = n;
  Json out = report_header("gap", std::move(config));
  const GapReport rep = gap_report(fc, p, n);
  Json floors = Json::array();
  for (const auto& e : rep.floors) {
    floors.push_back({{"n", e.n}, {"A", e.A}, {"lower_bound", e.lower_bound}, {"vacuous", e.vacuous}});
  }
  out["floors"] = std::move(floors);
  out["best_floor"] = rep.best_floor;
  out["asserted"] = rep.asserted;
  Json cps = Json::array();
  for (const auto& c : rep.fit.checkpoints) {
    cps.push_back({{"step", c.step}, {"l2_error", c.l2_error}, {"l2_std_error", c.l2_std_error}});
  }
  out["checkpoints"] = std::move(cps);
  out["final_batch_loss"] = rep.fit.losses.empty() ? 0.0 : rep.fit.losses.back();
  out["worst_margin"] = rep.worst_margin;
  out["status"] = "ok";
  return out;
#else
  (void)cfg;
  throw DomainError("this build has the gap demo disabled (configure with -DDEPTHSEP_GAP_DEMO=ON)");
#endif
}

}  // namespace depthsep
