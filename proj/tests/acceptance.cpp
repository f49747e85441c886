// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion, each with its tolerance
// and runtime budget. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "depthsep/bounds.hpp"
#include "depthsep/commands.hpp"
#include "depthsep/constructor.hpp"
#include "depthsep/errors.hpp"
#include "depthsep/legendre.hpp"
#include "depthsep/measure.hpp"
#include "depthsep/profiles.hpp"
#include "depthsep/projection.hpp"
#include "depthsep/quadrature.hpp"
#include "depthsep/relu_net.hpp"
#include "depthsep/special_fn.hpp"
#include "depthsep/sphere_mc.hpp"
#ifdef DEPTHSEP_WITH_GAP_DEMO
#include "depthsep/gap_demo.hpp"
#endif

using namespace depthsep;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

void info(const std::string& s) { std::printf("    %s\n", s.c_str()); }

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.require(false, "runtime " + num(secs) + " s over budget " + num(budget_s) + " s");
  }
  std::printf("%s criterion %d: %s [%.2f s / %.0f s]%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs, budget_s,
              o.detail.empty() ? "" : " -- ", o.detail.c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

unsigned __int128 binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return c;
}

Outcome dimension_formula() {
  Outcome o;
  for (int n = 0; n <= 1000; ++n) {
    const auto exact = harmonic_dimension_exact(3, n);
    o.require(exact && *exact == static_cast<std::uint64_t>(2 * n + 1), "N_{3," + std::to_string(n) + "} != 2n+1");
    const double viaLog = std::exp(log_harmonic_dimension(3, n).log_abs);
    o.require(std::llround(viaLog) == 2 * n + 1, "log-space N_{3," + std::to_string(n) + "} rounds wrong");
  }
  int compared = 0;
  double worst = 0.0;
  const auto limit = static_cast<unsigned __int128>(1) << 62;
  for (int d = 2; d <= 50; ++d) {
    for (int n = 0; n <= 40; ++n) {
      const unsigned __int128 b = binom(d + n - 1, d - 1) - binom(d + n - 3, d - 1);
      if (b >= limit) continue;
      const double bd = static_cast<double>(b);
      const double closed = std::exp(log_harmonic_dimension(d, n).log_abs);
      worst = std::max(worst, std::fabs(closed - bd) / bd);
      ++compared;
    }
  }
  info("binomial difference vs closed form: " + std::to_string(compared) + " cases, worst relative " + num(worst));
  o.require(compared > 1000, "too few comparable cases");
  o.require(worst <= 1e-10, "relative disagreement " + num(worst));
  return o;
}

Outcome legendre_suite() {
  Outcome o;
  double worst_orth = 0.0;
  for (int d : {3, 5, 10, 25}) {
    const auto rule = gauss_rule(d, 40);
    const LegendreFamily fam(d, 30);
    std::vector<std::vector<double>> q;
    for (double x : rule.nodes) q.push_back(fam.eval_orthonormal(x));
    for (int i = 0; i <= 30; ++i) {
      for (int j = 0; j <= 30; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < rule.size(); ++k) s += rule.weights[k] * q[k][i] * q[k][j];
        worst_orth = std::max(worst_orth, std::fabs(s - (i == j ? 1.0 : 0.0)));
      }
    }
  }
  double worst_one = 0.0;
  double worst_sup = 0.0;
  for (int d : {3, 5, 10, 25, 100}) {
    const LegendreFamily fam(d, 60);
    for (double p : fam.eval_all(1.0)) worst_one = std::max(worst_one, std::fabs(p - 1.0));
    for (int i = 0; i <= 10000; ++i) {
      for (double p : fam.eval_all(-1.0 + 2.0 * i / 10000.0)) worst_sup = std::max(worst_sup, std::fabs(p));
    }
  }
  info("orthonormality " + num(worst_orth) + ", |P_n(1)-1| " + num(worst_one) + ", grid max |P_n| " + num(worst_sup));
  o.require(worst_orth <= 1e-8, "orthonormality error " + num(worst_orth));
  o.require(worst_one <= 1e-12, "P_n(1) error " + num(worst_one));
  o.require(worst_sup <= 1.0 + 1e-9, "sup |P_n| " + num(worst_sup));
  return o;
}

Outcome eq3_suite() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(3, 10);
  std::uniform_int_distribution<int> deg(0, 6);
  double worst_z = 0.0;
  int nonzero = 0;
  for (int c = 0; c < 20; ++c) {
    const int d = dim(rng);
    const int n = deg(rng);
    int i = deg(rng);
    int j = deg(rng);
    if (c % 2 == 0) i = j = n;  // half the cases carry a nonzero prediction
    SphereSampler s(d, 1000 + c);
    const auto v = s.sample();
    const auto vp = (c % 5 == 0) ? v : s.sample();
    const auto k = verify_eq3(d, n, i, j, v, vp, 1'000'000, 5000 + c);
    worst_z = std::max(worst_z, k.z_score());
    if (k.predicted != 0.0) ++nonzero;
    o.require(k.within(4.0), "case " + std::to_string(c) + " (d=" + std::to_string(d) + ", n=" + std::to_string(n) +
                                 ", i=" + std::to_string(i) + ", j=" + std::to_string(j) + ") z=" + num(k.z_score()));
  }
  for (int c = 0; c < 6; ++c) {
    const int d = 3 + c;
    SphereSampler s(d, 77 + c);
    const auto v = s.sample();
    const auto vp = s.sample();
    const auto k = verify_reproducing(d, c % 4, (c % 2 == 0) ? c % 4 : c % 4 + 1, v, vp, 1'000'000, 900 + c);
    worst_z = std::max(worst_z, k.z_score());
    o.require(k.within(4.0), "reproducing case " + std::to_string(c) + " z=" + num(k.z_score()));
  }
  info("20 eq3 cases (" + std::to_string(nonzero) + " with nonzero prediction) + 6 reproducing cases, worst |z| " + num(worst_z));
  return o;
}

Outcome pushforward_suite() {
  Outcome o;
  const std::size_t n = 100'000;
  const double crit = ks_critical_value(n);
  for (int d : {3, 5, 10}) {
    const double ks = pushforward_ks(d, n, 314 + d);
    info("d=" + std::to_string(d) + " KS " + num(ks) + " (critical " + num(crit) + ")");
    o.require(ks <= crit, "KS " + num(ks) + " at d=" + std::to_string(d));
  }
  const double control = pushforward_ks(3, 10, n, 2718);
  info("negative control d=3 vs mu_10: KS " + num(control));
  o.require(control > crit, "negative control did not fail");
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  struct Case {
    std::string name;
    Profile1D g;
    int d;
    int k;
  };
  const std::vector<Case> cases = {
      {"x^2", [](double x) { return x * x; }, 3, 1},
      {"exp", [](double x) { return std::exp(x); }, 3, 2},
      {"exp", [](double x) { return std::exp(x); }, 10, 3},
      {"exp", [](double x) { return std::exp(x); }, 100, 8},
      {"sin(3x+0.2)", [](double x) { return std::sin(3.0 * x + 0.2); }, 3, 5},
      {"sin(3x+0.2)", [](double x) { return std::sin(3.0 * x + 0.2); }, 10, 12},
      {"1/(1.5-x)", [](double x) { return 1.0 / (1.5 - x); }, 3, 20},
      {"1/(1.5-x)", [](double x) { return 1.0 / (1.5 - x); }, 100, 4},
      {"tanh(4x)", [](double x) { return std::tanh(4.0 * x); }, 10, 9},
      {"cos(12x)", [](double x) { return std::cos(12.0 * x); }, 100, 20},
      {"sin(10 pi x)", [](double x) { return std::sin(10.0 * std::numbers::pi * x); }, 100, 5},
  };
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto e = expand(c.g, c.d, c.k + 1, gauss_rule(c.d, 400));
    const double a = residual(e, c.k + 1);
    const double oracle = best_poly_error_oracle(c.g, c.d, c.k);
    worst = std::max(worst, std::fabs(a * a - oracle));
    o.require(std::fabs(a * a - oracle) <= 1e-7,
              c.name + " d=" + std::to_string(c.d) + " k=" + std::to_string(c.k) + " differs by " + num(std::fabs(a * a - oracle)));
  }
  const auto sq = expand([](double x) { return x * x; }, 3, 2, gauss_rule(3, 10));
  const double four45 = std::pow(residual(sq, 2), 2);
  o.require(std::fabs(four45 - 4.0 / 45.0) <= 1e-12, "x^2 at d=3, k=1 gives " + num(four45));
  info(std::to_string(cases.size()) + " cases, worst |residual^2 - oracle| " + num(worst) + "; x^2 case " + num(four45));
  return o;
}

Outcome sine_lemma() {
  Outcome o;
  auto compare = [&o](int d, bool asserted) {
    for (int m : {5, 10, 20}) {
      const double omega = std::numbers::pi * std::sqrt(static_cast<double>(d)) * m;
      const auto g = [omega](double x) { return std::sin(omega * x); };
      const int kmax = std::min(9, m - 1);
      const int nodes = recommended_node_count(kmax + 1, omega);
      const auto e = expand(g, d, kmax, gauss_rule(d, nodes));
      double slack = std::numeric_limits<double>::infinity();
      for (int k = 0; k <= kmax; ++k) {
        const double err = std::pow(residual(e, k + 1), 2);
        const double bound = sine_lemma_bound(m, k);
        slack = std::min(slack, err - bound);
        if (asserted) {
          o.require(nodes >= 1.5 * omega, "too few nodes");
          o.require(err >= bound, "d=" + std::to_string(d) + " m=" + std::to_string(m) + " k=" + std::to_string(k) +
                                      ": " + num(err) + " < " + num(bound));
        }
      }
      info(std::string(asserted ? "" : "[report only] ") + "d=" + std::to_string(d) + " m=" + std::to_string(m) +
           " nodes=" + std::to_string(nodes) + " min(error - bound) over k=0.." + std::to_string(kmax) + ": " + num(slack));
    }
  };
  compare(100, true);
  compare(20, false);
  compare(50, false);
  return o;
}

Outcome construction_suite() {
  Outcome o;
  struct Case {
    std::string name;
    std::function<double(double)> f;
    double L;
    int d;
    double eps;
  };
  const std::vector<Case> cases = {
      {"identity", [](double t) { return t; }, 1.0, 3, 0.1},
      {"sin 3x", [](double t) { return std::sin(3.0 * t); }, 3.0, 3, 0.1},
      {"sin 3x", [](double t) { return std::sin(3.0 * t); }, 3.0, 6, 0.2},
  };
  for (const auto& c : cases) {
    const auto built = build_depth3(c.f, c.L, c.d, c.eps);
    const double budget = 16.0 * c.d * c.d * c.L / c.eps;
    const auto bc = validate_bounds(built.net);
    const auto err = sup_error_on_sphere(built.net, c.f, 10'000, 4242);
    const std::string tag = c.name + " d=" + std::to_string(c.d) + " eps=" + num(c.eps);
    info(tag + ": width " + std::to_string(bc.r) + " <= " + num(budget) + ", B_actual " + num(bc.B_actual) + " <= " +
         num(built.net.declared_bound()) + ", sup error " + num(err.sup));
    o.require(static_cast<double>(bc.r) <= budget, tag + " width over budget");
    o.require(built.net.declared_bound() == std::max(4.0, 2.0 * c.L), tag + " declared bound is not max(4, 2L)");
    o.require(bc.ok, tag + " weights exceed the declared bound");
    o.require(err.sup <= c.eps, tag + " sup error " + num(err.sup));
  }
  return o;
}

Outcome example1_suite() {
  Outcome o;
  for (int d = 5; d <= 64; ++d) {
    const auto t = example1_threshold(d);
    o.require(t.sign == 1 && std::isfinite(t.log_abs), "threshold not finite at d=" + std::to_string(d));
    if (d < 64) o.require(example1_threshold(d + 1).log_abs > t.log_abs, "not monotone at d=" + std::to_string(d));
  }
  const double r16 = example1_threshold(16).log2_abs() / 16;
  const double r32 = example1_threshold(32).log2_abs() / 32;
  const double r64 = example1_threshold(64).log2_abs() / 64;
  info("log2(threshold)/d at 16, 32, 64: " + num(r16) + ", " + num(r32) + ", " + num(r64));
  o.require(r16 < r32 && r32 < r64, "log2(threshold)/d not increasing");
  o.require(relu_sigma_max(1, 1.0) == 3.0 && relu_sigma_max(4, 1.0) == 5.0 && relu_sigma_max(9, 2.0) == 14.0,
            "relu_sigma_max examples");
  // Decimal references evaluated independently at high precision.
  o.require(std::fabs(example1_target_error() - 0.000274246621722093) <= 1e-12, "1/(50 e^2 pi^2)");
  o.require(std::fabs(example1_A_floor() - 0.0234199326097277) <= 1e-12, "1/(5 e pi)");
  return o;
}

Outcome theorem1_suite() {
  Outcome o;
  for (int d : {3, 10, 40}) {
    for (int n : {1, 5, 30}) {
      const double A = 0.8, B = 0.7;
      const double s = relu_sigma_max(d, B);
      const double slope = -2.0 * A * B * s / std::sqrt(std::exp(log_harmonic_dimension(d, n).log_abs));
      for (int r : {1, 7, 100000}) {
        const double lo = theorem1_bound(d, n, r, B, s, A).lower_bound;
        const double hi = theorem1_bound(d, n, r + 1, B, s, A).lower_bound;
        // Relative 1e-9 on the slope, plus the rounding floor of the subtraction itself.
        const double tol = 1e-9 * std::fabs(slope) + 8.0 * std::numeric_limits<double>::epsilon() * (std::fabs(lo) + std::fabs(hi));
        o.require(std::fabs((hi - lo) - slope) <= tol, "slope mismatch at d=" + std::to_string(d) + ", n=" + std::to_string(n) +
                                                          ", r=" + std::to_string(r) + ": " + num(hi - lo) + " vs " + num(slope));
      }
    }
  }
  const auto zero = theorem1_bound(10, 4, 3, 1.0, 2.0, 0.0);
  o.require(zero.vacuous && zero.lower_bound == 0.0, "A = 0 is not vacuous");
  double worst = 0.0;
  for (int d : {3, 7}) {
    for (int j : {2, 5}) {
      for (int n = 0; n <= j; ++n) {
        RunConfig cfg;
        cfg.d = d;
        cfg.n = n;
        cfg.r = 2;
        cfg.B = 1.0;
        cfg.profile = "q(" + std::to_string(j) + ")";
        const Json rep = cmd_bound(cfg);
        const double A = rep["A"].get<double>();
        worst = std::max(worst, std::fabs(A - 1.0));
        o.require(std::fabs(rep["bound"]["A"].get<double>() - 1.0) <= 1e-10, "q_j profile A != 1");
      }
    }
  }
  info("q_j profiles through the bound command: worst |A - 1| " + num(worst));
  return o;
}

Outcome determinism_suite() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "depthsep_acceptance";
  std::filesystem::create_directories(dir);
  const auto net1 = (dir / "a.bin").string();
  const auto net2 = (dir / "b.bin").string();
  auto twice = [&o](const std::string& name, const std::function<Json()>& f) {
    const std::string a = render_json(f());
    const std::string b = render_json(f());
    o.require(a == b, name + " output differs between runs");
    const std::string ca = render_csv(Json::parse(a));
    o.require(ca == render_csv(Json::parse(b)), name + " csv differs between runs");
  };
  RunConfig ex;
  ex.profile = "exp";
  ex.d = 5;
  ex.n = 8;
  twice("expand", [&] { return cmd_expand(ex); });
  RunConfig bd = ex;
  bd.sweep = true;
  bd.r = 3;
  twice("bound", [&] { return cmd_bound(bd); });
  RunConfig b3;
  b3.profile = "sine(3)";
  b3.d = 3;
  b3.eps = 0.2;
  b3.seed = 99;
  b3.net_path = net1;
  const std::string first = render_json(cmd_build3(b3));
  b3.net_path = net2;
  const std::string second = render_json(cmd_build3(b3));
  o.require(Json::parse(first)["manifest"] == Json::parse(second)["manifest"], "build3 manifest differs between runs");
  RunConfig vf;
  vf.net_path = net1;
  vf.profile = "sine(3)";
  vf.eps = 0.2;
  vf.samples = 20'000;
  vf.seed = 7;
  twice("verify", [&] { return cmd_verify(vf); });
  const auto rebuilt_sup = cmd_verify(vf)["sup_error"].get<double>();
  vf.net_path = net2;
  o.require(cmd_verify(vf)["sup_error"].get<double>() == rebuilt_sup, "rebuilt network verifies differently");
  RunConfig sn;
  sn.d = 20;
  sn.m = 5;
  sn.k = 2;
  twice("sine", [&] { return cmd_sine(sn); });

  const ReluNetwork net = load_network(net1);
  const std::string bytes = serialize_network(net, NetworkFormat::binary);
  const ReluNetwork back = deserialize_network(bytes);
  o.require(serialize_network(back, NetworkFormat::binary) == bytes, "binary re-serialization differs");
  for (std::size_t l = 0; l < net.layers().size(); ++l) {
    const auto a = net.layers()[l].weights();
    const auto b = back.layers()[l].weights();
    o.require(a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0,
              "layer weights differ after round trip");
  }
  SphereSampler s(3, 5);
  for (int i = 0; i < 200; ++i) {
    const auto x = s.sample();
    const auto y = s.sample();
    o.require(net.evaluate(x, y) == back.evaluate(x, y), "evaluation differs after round trip");
  }
  std::filesystem::remove_all(dir);
  return o;
}

#ifdef DEPTHSEP_WITH_GAP_DEMO
Outcome gap_suite() {
  Outcome o;
  // Central differences of the batch loss along every parameter.
  std::mt19937_64 rng(11);
  int checked = 0;
  double worst = 0.0;
  for (int trial = 0; checked < 100 && trial < 1000; ++trial) {
    FitConfig cfg;
    cfg.d = 3 + trial % 4;
    cfg.r = 5 + trial % 7;
    cfg.B = 1.0;
    cfg.init_scale = 1.0;
    cfg.seed = 1000 + trial;
    Depth2Params p = init_params(cfg);
    p.b2 = 0.3;
    const Batch batch = draw_batch(cfg.d, 4, [](double t) { return std::sin(2.0 * t); }, trial, 0);
    bool near_kink = false;
    for (std::size_t s = 0; s < batch.target.size(); ++s) {
      for (int u = 0; u < p.r; ++u) {
        double pre = p.b1[u];
        for (int c = 0; c < 2 * p.d; ++c) pre += p.W[u * 2 * p.d + c] * batch.z[s * 2 * p.d + c];
        if (std::fabs(pre) <= 1e-4) near_kink = true;
      }
    }
    if (near_kink) continue;
    const auto grad = batch_gradient(p, batch);
    const auto flat = p.flatten();
    std::vector<double> fd(flat.size());
    const double h = 1e-6;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      auto plus = flat;
      auto minus = flat;
      plus[i] += h;
      minus[i] -= h;
      Depth2Params a = p, b = p;
      a.assign(plus);
      b.assign(minus);
      fd[i] = (batch_loss(a, batch) - batch_loss(b, batch)) / (2.0 * h);
    }
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < fd.size(); ++i) {
      diff += (fd[i] - grad[i]) * (fd[i] - grad[i]);
      norm += grad[i] * grad[i];
    }
    const double rel = std::sqrt(diff) / std::max(std::sqrt(norm), 1e-12);
    worst = std::max(worst, rel);
    ++checked;
  }
  info("gradient check at " + std::to_string(checked) + " non-kink points, worst relative error " + num(worst));
  o.require(checked == 100, "could not find 100 non-kink points");
  o.require(worst <= 1e-5, "gradient relative error " + num(worst));

  struct Demo {
    std::string profile;
    int d, r, n;
    double B, lr;
    int steps;
  };
  const std::vector<Demo> demos = {
      {"q(4)", 6, 4, 4, 0.3, 0.05, 600},
      {"q(4)", 6, 64, 4, 0.3, 0.05, 600},
      {"q(3)", 5, 8, 3, 0.25, 0.05, 600},
      {"const(0.5)", 4, 8, 2, 1.0, 0.05, 400},
      {"q(1)", 4, 32, 2, 1.0, 0.02, 800},
      {"example1", 3, 64, 9, 0.5, 0.02, 800},
  };
  for (const auto& dm : demos) {
    FitConfig cfg;
    cfg.d = dm.d;
    cfg.r = dm.r;
    cfg.B = dm.B;
    cfg.learning_rate = dm.lr;
    cfg.steps = dm.steps;
    cfg.batch_size = 128;
    cfg.seed = 17;
    cfg.eval_samples = 20'000;
    cfg.checkpoint_every = 100;
    const auto rep = gap_report(cfg, make_profile(dm.profile, dm.d), dm.n);
    const auto& last = rep.fit.checkpoints.back();
    info(dm.profile + " d=" + std::to_string(dm.d) + " r=" + std::to_string(dm.r) + " B=" + num(dm.B) + ": floor " +
         num(rep.best_floor) + (rep.asserted ? "" : " (vacuous, report only)") + ", final L2 error " + num(last.l2_error) +
         " +- " + num(last.l2_std_error) + ", worst margin " + num(rep.worst_margin));
    o.require(!rep.asserted || rep.worst_margin >= 0.0, dm.profile + " beat the floor");
  }
  return o;
}
#endif

}  // namespace

int main() {
  run(1, "harmonic dimension formula", 1.0, dimension_formula);
  run(2, "Legendre orthonormality, P_n(1) = 1, sup norm", 10.0, legendre_suite);
  run(3, "reproducing identity and kernel orthogonality within 4 SE", 120.0, eq3_suite);
  run(4, "pushforward KS test with negative control", 30.0, pushforward_suite);
  run(5, "residual vs independent best-polynomial oracle within 1e-7", 10.0, oracle_agreement);
  run(6, "sine lower bound at d = 100", 120.0, sine_lemma);
  run(7, "depth-3 construction budgets and sup error", 60.0, construction_suite);
  run(8, "neuron-count threshold and constants", 1.0, example1_suite);
  run(9, "depth-2 bound evaluator properties", 5.0, theorem1_suite);
  run(10, "determinism and bit-exact serialization", 30.0, determinism_suite);
#ifdef DEPTHSEP_WITH_GAP_DEMO
  run(11, "gradient check and no fitted network beats a non-vacuous floor", 600.0, gap_suite);
#else
  std::printf("SKIP criterion 11: gap demo disabled in this build\n");
#endif
  std::printf("%s: %d criterion failure(s)\n", failures == 0 ? "ALL PASS" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
