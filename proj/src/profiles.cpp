// SPDX-License-Identifier: Apache-2.0
#include "depthsep/profiles.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

#include "depthsep/errors.hpp"
#include "depthsep/io.hpp"
#include "depthsep/legendre.hpp"
#include "depthsep/special_fn.hpp"

namespace depthsep {

namespace {

constexpr const char* kForms =
    "expected one of: identity, abs, exp, const(c), poly(c0,c1,...), sine(w), sine(<w>pi), q(j), example1, "
    "lemma(m), @path";

[[noreturn]] void bad(const std::string& selector, const std::string& why) {
  throw DomainError("bad profile '" + selector + "': " + why + "; " + kForms);
}

double parse_real(const std::string& selector, std::string text) {
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }), text.end());
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    bad(selector, "cannot parse number '" + text + "'");
  }
  return v;
}

std::vector<std::string> split_args(const std::string& inner) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : inner) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// Matches "name(args)" and extracts args.
bool call_form(const std::string& selector, const std::string& name, std::string& args) {
  if (selector.size() < name.size() + 2 || selector.compare(0, name.size() + 1, name + "(") != 0 || selector.back() != ')') {
    return false;
  }
  args = selector.substr(name.size() + 1, selector.size() - name.size() - 2);
  return true;
}

Profile sine_profile(std::string selector, double w) {
  Profile p;
  p.selector = std::move(selector);
  p.g = [w](double x) { return std::sin(w * x); };
  p.lipschitz = std::fabs(w);
  const double peak = std::fabs(w) >= std::numbers::pi / 2 ? 1.0 : std::sin(std::fabs(w));
  p.range_min = -peak;
  p.range_max = peak;
  p.frequency = std::fabs(w);
  return p;
}

Profile tabulated(const std::string& selector, const std::string& path, double declared_lipschitz) {
  if (!(declared_lipschitz > 0.0)) bad(selector, "tabulated profiles need a declared Lipschitz constant (--L)");
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<double> xs;
  std::vector<double> ys;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double x = 0.0;
    double y = 0.0;
    if (!(fields >> x)) continue;
    if (!(fields >> y)) bad(selector, "line " + std::to_string(line_no) + " needs two columns");
    if (!xs.empty() && !(x > xs.back())) bad(selector, "x values must be strictly increasing (line " + std::to_string(line_no) + ")");
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 2 || xs.front() > -1.0 || xs.back() < 1.0) bad(selector, "table must have >= 2 rows covering [-1, 1]");
  double slope = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) slope = std::max(slope, std::fabs(ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]));
  if (slope > 1.05 * declared_lipschitz) {
    bad(selector, "table slope " + format_double(slope) + " exceeds the declared L = " + format_double(declared_lipschitz));
  }
  double min_gap = 2.0;
  for (std::size_t i = 1; i < xs.size(); ++i) min_gap = std::min(min_gap, xs[i] - xs[i - 1]);

  Profile p;
  p.selector = selector;
  p.lipschitz = declared_lipschitz;
  p.range_min = *std::min_element(ys.begin(), ys.end());
  p.range_max = *std::max_element(ys.begin(), ys.end());
  p.frequency = std::numbers::pi / min_gap;
  auto table = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(std::move(xs), std::move(ys));
  p.g = [table](double x) {
    const auto& [tx, ty] = *table;
    auto it = std::upper_bound(tx.begin(), tx.end(), x);
    if (it == tx.begin()) return ty.front();
    if (it == tx.end()) return ty.back();
    const std::size_t i = static_cast<std::size_t>(it - tx.begin());
    const double t = (x - tx[i - 1]) / (tx[i] - tx[i - 1]);
    return ty[i - 1] + t * (ty[i] - ty[i - 1]);
  };
  return p;
}

}  // namespace

Profile make_profile(const std::string& selector, int d, double declared_lipschitz) {
  if (selector.empty()) bad(selector, "empty selector");
  if (selector.front() == '@') return tabulated(selector, selector.substr(1), declared_lipschitz);

  std::string args;
  Profile p;
  p.selector = selector;
  if (selector == "identity") {
    p.g = [](double x) { return x; };
    p.lipschitz = 1.0;
    p.range_min = -1.0;
    p.range_max = 1.0;
    p.degree = 1;
  } else if (selector == "abs") {
    p.g = [](double x) { return std::fabs(x); };
    p.lipschitz = 1.0;
    p.range_max = 1.0;
  } else if (selector == "exp") {
    p.g = [](double x) { return std::exp(x); };
    p.lipschitz = std::numbers::e;
    p.range_min = 1.0 / std::numbers::e;
    p.range_max = std::numbers::e;
  } else if (call_form(selector, "const", args)) {
    const double c = parse_real(selector, args);
    p.g = [c](double) { return c; };
    p.range_min = c;
    p.range_max = c;
    p.degree = 0;
  } else if (call_form(selector, "poly", args)) {
    std::vector<double> c;
    for (const auto& a : split_args(args)) c.push_back(parse_real(selector, a));
    double mag = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      mag += std::fabs(c[i]);
      p.lipschitz += static_cast<double>(i) * std::fabs(c[i]);
      if (c[i] != 0.0) p.degree = static_cast<int>(i);
    }
    if (p.degree < 0) p.degree = 0;
    p.range_min = -mag;
    p.range_max = mag;
    p.g = [c](double x) {
      double s = 0.0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
      return s;
    };
  } else if (call_form(selector, "sine", args)) {
    double w = 0.0;
    if (args.size() >= 2 && args.compare(args.size() - 2, 2, "pi") == 0) {
      const std::string coeff = args.substr(0, args.size() - 2);
      w = (coeff.empty() ? 1.0 : parse_real(selector, coeff)) * std::numbers::pi;
    } else {
      w = parse_real(selector, args);
    }
    return sine_profile(selector, w);
  } else if (call_form(selector, "q", args)) {
    const double jr = parse_real(selector, args);
    const int j = static_cast<int>(jr);
    if (j < 0 || j != jr || j > 100000) bad(selector, "q(j) needs an integer 0 <= j <= 100000");
    if (d < 2 || (d == 2 && j >= 2)) bad(selector, "q(j) needs d >= 3 for j >= 2");
    const double sqrt_dim = std::exp(0.5 * log_harmonic_dimension(d, j).log_abs);
    auto family = std::make_shared<const LegendreFamily>(d, j);
    p.g = [family, j](double x) { return family->eval_orthonormal(std::clamp(x, -1.0, 1.0))[j]; };
    // Markov: |p'| <= deg^2 max|p| on [-1, 1], and max|q_j| = sqrt(N_{d,j}).
    p.lipschitz = static_cast<double>(j) * j * sqrt_dim;
    p.range_min = -sqrt_dim;
    p.range_max = sqrt_dim;
    p.degree = j;
  } else if (selector == "example1") {
    if (d < 1) bad(selector, "example1 needs d >= 1");
    return sine_profile(selector, std::numbers::pi * d * d * static_cast<double>(d));
  } else if (call_form(selector, "lemma", args)) {
    const double m = parse_real(selector, args);
    if (!(m > 0.0)) bad(selector, "lemma(m) needs m > 0");
    return sine_profile(selector, std::numbers::pi * std::sqrt(static_cast<double>(d)) * m);
  } else {
    bad(selector, "unknown selector");
  }
  return p;
}

}  // namespace depthsep
