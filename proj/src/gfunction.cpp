// Copyright 2026 The aqrm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "constraint.hpp"
#include "errors.hpp"

namespace aqrm::gfunction {

namespace {

// Neumaier summation.
class CompensatedSum {
 public:
  explicit CompensatedSum(double start) : sum_(start) {}
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      carry_ += (sum_ - t) + v;
    else
      carry_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_;
  double carry_ = 0.0;
};

double multiplier(int N, int n, double g, double delta) {
  return 4 * g * g + (n - N) + delta * delta / (N - n);
}

double constraint_ratio(int N, double g, double delta) {
  const BivarPoly p = constraint::constraint_poly({N, 0, constraint::Variant::plain}, N);
  const double x = 4 * g * g;
  const double d = delta * delta;
  const double scale = p.abs_evaluate(x, d);
  return scale == 0.0 ? 0.0 : std::abs(p.evaluate(x, d)) / scale;
}

}  // namespace

double KSeries::max_residual() const {
  double worst = 0.0;
  for (int n = N + 1; n < n_stop; ++n) {
    const double lhs = (n + 1) * K(n + 1);
    const double rhs = multiplier(N, n, g, delta) * K(n) - 4 * g * g * K(n - 1);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(K(n))));
  }
  return worst;
}

KSeries k_series(int N, double g, double delta, int n_stop) {
  if (N < 1) throw std::invalid_argument("K series needs N >= 1");
  if (n_stop <= N + 1) throw std::invalid_argument("K series needs n_stop > N+1");
  KSeries s;
  s.N = N;
  s.g = g;
  s.delta = delta;
  s.n_stop = n_stop;
  s.coefficients.assign(static_cast<size_t>(n_stop - N + 1), 0.0);
  s.coefficients[1] = 1.0;
  for (int n = N + 1; n < n_stop; ++n) {
    const size_t i = static_cast<size_t>(n - N);
    s.coefficients[i + 1] =
        (multiplier(N, n, g, delta) * s.coefficients[i] - 4 * g * g * s.coefficients[i - 1]) / (n + 1);
  }
  return s;
}

nlohmann::json GValue::to_json() const {
  return {{"value", value}, {"n_stop", n_stop}, {"tail_bound", tail_bound}, {"converged", converged}};
}

GValue g_plus(int N, double g, double delta, double tol) {
  if (N < 1) throw std::invalid_argument("G-function needs N >= 1");
  if (delta == 0.0) throw std::invalid_argument("G-function needs Delta != 0");
  if (g < 0.0 || !std::isfinite(g)) throw std::invalid_argument("G-function needs finite g >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("G-function needs tol > 0");

  CompensatedSum sum(-2.0 * (N + 1) / delta);
  double k_prev = 0.0;
  double k = 1.0;
  double weight = 1.0;
  int small_run = 0;
  double last_term = 0.0;
  double scale = 0.0;
  for (int n = N + 1; n <= kMaxSeriesTerms; ++n) {
    last_term = k * (1.0 + delta / (n - N)) * weight;
    sum.add(last_term);
    // Relative to the largest term as well, so a sum cancelling to zero stops.
    scale = std::max(scale, std::abs(last_term));
    const double current = std::max(std::abs(sum.value()), scale);
    small_run = std::abs(last_term) < tol * current ? small_run + 1 : 0;
    if (small_run >= 3 && n >= N + 25) {
      GValue out;
      out.value = sum.value();
      out.n_stop = n;
      out.tail_bound = 10.0 * std::abs(last_term);
      out.converged = out.tail_bound < 1e-3 * current;
      return out;
    }
    const double k_next = (multiplier(N, n, g, delta) * k - 4 * g * g * k_prev) / (n + 1);
    k_prev = k;
    k = k_next;
    weight *= 0.5;
    if (!std::isfinite(k)) break;
  }
  throw ConvergenceError("G-function series did not converge by n = " + std::to_string(kMaxSeriesTerms) +
                         " (g = " + std::to_string(g) + ")");
}

GValue g_minus(int N, double g, double delta, double tol) { return g_plus(N, g, -delta, tol); }

std::string to_string(Parity p) { return p == Parity::plus ? "plus" : "minus"; }

nlohmann::json ExceptionalRoot::to_json(int N, double delta) const {
  return {{"N", N},
          {"delta", delta},
          {"g_root", g},
          {"lambda", lambda},
          {"parity", to_string(parity)},
          {"G_residual", residual},
          {"constraint_ratio", constraint_ratio}};
}

ExceptionalSearch find_exceptional(int N, double delta, double g_lo, double g_hi, double tol) {
  if (!(g_lo > 0.0) || !(g_hi > g_lo)) throw std::invalid_argument("g range must satisfy 0 < g_lo < g_hi");
  if (!(delta > 0.0)) throw std::invalid_argument("exceptional search needs Delta > 0");
  if (!(tol > 0.0)) throw std::invalid_argument("exceptional search needs tol > 0");

  ExceptionalSearch out;
  out.N = N;
  out.delta = delta;
  for (Parity parity : {Parity::plus, Parity::minus}) {
    const double signed_delta = parity == Parity::plus ? delta : -delta;
    auto G = [&](double g) { return g_plus(N, g, signed_delta).value; };
    std::vector<double> grid(kGridPoints);
    std::vector<double> values(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
      grid[static_cast<size_t>(i)] = g_lo + (g_hi - g_lo) * i / (kGridPoints - 1);
      values[static_cast<size_t>(i)] = G(grid[static_cast<size_t>(i)]);
    }
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
      double a = grid[i];
      double b = grid[i + 1];
      double fa = values[i];
      const double fb = values[i + 1];
      if (fa == 0.0 || std::signbit(fa) == std::signbit(fb)) continue;
      double mid = 0.5 * (a + b);
      double fm = G(mid);
      while (std::abs(fm) >= tol && b - a > 4 * std::numeric_limits<double>::epsilon() * b) {
        if (std::signbit(fm) == std::signbit(fa)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
        mid = 0.5 * (a + b);
        fm = G(mid);
      }
      // A sign change that never shrinks below tol is a pole, not a zero.
      if (std::abs(fm) >= tol) continue;
      ExceptionalRoot root;
      root.g = mid;
      root.lambda = N - mid * mid;
      root.parity = parity;
      root.residual = std::abs(fm);
      root.constraint_ratio = constraint_ratio(N, mid, delta);
      (root.constraint_ratio < kDegenerateRatio ? out.excluded : out.roots).push_back(root);
    }
  }
  auto by_g = [](const ExceptionalRoot& x, const ExceptionalRoot& y) {
    return x.g != y.g ? x.g < y.g : x.parity < y.parity;
  };
  std::sort(out.roots.begin(), out.roots.end(), by_g);
  std::sort(out.excluded.begin(), out.excluded.end(), by_g);
  return out;
}

}  // namespace aqrm::gfunction
