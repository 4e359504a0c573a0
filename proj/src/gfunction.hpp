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

#ifndef AQRM_GFUNCTION_HPP_
#define AQRM_GFUNCTION_HPP_

#include <string>
#include <vector>

#include "json.hpp"

// Exceptional G-functions of the symmetric model (eps = 0).
//
// K_N = 0, K_{N+1} = 1 and
//   (n+1) K_{n+1} = (4g^2 + n - N + Delta^2/(N-n)) K_n - 4g^2 K_{n-1}.
// The Frobenius solution phi_1 is evaluated at x = 1/2 (z = 0):
//   G_+(g, Delta) = -2(N+1)/Delta + sum_{n>N} K_n (1 + Delta/(n-N)) 2^{-(n-N-1)},
// and G_-(g, Delta) = G_+(g, -Delta).
namespace aqrm::gfunction {

struct KSeries {
  int N = 1;
  double g = 0.0;
  double delta = 0.0;
  int n_stop = 0;
  /// coefficients[i] = K_{N+i}, i = 0 .. n_stop-N.
  std::vector<double> coefficients;

  double K(int n) const { return coefficients.at(static_cast<size_t>(n - N)); }
  /// max over n of |(n+1)K_{n+1} - (4g^2+n-N+Delta^2/(N-n))K_n + 4g^2 K_{n-1}| / max(1, |K_n|).
  double max_residual() const;
};

/// Throws std::invalid_argument unless N >= 1 and n_stop > N+1.
KSeries k_series(int N, double g, double delta, int n_stop);

struct GValue {
  double value = 0.0;
  int n_stop = 0;
  double tail_bound = 0.0;
  bool converged = false;
  nlohmann::json to_json() const;
};

inline constexpr int kMaxSeriesTerms = 5000;

/// Sums until three consecutive terms are each below tol * |partial sum| and
/// n >= N+25. Throws ConvergenceError past n = 5000, std::invalid_argument on
/// Delta = 0, g < 0 or tol <= 0.
GValue g_plus(int N, double g, double delta, double tol = 1e-15);
GValue g_minus(int N, double g, double delta, double tol = 1e-15);

enum class Parity { plus, minus };
std::string to_string(Parity p);

struct ExceptionalRoot {
  double g = 0.0;
  double lambda = 0.0;  // N - g^2
  Parity parity = Parity::plus;
  double residual = 0.0;  // |G| at g
  /// |P^(N,0)_N(4g^2, Delta^2)| relative to its coefficient scale.
  double constraint_ratio = 0.0;
  nlohmann::json to_json(int N, double delta) const;
};

struct ExceptionalSearch {
  int N = 1;
  double delta = 0.0;
  std::vector<ExceptionalRoot> roots;     // sorted by g
  std::vector<ExceptionalRoot> excluded;  // degenerate-suspect
};

inline constexpr int kGridPoints = 200;
inline constexpr double kDegenerateRatio = 1e-8;

/// Zeros of G_+ and G_- on [g_lo, g_hi]: sign changes on a 200-point grid,
/// then bisection until |G| < tol. Throws std::invalid_argument unless
/// 0 < g_lo < g_hi and Delta > 0.
ExceptionalSearch find_exceptional(int N, double delta, double g_lo, double g_hi, double tol = 1e-10);

}  // namespace aqrm::gfunction

#endif  // AQRM_GFUNCTION_HPP_
