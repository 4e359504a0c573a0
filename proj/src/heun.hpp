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

#ifndef AQRM_HEUN_HPP_
#define AQRM_HEUN_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "exactpoly.hpp"
#include "json.hpp"
#include "model.hpp"
#include "report.hpp"

// Confluent Heun operators
//   d^2/dx^2 + {kappa + A/x + B/(x-1)} d/dx + (C x + D)/(x(x-1))
// stored by their rational parameters.
namespace aqrm::heun {

using aqrm::mu;

struct HeunOp {
  int which = 1;
  EigenParams params;
  Rational kappa;  // first-order constant, -4 g^2
  Rational A;
  Rational B;
  Rational C;
  Rational D;

  bool same_coefficients(const HeunOp& o) const {
    return kappa == o.kappa && A == o.A && B == o.B && C == o.C && D == o.D;
  }
  nlohmann::json to_json() const;
};

/// The operator as displayed for the two gauges e^{+gz} (which = 1) and
/// e^{-gz} (which = 2). Throws std::invalid_argument for other `which`.
HeunOp heun_direct(int which, const EigenParams& p);

/// The same operator obtained from x^{-(a-1/2)/2} (varpi_a(K) - Lambda_a) x^{(a-1/2)/2}
/// divided by x(x-1), using the closed form of that conjugation.
HeunOp heun_from_K(int which, const EigenParams& p);

struct ActionDerivation {
  HeunOp op;
  /// Largest coefficient mismatch over the extra monomials used as a check.
  Rational max_residual;
  bool consistent() const { return max_residual == 0; }
};

/// Applies K to monomials x^q with the differential realisation of the
/// generators (H = 2x d + 1/2, E = x^2 d + (a+1/2)x/2, F = -d + (a-1/2)/(2x)),
/// reads the Heun parameters off x^0 and x^1, and checks x^2 .. x^5.
ActionDerivation heun_from_action(int which, const EigenParams& p);

struct Exponents {
  std::array<Rational, 2> at0;
  std::array<Rational, 2> at1;
  /// All four exponents are integers.
  bool integral = false;
  /// "integer" (lambda+g^2, eps in Z), "half-integer" (both in Z+1/2) or "none".
  std::string classification;
  nlohmann::json to_json() const;
};

/// Exponents at x = 0 and x = 1 as stated in closed form.
Exponents exponents(int which, const Rational& lambda, const Rational& g2, const Rational& eps);

/// Roots {0, 1-A} and {0, 1-B} of the indicial equations rho(rho-1) + rho A = 0
/// and rho(rho-1) + rho B = 0.
Exponents indicial_roots(const HeunOp& op);

struct BargmannResidual {
  UniPoly plus;
  UniPoly minus;
};

/// Residuals of
///   (z+g) f+' + (g z + eps - lambda) f+ + Delta f- ,
///   (z-g) f-' - (g z + eps + lambda) f- + Delta f+ .
BargmannResidual bargmann_system_residual(const Rational& lambda, const Rational& g, const Rational& delta,
                                          const Rational& eps, const UniPoly& f_plus, const UniPoly& f_minus);

/// Direct vs K-lemma vs monomial action, exponents against indicial roots,
/// and the accessory role of mu, at `samples` random rational tuples per case.
CheckReport run_heun_suite(std::uint64_t seed, int samples);

}  // namespace aqrm::heun

#endif  // AQRM_HEUN_HPP_
