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

#ifndef AQRM_MODEL_HPP_
#define AQRM_MODEL_HPP_

#include "exactpoly.hpp"

namespace aqrm {

/// Exact eigenvalue-problem parameters shared by the algebraic and
/// differential pictures. g2 = g^2, d = Delta^2.
struct EigenParams {
  Rational lambda;
  Rational g2;
  Rational d;
  Rational eps;

  /// lambda + g^2
  Rational shifted() const { return lambda + g2; }
};

/// mu = (lambda+g^2)^2 - 4 g^2 (lambda+g^2) - Delta^2
inline Rational mu(const Rational& lambda, const Rational& g2, const Rational& d) {
  Rational s = lambda + g2;
  return s * s - 4 * g2 * s - d;
}

inline Rational mu(const EigenParams& p) { return mu(p.lambda, p.g2, p.d); }

}  // namespace aqrm

#endif  // AQRM_MODEL_HPP_
