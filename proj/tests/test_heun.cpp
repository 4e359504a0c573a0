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

#include <random>

#include "doctest.h"
#include "heun.hpp"
#include "sl2rep.hpp"

using namespace aqrm;
using namespace aqrm::heun;

namespace {

Rational R(long n, long d = 1) { return make_rational(n, d); }

EigenParams random_params(std::mt19937_64& rng) {
  return {sl2::random_rational(rng, 20, 7), sl2::random_rational(rng, 20, 7), sl2::random_rational(rng, 20, 7),
          sl2::random_rational(rng, 6, 4)};
}

}  // namespace

TEST_CASE("mu examples") {
  CHECK(mu(R(7, 4), R(1, 4), R(1, 2)) == R(3, 2));
  CHECK(mu(R(-1, 3), R(1, 3), R(5, 7)) == R(-5, 7));
  // lambda + g^2 = 4 g^2.
  CHECK(mu(R(3, 5), R(1, 5), R(2)) == R(-2));
}

TEST_CASE("exponent examples") {
  Exponents e1 = exponents(1, R(7, 4), R(1, 4), R(0));
  CHECK(e1.at0[0] == 0);
  CHECK(e1.at0[1] == 2);
  CHECK(e1.at1[1] == 3);
  CHECK(e1.integral);
  Exponents e2 = exponents(2, R(7, 4), R(1, 4), R(0));
  CHECK(e2.at0[1] == 3);
  CHECK(e2.at1[1] == 2);
  Exponents e3 = exponents(1, R(5, 4), R(1, 4), R(1, 2));
  CHECK(e3.at0[1] == 1);
  CHECK(e3.at1[1] == 3);
  CHECK(e3.classification == "half-integer");
  CHECK_FALSE(exponents(1, R(1, 3), R(0), R(0)).integral);
  CHECK_THROWS(exponents(3, R(1), R(1), R(0)));
}

TEST_CASE("direct operator coefficients") {
  const EigenParams p{R(7, 4), R(1, 4), R(1, 2), R(1, 3)};
  const Rational s = R(2), e = R(1, 3), g2 = R(1, 4);
  HeunOp h1 = heun_direct(1, p);
  CHECK(h1.kappa == -1);
  CHECK(h1.A == 1 - s + e);
  CHECK(h1.B == 1 - (s + 1) - e);
  CHECK(h1.C == 4 * g2 * (s - e));
  CHECK(h1.D == mu(p) + 4 * e * g2 - e * e);
  HeunOp h2 = heun_direct(2, p);
  CHECK(h2.A == -s - e);
  CHECK(h2.B == 1 - s + e);
  CHECK(h2.C == 4 * g2 * (s - 1 + e));
  CHECK(h2.D == mu(p) - 4 * e * g2 - e * e);
}

TEST_CASE("operators from K match the direct construction") {
  const EigenParams ex{R(7, 4), R(1, 4), R(1, 2), R(0)};
  CHECK(heun_from_K(1, ex).same_coefficients(heun_direct(1, ex)));
  CHECK(heun_from_K(2, ex).same_coefficients(heun_direct(2, ex)));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const EigenParams p = random_params(rng);
    for (int which : {1, 2}) {
      CHECK(heun_from_K(which, p).same_coefficients(heun_direct(which, p)));
      ActionDerivation act = heun_from_action(which, p);
      CHECK(act.consistent());
      CHECK(act.op.same_coefficients(heun_direct(which, p)));
    }
  }
}

TEST_CASE("K-lemma closed form as an independent route") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const EigenParams p = random_params(rng);
    for (int which : {1, 2}) {
      const sl2::KParams kp = which == 1 ? sl2::k_params(p) : sl2::k_tilde_params(p);
      const Rational a = which == 1 ? sl2::k_index(p) : sl2::k_tilde_index(p);
      HeunOp h = heun_direct(which, p);
      CHECK(h.kappa == -kp.beta);
      CHECK(h.A == a / 2 + kp.alpha);
      CHECK(h.B == a / 2 + 2 * kp.gamma - kp.alpha);
      CHECK(h.C == -a * kp.beta);
      CHECK(h.D == kp.C);
    }
  }
}

TEST_CASE("indicial roots agree with the stated exponents") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const EigenParams p = random_params(rng);
    for (int which : {1, 2}) {
      HeunOp h = heun_direct(which, p);
      Exponents stated = exponents(which, p.lambda, p.g2, p.eps);
      Exponents found = indicial_roots(h);
      // rho (rho - 1) + rho A = 0 at x = 0, and likewise with B at x = 1.
      CHECK(found.at0[1] * (found.at0[1] - 1) + found.at0[1] * h.A == 0);
      CHECK(found.at1[1] * (found.at1[1] - 1) + found.at1[1] * h.B == 0);
      CHECK(found.at0 == stated.at0);
      CHECK(found.at1 == stated.at1);
    }
  }
}

TEST_CASE("accessory parameter enters only through D") {
  const EigenParams p{R(2, 3), R(1, 5), R(3, 7), R(1, 2)};
  EigenParams shifted = p;
  shifted.d -= 1;  // mu -> mu + 1
  for (int which : {1, 2}) {
    HeunOp a = heun_direct(which, p), b = heun_direct(which, shifted);
    CHECK(b.D - a.D == 1);
    CHECK(a.A == b.A);
    CHECK(a.B == b.B);
    CHECK(a.C == b.C);
  }
}

TEST_CASE("first-order Bargmann system") {
  BargmannResidual zero = bargmann_system_residual(R(1), R(1, 2), R(1, 3), R(1, 5), UniPoly(), UniPoly());
  CHECK(zero.plus.is_zero());
  CHECK(zero.minus.is_zero());

  for (int n = 0; n <= 5; ++n) {
    BargmannResidual osc =
        bargmann_system_residual(R(n), R(0), R(0), R(0), UniPoly::monomial(1, n), UniPoly());
    CHECK(osc.plus.is_zero());
    CHECK(osc.minus.is_zero());
  }

  // Truncated exp(-g z) at Delta = eps = 0, lambda = -g^2. The residual is
  // (z + g)(f' + g f) = (z + g) g^9 z^8 / 8!.
  const Rational g = R(1, 2);
  std::vector<Rational> c;
  Rational term = 1;
  for (int k = 0; k <= 8; ++k) {
    c.push_back(term);
    term *= -g / (k + 1);
  }
  BargmannResidual tail = bargmann_system_residual(-g * g, g, R(0), R(0), UniPoly(c), UniPoly());
  Rational g9 = 1;
  for (int k = 0; k < 9; ++k) g9 *= g;
  const Rational lead = g9 / 40320;
  CHECK(tail.plus == UniPoly::monomial(lead, 9) + UniPoly::monomial(lead * g, 8));
  CHECK(tail.minus.is_zero());
}

TEST_CASE("suite") {
  CHECK(run_heun_suite(5, 100).passed());
}
