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

#include "heun.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "sl2rep.hpp"

namespace aqrm::heun {

namespace {

const Rational kHalf(1, 2);

void check_which(int which) {
  if (which != 1 && which != 2) throw std::invalid_argument("Heun operator index must be 1 or 2");
}

bool is_integer(const Rational& v) { return v.get_den() == 1; }

Rational abs_value(const Rational& v) { return v < 0 ? Rational(-v) : v; }

// Functions of x as finite sums of powers with rational exponents.
using Series = std::map<Rational, Rational>;

void add_to(Series& out, const Rational& power, const Rational& c) {
  if (c == 0) return;
  Rational& slot = out[power];
  slot += c;
  if (slot == 0) out.erase(power);
}

struct Realisation {
  Rational a;

  Series H(const Series& f) const {
    Series out;
    for (const auto& [q, c] : f) add_to(out, q, c * (2 * q + kHalf));
    return out;
  }
  Series E(const Series& f) const {
    Series out;
    for (const auto& [q, c] : f) add_to(out, q + 1, c * (q + (a + kHalf) / 2));
    return out;
  }
  Series F(const Series& f) const {
    Series out;
    for (const auto& [q, c] : f) add_to(out, q - 1, c * (-q + (a - kHalf) / 2));
    return out;
  }
};

Series combine(const Series& f, const Rational& s, const Series& g) {
  Series out = f;
  for (const auto& [q, c] : g) add_to(out, q, s * c);
  return out;
}

Series scale(const Series& f, const Rational& s) { return combine(Series{}, s, f); }

// (varpi_a(K) - Lambda) applied to f.
Series apply_K(const Realisation& rep, const sl2::KParams& kp, const Rational& lambda_shift, const Series& f) {
  Series right = combine(rep.F(f), kp.beta, f);
  Series left = combine(combine(scale(rep.H(right), kHalf), -1, rep.E(right)), kp.alpha, right);
  Series gamma_term = combine(rep.H(f), -kHalf, f);
  Series out = combine(left, kp.gamma, gamma_term);
  return combine(out, kp.C - lambda_shift, f);
}

Rational coeff(const Series& f, const Rational& power) {
  auto it = f.find(power);
  return it == f.end() ? Rational(0) : it->second;
}

}  // namespace

nlohmann::json HeunOp::to_json() const {
  return {{"which", which},
          {"lambda", to_string(params.lambda)},
          {"g2", to_string(params.g2)},
          {"d", to_string(params.d)},
          {"eps", to_string(params.eps)},
          {"A", to_string(A)},
          {"B", to_string(B)},
          {"C", to_string(C)},
          {"D", to_string(D)}};
}

HeunOp heun_direct(int which, const EigenParams& p) {
  check_which(which);
  const Rational s = p.shifted();
  const Rational& e = p.eps;
  HeunOp op;
  op.which = which;
  op.params = p;
  op.kappa = -4 * p.g2;
  const Rational plus_side = 1 - s + e;   // 1 - (lambda+g^2) + eps
  const Rational minus_side = -s - e;     // 1 - (lambda+g^2+1) - eps
  if (which == 1) {
    op.A = plus_side;
    op.B = minus_side;
    op.C = 4 * p.g2 * (s - e);
    op.D = mu(p) + 4 * e * p.g2 - e * e;
  } else {
    op.A = minus_side;
    op.B = plus_side;
    op.C = 4 * p.g2 * (s - 1 + e);
    op.D = mu(p) - 4 * e * p.g2 - e * e;
  }
  return op;
}

HeunOp heun_from_K(int which, const EigenParams& p) {
  check_which(which);
  const sl2::KParams kp = which == 1 ? sl2::k_params(p) : sl2::k_tilde_params(p);
  const Rational a = which == 1 ? sl2::k_index(p) : sl2::k_tilde_index(p);
  HeunOp op;
  op.which = which;
  op.params = p;
  op.kappa = -kp.beta;
  op.A = a / 2 + kp.alpha;
  op.B = a / 2 + 2 * kp.gamma - kp.alpha;
  op.C = -a * kp.beta;
  // (lambda_a + C_K) - Lambda_a
  op.D = kp.lambda_a(a) + kp.C - kp.lambda_a(a);
  return op;
}

ActionDerivation heun_from_action(int which, const EigenParams& p) {
  check_which(which);
  const sl2::KParams kp = which == 1 ? sl2::k_params(p) : sl2::k_tilde_params(p);
  const Realisation rep{which == 1 ? sl2::k_index(p) : sl2::k_tilde_index(p)};
  const Rational shift = (rep.a - kHalf) / 2;
  const Rational lambda = kp.lambda_a(rep.a);

  // x(x-1) h x^q has coefficients
  //   x^{q+1}: kappa q + C,  x^q: q(q-1) - kappa q + (A+B) q + D,  x^{q-1}: -q(q-1) - A q.
  auto image = [&](int q) {
    Series f{{Rational(q) + shift, Rational(1)}};
    Series out;
    for (const auto& [power, c] : apply_K(rep, kp, lambda, f)) add_to(out, power - shift, c);
    return out;
  };

  ActionDerivation result;
  HeunOp& op = result.op;
  op.which = which;
  op.params = p;
  const Series at0 = image(0);
  const Series at1 = image(1);
  op.C = coeff(at0, 1);
  op.D = coeff(at0, 0);
  op.kappa = coeff(at1, 2) - op.C;
  op.A = -coeff(at1, 0);
  op.B = coeff(at1, 1) + op.kappa - op.A - op.D;

  result.max_residual = 0;
  for (int q = 2; q <= 5; ++q) {
    Series expected;
    add_to(expected, q + 1, op.kappa * q + op.C);
    add_to(expected, q, Rational(q * (q - 1)) - op.kappa * q + (op.A + op.B) * q + op.D);
    add_to(expected, q - 1, Rational(-q * (q - 1)) - op.A * q);
    Series diff = combine(image(q), -1, expected);
    for (const auto& [power, c] : diff) result.max_residual = std::max(result.max_residual, abs_value(c));
  }
  return result;
}

nlohmann::json Exponents::to_json() const {
  return {{"at0", {to_string(at0[0]), to_string(at0[1])}},
          {"at1", {to_string(at1[0]), to_string(at1[1])}},
          {"integral", integral},
          {"classification", classification}};
}

namespace {

void classify(Exponents& ex) {
  ex.integral = is_integer(ex.at0[1]) && is_integer(ex.at1[1]);
}

}  // namespace

Exponents exponents(int which, const Rational& lambda, const Rational& g2, const Rational& eps) {
  check_which(which);
  const Rational s = lambda + g2;
  const Rational low = s - eps;
  const Rational high = s + 1 + eps;
  Exponents ex;
  ex.at0 = {Rational(0), which == 1 ? low : high};
  ex.at1 = {Rational(0), which == 1 ? high : low};
  classify(ex);
  if (is_integer(s) && is_integer(eps))
    ex.classification = "integer";
  else if (is_integer(s + kHalf) && is_integer(eps + kHalf))
    ex.classification = "half-integer";
  else
    ex.classification = "none";
  return ex;
}

Exponents indicial_roots(const HeunOp& op) {
  Exponents ex;
  ex.at0 = {Rational(0), 1 - op.A};
  ex.at1 = {Rational(0), 1 - op.B};
  classify(ex);
  ex.classification = ex.integral ? "integral" : "none";
  return ex;
}

BargmannResidual bargmann_system_residual(const Rational& lambda, const Rational& g, const Rational& delta,
                                          const Rational& eps, const UniPoly& f_plus, const UniPoly& f_minus) {
  const UniPoly z = UniPoly::monomial(1, 1);
  const UniPoly gz = UniPoly::monomial(g, 1);
  BargmannResidual out;
  out.plus = (z + UniPoly::constant(g)) * f_plus.derivative() + (gz + UniPoly::constant(eps - lambda)) * f_plus +
             delta * f_minus;
  out.minus = (z - UniPoly::constant(g)) * f_minus.derivative() - (gz + UniPoly::constant(eps + lambda)) * f_minus +
              delta * f_plus;
  return out;
}

CheckReport run_heun_suite(std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  CheckReport suite("heun_suite");
  int direct_vs_K = 0;
  int direct_vs_action = 0;
  int exponent_mismatch = 0;
  int accessory_failures = 0;
  nlohmann::json first_failure = nullptr;

  for (int i = 0; i < samples; ++i) {
    EigenParams p{sl2::random_rational(rng, 30, 7), sl2::random_rational(rng, 12, 5),
                  sl2::random_rational(rng, 12, 5), make_rational(static_cast<long>(rng() % 9) - 4, 2)};
    if (i % 2 == 1) p.eps = sl2::random_rational(rng, 6, 5);
    for (int which : {1, 2}) {
      const HeunOp direct = heun_direct(which, p);
      const HeunOp from_k = heun_from_K(which, p);
      const ActionDerivation action = heun_from_action(which, p);
      bool ok = true;
      if (!direct.same_coefficients(from_k)) ++direct_vs_K, ok = false;
      if (!action.consistent() || !direct.same_coefficients(action.op)) ++direct_vs_action, ok = false;

      const Exponents stated = exponents(which, p.lambda, p.g2, p.eps);
      const Exponents indicial = indicial_roots(direct);
      if (stated.at0 != indicial.at0 || stated.at1 != indicial.at1) ++exponent_mismatch, ok = false;

      // d -> d - 1 is mu -> mu + 1.
      EigenParams shifted = p;
      shifted.d -= 1;
      const HeunOp moved = heun_direct(which, shifted);
      if (moved.D - direct.D != 1 || moved.A != direct.A || moved.B != direct.B || moved.C != direct.C ||
          moved.kappa != direct.kappa)
        ++accessory_failures, ok = false;

      if (!ok && first_failure.is_null()) first_failure = {{"direct", direct.to_json()}, {"from_K", from_k.to_json()}};
    }
  }
  const nlohmann::json tuples = {{"tuples", samples}, {"cases", 2}};
  suite.add("direct == from_K", direct_vs_K == 0, {{"failures", direct_vs_K}, {"sampled", tuples}});
  suite.add("direct == monomial action", direct_vs_action == 0, {{"failures", direct_vs_action}});
  suite.add("indicial roots == exponents", exponent_mismatch == 0, {{"failures", exponent_mismatch}});
  suite.add("mu enters only through D", accessory_failures == 0, {{"failures", accessory_failures}});
  if (!first_failure.is_null()) suite.add("first failure", false, first_failure);
  return suite;
}

}  // namespace aqrm::heun
