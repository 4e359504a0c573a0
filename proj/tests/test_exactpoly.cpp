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

#include <map>
#include <random>

#include "doctest.h"
#include "exactpoly.hpp"

using namespace aqrm;

namespace {

using Terms = std::map<std::pair<int, int>, long>;

BivarPoly from_terms(const Terms& t) {
  BivarPoly p;
  for (const auto& [e, c] : t) p += BivarPoly::term(c, e.first, e.second);
  return p;
}

// Schoolbook product on plain term maps, kept independent of BivarPoly.
Terms naive_product(const Terms& a, const Terms& b) {
  Terms out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  return out;
}

Terms random_terms(std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg), coef(-5, 5), count(0, 5);
  Terms t;
  for (int n = count(rng); n > 0; --n) t[{deg(rng), deg(rng)}] += coef(rng);
  return t;
}

UniPoly uni(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  for (long v : ascending) c.emplace_back(v);
  return UniPoly(c);
}

}  // namespace

TEST_CASE("arithmetic examples") {
  const BivarPoly x = BivarPoly::x(), d = BivarPoly::d();
  CHECK((x + d) + (x - d) == BivarPoly::term(2, 1, 0));
  CHECK(((x + d) * BivarPoly()).is_zero());
  const BivarPoly lhs = (2 * x + d - BivarPoly::constant(2)) * (x + d) - 2 * x;
  const BivarPoly want = BivarPoly::from_text("2*x^2 + 3*x*d + d^2 - 4*x - 2*d");
  CHECK(lhs == want);
  CHECK(poly_arith(x, d, PolyOp::mul) == BivarPoly::term(1, 1, 1));
  CHECK(poly_arith(x, x, PolyOp::sub).is_zero());
}

TEST_CASE("multiplication agrees with a schoolbook oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Terms a = random_terms(rng, 4), b = random_terms(rng, 4);
    CHECK(from_terms(a) * from_terms(b) == from_terms(naive_product(a, b)));
  }
}

TEST_CASE("ring axioms on random instances") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    BivarPoly a = from_terms(random_terms(rng, 3)), b = from_terms(random_terms(rng, 3)),
              c = from_terms(random_terms(rng, 3));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("canonical text and json round trip") {
  const BivarPoly p = BivarPoly::from_text("2*x^2 + 3*x*d + d^2 - 12*x - 8*d + 12");
  CHECK(p.to_text() == "2*x^2*d^0 + 3*x^1*d^1 - 12*x^1*d^0 + 1*x^0*d^2 - 8*x^0*d^1 + 12*x^0*d^0");
  CHECK(BivarPoly::from_text(p.to_text()) == p);
  CHECK(BivarPoly::from_json(p.to_json()) == p);
  CHECK(BivarPoly().to_text() == "0");
  CHECK_THROWS(BivarPoly::from_text("2*y"));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/2") == make_rational(1, 2));
  CHECK(parse_rational("-6/4") == make_rational(-3, 2));
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational("1e-3") == make_rational(1, 1000));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(to_string(make_rational(6, 4)) == "3/2");
}

TEST_CASE("specialize examples") {
  const BivarPoly p = BivarPoly::x() + BivarPoly::d() - BivarPoly::constant(1);
  CHECK(p.specialize(make_rational(1, 2)) == UniPoly(std::vector<Rational>{make_rational(-1, 2), Rational(1)}));
  CHECK(BivarPoly::term(1, 0, 2).specialize(2) == UniPoly::constant(4));
  CHECK(p.evaluate(Rational(3), Rational(5)) == 7);
  CHECK(p.evaluate(3.0, 5.0) == doctest::Approx(7.0));
}

TEST_CASE("division in x examples") {
  const BivarPoly x = BivarPoly::x(), d = BivarPoly::d(), two = BivarPoly::constant(2);
  XDivision q = poly_div_x((2 * x + d) * (x + d - two), x + d - two);
  CHECK(q.remainder.is_zero());
  REQUIRE(q.quotient.to_integral());
  CHECK(*q.quotient.to_integral() == 2 * x + d);

  XDivision r = poly_div_x(x * x, x + BivarPoly::constant(1));
  CHECK(*r.quotient.to_integral() == x - BivarPoly::constant(1));
  CHECK(*r.remainder.to_integral() == BivarPoly::constant(1));

  CHECK_THROWS(poly_div_x(x, BivarPoly()));
}

TEST_CASE("division reconstruction on random dividing and non-dividing pairs") {
  std::mt19937_64 rng(13);
  int dividing = 0;
  for (int trial = 0; trial < 80; ++trial) {
    BivarPoly den = from_terms(random_terms(rng, 3));
    if (den.degree_x() < 0 || den.x_coefficient(den.degree_x()).is_zero()) continue;
    BivarPoly num = from_terms(random_terms(rng, 4));
    if (trial % 2 == 0) {
      num = num * den;
      ++dividing;
    }
    XDivision q = poly_div_x(num, den);
    CHECK(q.quotient * XPoly::from(den) + q.remainder == XPoly::from(num));
    CHECK(q.remainder.degree() < den.degree_x());
    if (trial % 2 == 0) CHECK(q.remainder.is_zero());
  }
  CHECK(dividing > 20);
}

TEST_CASE("root isolation examples") {
  const Rational prec = make_rational(1, 1000000);
  auto lin = isolate_positive_roots(UniPoly(std::vector<Rational>{make_rational(-1, 2), Rational(1)}), prec);
  REQUIRE(lin.size() == 1);
  CHECK(lin[0].lower <= make_rational(1, 2));
  CHECK(lin[0].upper >= make_rational(1, 2));

  CHECK(isolate_positive_roots(uni({1, 0, 1}), prec).empty());
  CHECK_THROWS(isolate_positive_roots(UniPoly(), prec));

  // (x - 1)(x - 2)(x + 3): two positive roots, one negative.
  auto three = isolate_positive_roots(uni({6, -7, 0, 1}), prec);
  REQUIRE(three.size() == 2);
  CHECK(three[0].upper <= three[1].lower);
}

TEST_CASE("root isolation properties on random polynomials") {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<long> coef(-9, 9);
  const Rational prec = make_rational(1, 1 << 20);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> c;
    for (int i = 0; i < 6; ++i) c.emplace_back(coef(rng));
    UniPoly p(c);
    if (p.is_zero()) continue;
    auto roots = isolate_positive_roots(p, prec);
    const UniPoly sf = squarefree_part(p);
    auto chain = sturm_sequence(sf);
    const int positive = sign_variations(chain, 0) - sign_variations_at_infinity(chain);
    CHECK(static_cast<int>(roots.size()) == positive);
    for (size_t i = 0; i < roots.size(); ++i) {
      CHECK(roots[i].lower >= 0);
      CHECK(roots[i].width() <= prec);
      CHECK(p.sign_at(roots[i].lower) * p.sign_at(roots[i].upper) <= 0);
      if (i > 0) CHECK(roots[i - 1].upper <= roots[i].lower);
    }
  }
}

TEST_CASE("univariate helpers") {
  const UniPoly p = uni({-1, 0, 1});  // x^2 - 1
  CHECK(p.derivative() == uni({0, 2}));
  CHECK(p(Rational(3)) == 8);
  UniDivision qr = divmod(p, uni({-1, 1}));
  CHECK(qr.quotient == uni({1, 1}));
  CHECK(qr.remainder.is_zero());
  CHECK(gcd(p, uni({1, 1})).degree() == 1);
  CHECK(squarefree_part(p * p).degree() == 2);
}
