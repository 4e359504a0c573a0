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

#include <aqrm/aqrm.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  aqrm_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("metadata") {
  CHECK(std::string(aqrm_version()).size() > 0);
  CHECK(std::string(aqrm_status_string(AQRM_OK)) != std::string(aqrm_status_string(AQRM_DOMAIN_ERROR)));
  CHECK(aqrm_default_nmax() >= 1);
  aqrm_string_free(nullptr);
  aqrm_poly_free(nullptr);
  aqrm_report_free(nullptr);
}

TEST_CASE("polynomials") {
  aqrm_poly* p = nullptr;
  REQUIRE(aqrm_poly_constraint(2, 1, 0, 2, -1, &p) == AQRM_OK);
  char* text = nullptr;
  REQUIRE(aqrm_poly_to_text(p, &text) == AQRM_OK);
  CHECK(take(text) == "2*x^2*d^0 + 3*x^1*d^1 - 12*x^1*d^0 + 1*x^0*d^2 - 8*x^0*d^1 + 12*x^0*d^0");
  int deg = -1;
  CHECK(aqrm_poly_degree_x(p, &deg) == AQRM_OK);
  CHECK(deg == 2);
  double v = 0;
  CHECK(aqrm_poly_evaluate(p, 1.0, 1.0, &v) == AQRM_OK);
  CHECK(v == doctest::Approx(2 + 3 + 1 - 12 - 8 + 12));

  aqrm_poly* q = nullptr;
  REQUIRE(aqrm_poly_parse("2*x^2 + 3*x*d + d^2 - 12*x - 8*d + 12", &q) == AQRM_OK);
  int eq = 0;
  CHECK(aqrm_poly_equal(p, q, &eq) == AQRM_OK);
  CHECK(eq == 1);

  char* js = nullptr;
  CHECK(aqrm_poly_to_json(p, &js) == AQRM_OK);
  CHECK(json::parse(take(js))["terms"].size() == 6);

  char* roots = nullptr;
  aqrm_poly* p22 = nullptr;
  REQUIRE(aqrm_poly_constraint(2, 0, 0, 2, -1, &p22) == AQRM_OK);
  CHECK(aqrm_poly_positive_roots(p22, "1/4", "1/1000000", &roots) == AQRM_OK);
  CHECK(json::parse(take(roots)).size() == 2);

  // Corollary at N = 1: P~(2, 1/2) = (2x + d) P(1, 1/2).
  aqrm_poly *num = nullptr, *den = nullptr;
  REQUIRE(aqrm_poly_constraint(2, 1, 1, 2, -1, &num) == AQRM_OK);
  REQUIRE(aqrm_poly_constraint(1, 1, 0, 1, -1, &den) == AQRM_OK);
  char* div = nullptr;
  REQUIRE(aqrm_poly_divide(num, den, &div) == AQRM_OK);
  json dj = json::parse(take(div));
  CHECK(dj["remainder_zero"] == true);

  aqrm_poly* c = nullptr;
  REQUIRE(aqrm_poly_continuant(2, 0, 0, 0, &c) == AQRM_OK);
  char* ct = nullptr;
  aqrm_poly_to_text(c, &ct);
  CHECK(take(ct) == "-1*x^0*d^1");

  for (aqrm_poly* h : {p, q, p22, num, den, c}) aqrm_poly_free(h);
}

TEST_CASE("errors map to status codes") {
  aqrm_poly* p = nullptr;
  CHECK(aqrm_poly_constraint(0, 0, 0, 0, -1, &p) == AQRM_INVALID_ARGUMENT);
  CHECK(std::string(aqrm_last_error()).size() > 0);
  CHECK(p == nullptr);
  CHECK(aqrm_poly_constraint(2, 0, 0, 3, -1, &p) == AQRM_INVALID_ARGUMENT);
  CHECK(aqrm_poly_constraint(2, 0, 0, 2, -1, nullptr) == AQRM_INVALID_ARGUMENT);
  CHECK(aqrm_poly_parse("2*y", &p) == AQRM_INVALID_ARGUMENT);
  aqrm_crossings* cr = nullptr;
  CHECK(aqrm_crossings_find(1, 0, "0", "1/1000", -1, &cr) != AQRM_OK);
  CHECK(aqrm_crossings_find(1, 0, "x", "1/1000", -1, &cr) == AQRM_INVALID_ARGUMENT);
  aqrm_gvalue* g = nullptr;
  CHECK(aqrm_g_plus(1, 40.0, 1.0, 1e-15, &g) == AQRM_NOT_CONVERGED);
  REQUIRE(aqrm_g_plus(1, 0.5, 1.0, 1e-15, &g) == AQRM_OK);
  CHECK(std::string(aqrm_last_error()).empty());
  aqrm_gvalue_free(g);
}

TEST_CASE("crossings and observations") {
  aqrm_crossings* c = nullptr;
  REQUIRE(aqrm_crossings_find(1, 0, "1/2", "1/1000000000000", -1, &c) == AQRM_OK);
  size_t n = 0;
  CHECK(aqrm_crossings_count(c, &n) == AQRM_OK);
  REQUIRE(n == 1);
  double g = 0, lambda = 0;
  CHECK(aqrm_crossings_get(c, 0, &g, &lambda) == AQRM_OK);
  CHECK(lambda == doctest::Approx(0.875));

  aqrm_observation* o = nullptr;
  CHECK(aqrm_crossings_confirm(c, 0, 60, 1e-7, &o) == AQRM_OK);
  double gap = 1;
  aqrm_observation_gap(o, &gap);
  CHECK(gap < 1e-7);
  aqrm_observation_free(o);

  aqrm_observation* off = nullptr;
  CHECK(aqrm_crossings_perturbed(c, 0, 0.05, 60, &off) == AQRM_OK);
  aqrm_observation_gap(off, &gap);
  CHECK(gap > 1e-3);
  aqrm_observation_free(off);

  std::vector<double> v(4);
  size_t len = 0;
  double residual = 1;
  CHECK(aqrm_crossings_kernel(c, 0, v.data(), v.size(), &len, &residual) == AQRM_OK);
  CHECK(len == 2);
  CHECK(residual < 1e-10);

  CHECK(aqrm_crossings_get(c, 5, &g, &lambda) != AQRM_OK);
  char* js = nullptr;
  CHECK(aqrm_crossings_to_json(c, &js) == AQRM_OK);
  CHECK(json::parse(take(js))[0]["d"] == "1/2");
  aqrm_crossings_free(c);
}

TEST_CASE("fault injection surfaces as verification failure") {
  aqrm_crossings* c = nullptr;
  REQUIRE(aqrm_crossings_find(2, 1, "1/4", "1/1000000000000", 2, &c) == AQRM_OK);
  aqrm_observation* o = nullptr;
  CHECK(aqrm_crossings_confirm(c, 0, 60, 1e-7, &o) == AQRM_VERIFICATION_FAILED);
  CHECK(o != nullptr);
  aqrm_observation_free(o);
  aqrm_crossings_free(c);

  aqrm_report* r = nullptr;
  REQUIRE(aqrm_verify_identity(5, 3, &r) == AQRM_OK);
  int passed = 1;
  aqrm_report_passed(r, &passed);
  CHECK(passed == 0);
  aqrm_report_free(r);
}

TEST_CASE("reports") {
  aqrm_report* r = nullptr;
  int passed = 0;
  REQUIRE(aqrm_verify_identity(6, -1, &r) == AQRM_OK);
  aqrm_report_passed(r, &passed);
  CHECK(passed == 1);
  aqrm_report_free(r);

  REQUIRE(aqrm_verify_conjecture(3, 2, "1:1,4:1/4", -1, &r) == AQRM_OK);
  aqrm_report_passed(r, &passed);
  CHECK(passed == 1);
  aqrm_report_free(r);
  CHECK(aqrm_verify_conjecture(3, 2, "1:", -1, &r) == AQRM_INVALID_ARGUMENT);

  REQUIRE(aqrm_commutator_check(1, "1/3", -6, 6, "3/7", "2/5", "1/3", "0", &r) == AQRM_OK);
  aqrm_report_passed(r, &passed);
  CHECK(passed == 1);
  aqrm_report_free(r);

  REQUIRE(aqrm_heun_operator(1, "7/4", "1/4", "1/2", "0", &r) == AQRM_OK);
  char* js = nullptr;
  aqrm_report_to_json(r, &js);
  json j = json::parse(take(js));
  CHECK(j["direct"]["A"] == "-1");
  aqrm_report_free(r);

  REQUIRE(aqrm_rep_check(3, 2, &r) == AQRM_OK);
  aqrm_report_passed(r, &passed);
  CHECK(passed == 1);
  aqrm_report_free(r);

  REQUIRE(aqrm_heun_check(3, 10, &r) == AQRM_OK);
  aqrm_report_passed(r, &passed);
  CHECK(passed == 1);
  aqrm_report_free(r);
}

TEST_CASE("G-functions") {
  aqrm_gvalue *p = nullptr, *m = nullptr;
  REQUIRE(aqrm_g_plus(1, 0.3, 0.4, 1e-15, &p) == AQRM_OK);
  REQUIRE(aqrm_g_minus(1, 0.3, -0.4, 1e-15, &m) == AQRM_OK);
  double vp = 0, vm = 1, tail = 1;
  int stop = 0;
  aqrm_gvalue_value(p, &vp);
  aqrm_gvalue_value(m, &vm);
  aqrm_gvalue_tail_bound(p, &tail);
  aqrm_gvalue_n_stop(p, &stop);
  CHECK(vp == vm);
  CHECK(tail < 1e-6);
  CHECK(stop >= 26);
  aqrm_gvalue_free(p);
  aqrm_gvalue_free(m);

  double res = 1;
  CHECK(aqrm_k_series_residual(1, 0.8, 2.0, 200, &res) == AQRM_OK);
  CHECK(res <= 1e-12);

  aqrm_exceptional* e = nullptr;
  REQUIRE(aqrm_exceptional_find(1, 1.5, 0.01, 1.5, 1e-10, &e) == AQRM_OK);
  size_t n = 0;
  aqrm_exceptional_count(e, &n);
  REQUIRE(n == 1);
  double g = 0, lambda = 0, residual = 1;
  int parity = 0;
  aqrm_exceptional_get(e, 0, &g, &lambda, &parity, &residual);
  CHECK(g == doctest::Approx(0.80297525).epsilon(1e-7));
  CHECK(parity == 1);
  char* js = nullptr;
  CHECK(aqrm_exceptional_confirm(e, 60, 1e-6, 1e-4, &js) == AQRM_OK);
  take(js);
  char* csv = nullptr;
  aqrm_exceptional_to_csv(e, &csv);
  CHECK(take(csv).rfind("N,delta,g_root,lambda,parity,G_residual\n", 0) == 0);
  aqrm_exceptional_free(e);
}

TEST_CASE("spectrum") {
  std::vector<double> buf(8);
  size_t count = 0;
  REQUIRE(aqrm_eigenvalues(0.0, 0.5, 0.0, 10, buf.data(), buf.size(), &count) == AQRM_OK);
  CHECK(count == 22);
  CHECK(buf[0] == doctest::Approx(-0.5));
  CHECK(buf[1] == doctest::Approx(0.5));

  const double grid[] = {0.0, 0.1, 0.2};
  aqrm_sweep* s = nullptr;
  REQUIRE(aqrm_sweep_run(0.5, 0.0, grid, 3, 30, 4, &s) == AQRM_OK);
  char* csv = nullptr;
  aqrm_sweep_to_csv(s, &csv);
  const std::string text = take(csv);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 * 4);
  char* gaps = nullptr;
  aqrm_sweep_min_gaps(s, &gaps);
  CHECK(json::parse(take(gaps)).size() == 3);
  aqrm_sweep_free(s);

  aqrm_observation* o = nullptr;
  REQUIRE(aqrm_observe_degeneracy(std::sqrt(0.5) / 2, std::sqrt(0.5), 0.0, 0.875, 0, &o) == AQRM_OK);
  double lam = 0;
  aqrm_observation_lambda(o, &lam);
  CHECK(lam == doctest::Approx(0.875).epsilon(1e-9));
  aqrm_observation_free(o);
}
