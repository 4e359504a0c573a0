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

#include "aqrm/aqrm.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "constraint.hpp"
#include "errors.hpp"
#include "exactpoly.hpp"
#include "gfunction.hpp"
#include "heun.hpp"
#include "json.hpp"
#include "sl2rep.hpp"
#include "spectrum.hpp"

struct aqrm_poly {
  aqrm::BivarPoly poly;
};

struct aqrm_crossings {
  int N = 0;
  int two_eps = 0;
  aqrm::Rational d_value;
  std::vector<aqrm::constraint::CrossingRecord> records;
};

struct aqrm_observation {
  aqrm::spectrum::CrossingObservation obs;
};

struct aqrm_report {
  nlohmann::json json;
  bool passed = false;
};

struct aqrm_gvalue {
  aqrm::gfunction::GValue value;
};

struct aqrm_exceptional {
  aqrm::gfunction::ExceptionalSearch search;
};

struct aqrm_sweep {
  aqrm::spectrum::SpectralSweep sweep;
};

namespace {

using namespace aqrm;

thread_local std::string g_last_error;

aqrm_status fail(aqrm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class Body>
aqrm_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const VerificationError& e) {
    return fail(AQRM_VERIFICATION_FAILED, e.what());
  } catch (const ConvergenceError& e) {
    return fail(AQRM_NOT_CONVERGED, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(AQRM_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(AQRM_DOMAIN_ERROR, e.what());
  } catch (const std::out_of_range& e) {
    return fail(AQRM_DOMAIN_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(AQRM_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(AQRM_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(AQRM_INTERNAL_ERROR, "unknown error");
  }
}

template <class T>
void require(const T* ptr, const char* name) {
  if (ptr == nullptr) throw std::invalid_argument(std::string(name) + " must not be NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Rational rational_arg(const char* text, const char* name) {
  require(text, name);
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(name) + ": " + e.what());
  }
}

constraint::Variant variant(int tilde) { return tilde ? constraint::Variant::tilde : constraint::Variant::plain; }

int resolve_nmax(int n_max) { return n_max > 0 ? n_max : spectrum::default_nmax(); }

std::vector<constraint::GridPoint> parse_grid(const char* grid) {
  std::vector<constraint::GridPoint> out;
  if (grid == nullptr || *grid == '\0') return out;
  std::stringstream ss(grid);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("grid entries must look like x:d, got '" + item + "'");
    out.push_back({rational_arg(item.substr(0, colon).c_str(), "grid x"),
                   rational_arg(item.substr(colon + 1).c_str(), "grid d")});
  }
  return out;
}

aqrm_status make_report(nlohmann::json json, bool passed, aqrm_report** out) {
  *out = new aqrm_report{std::move(json), passed};
  return AQRM_OK;
}

}  // namespace

extern "C" {

const char* aqrm_version(void) { return "0.1.0"; }

const char* aqrm_status_string(aqrm_status status) {
  switch (status) {
    case AQRM_OK: return "ok";
    case AQRM_INVALID_ARGUMENT: return "invalid argument";
    case AQRM_DOMAIN_ERROR: return "domain error";
    case AQRM_NOT_CONVERGED: return "not converged";
    case AQRM_VERIFICATION_FAILED: return "verification failed";
    case AQRM_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* aqrm_last_error(void) { return g_last_error.c_str(); }

void aqrm_string_free(char* s) { std::free(s); }

int aqrm_default_nmax(void) { return spectrum::default_nmax(); }

/* ---- polynomials ---- */

aqrm_status aqrm_poly_constraint(int N, int two_eps, int tilde, int k, int perturb_step, aqrm_poly** out) {
  return guarded([&] {
    require(out, "out");
    BivarPoly p = constraint::constraint_poly({N, two_eps, variant(tilde)}, k, {perturb_step});
    *out = new aqrm_poly{std::move(p)};
    return AQRM_OK;
  });
}

aqrm_status aqrm_poly_continuant(int N, int two_eps, int tilde, int k, aqrm_poly** out) {
  return guarded([&] {
    require(out, "out");
    *out = new aqrm_poly{constraint::continuant({N, two_eps, variant(tilde)}, k)};
    return AQRM_OK;
  });
}

aqrm_status aqrm_poly_parse(const char* text, aqrm_poly** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new aqrm_poly{BivarPoly::from_text(text)};
    return AQRM_OK;
  });
}

aqrm_status aqrm_poly_to_text(const aqrm_poly* p, char** out) {
  return guarded([&] {
    require(p, "poly");
    require(out, "out");
    *out = copy_string(p->poly.to_text());
    return AQRM_OK;
  });
}

aqrm_status aqrm_poly_to_json(const aqrm_poly* p, char** out) {
  return guarded([&] {
    require(p, "poly");
    require(out, "out");
    *out = copy_string(p->poly.to_json());
    return AQRM_OK;
  });
}

aqrm_status aqrm_poly_degree_x(const aqrm_poly* p, int* out) {
  return guarded([&] {
    require(p, "poly");
    require(out, "out");
    *out = p->poly.degree_x();
    return AQRM_OK;
  });
}

aqrm_status aqrm_poly_evaluate(const aqrm_poly* p, double x, double d, double* out) {
  return guarded([&] {
    require(p, "poly");
    require(out, "out");
    *out = p->poly.evaluate(x, d);
    return AQRM_OK;
  });
}

aqrm_status aqrm_poly_equal(const aqrm_poly* a, const aqrm_poly* b, int* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = a->poly == b->poly ? 1 : 0;
    return AQRM_OK;
  });
}

aqrm_status aqrm_poly_divide(const aqrm_poly* num, const aqrm_poly* den, char** json_out) {
  return guarded([&] {
    require(num, "num");
    require(den, "den");
    require(json_out, "json_out");
    XDivision div = poly_div_x(num->poly, den->poly);
    nlohmann::json j = {{"quotient", div.quotient.to_string()},
                        {"remainder", div.remainder.to_string()},
                        {"remainder_zero", div.remainder.is_zero()}};
    *json_out = copy_string(j.dump());
    return AQRM_OK;
  });
}

aqrm_status aqrm_poly_positive_roots(const aqrm_poly* p, const char* d_value, const char* precision,
                                     char** json_out) {
  return guarded([&] {
    require(p, "poly");
    require(json_out, "json_out");
    const Rational d = rational_arg(d_value, "d_value");
    const Rational prec = rational_arg(precision, "precision");
    if (prec <= 0) throw std::invalid_argument("precision must be positive");
    nlohmann::json arr = nlohmann::json::array();
    for (const RootInterval& r : isolate_positive_roots(p->poly.specialize(d), prec))
      arr.push_back({{"lo", to_string(r.lower)}, {"hi", to_string(r.upper)}});
    *json_out = copy_string(arr.dump());
    return AQRM_OK;
  });
}

void aqrm_poly_free(aqrm_poly* p) { delete p; }

/* ---- crossings ---- */

aqrm_status aqrm_crossings_find(int N, int two_eps, const char* d_value, const char* precision, int perturb_step,
                                aqrm_crossings** out) {
  return guarded([&] {
    require(out, "out");
    const Rational d = rational_arg(d_value, "d_value");
    const Rational prec = rational_arg(precision, "precision");
    if (prec <= 0) throw std::invalid_argument("precision must be positive");
    auto c = std::make_unique<aqrm_crossings>();
    c->N = N;
    c->two_eps = two_eps;
    c->d_value = d;
    c->records = constraint::find_crossings(N, two_eps, d, prec, {perturb_step});
    *out = c.release();
    return AQRM_OK;
  });
}

aqrm_status aqrm_crossings_count(const aqrm_crossings* c, size_t* out) {
  return guarded([&] {
    require(c, "crossings");
    require(out, "out");
    *out = c->records.size();
    return AQRM_OK;
  });
}

aqrm_status aqrm_crossings_get(const aqrm_crossings* c, size_t i, double* g, double* lambda) {
  return guarded([&] {
    require(c, "crossings");
    const auto& rec = c->records.at(i);
    if (g) *g = rec.g;
    if (lambda) *lambda = rec.lambda;
    return AQRM_OK;
  });
}

aqrm_status aqrm_crossings_to_json(const aqrm_crossings* c, char** out) {
  return guarded([&] {
    require(c, "crossings");
    require(out, "out");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rec : c->records) arr.push_back(rec.to_json());
    *out = copy_string(arr.dump());
    return AQRM_OK;
  });
}

aqrm_status aqrm_crossings_confirm(const aqrm_crossings* c, size_t i, int n_max, double tol,
                                   aqrm_observation** out) {
  return guarded([&] {
    require(c, "crossings");
    require(out, "out");
    const auto& rec = c->records.at(i);
    const spectrum::ModelParams p{rec.g, std::sqrt(rec.d_value.get_d()), rec.two_eps / 2.0};
    spectrum::CrossingObservation obs = spectrum::observe_degeneracy(p, rec.lambda, resolve_nmax(n_max));
    *out = new aqrm_observation{obs};
    if (obs.gap > tol || obs.target_distance > tol)
      return fail(AQRM_VERIFICATION_FAILED, "crossing not confirmed: " + obs.to_json().dump());
    return AQRM_OK;
  });
}

aqrm_status aqrm_crossings_perturbed(const aqrm_crossings* c, size_t i, double fraction, int n_max,
                                     aqrm_observation** out) {
  return guarded([&] {
    require(c, "crossings");
    require(out, "out");
    const auto& rec = c->records.at(i);
    const double g = rec.g * (1.0 + fraction);
    const double eps = rec.two_eps / 2.0;
    const spectrum::ModelParams p{g, std::sqrt(rec.d_value.get_d()), eps};
    *out = new aqrm_observation{spectrum::observe_degeneracy(p, rec.N - g * g + eps, resolve_nmax(n_max))};
    return AQRM_OK;
  });
}

aqrm_status aqrm_crossings_kernel(const aqrm_crossings* c, size_t i, double* buf, size_t cap, size_t* len,
                                  double* residual) {
  return guarded([&] {
    require(c, "crossings");
    const auto& rec = c->records.at(i);
    constraint::KernelVector kv =
        constraint::kernel_vector({c->N, c->two_eps, constraint::Variant::plain}, c->d_value, rec.x_mid);
    if (len) *len = kv.v.size();
    if (residual) *residual = kv.residual;
    if (buf)
      for (size_t k = 0; k < std::min(cap, kv.v.size()); ++k) buf[k] = kv.v[k];
    return AQRM_OK;
  });
}

void aqrm_crossings_free(aqrm_crossings* c) { delete c; }

aqrm_status aqrm_observe_degeneracy(double g, double delta, double eps, double target, int n_max,
                                    aqrm_observation** out) {
  return guarded([&] {
    require(out, "out");
    *out = new aqrm_observation{spectrum::observe_degeneracy({g, delta, eps}, target, resolve_nmax(n_max))};
    return AQRM_OK;
  });
}

aqrm_status aqrm_observation_gap(const aqrm_observation* o, double* gap) {
  return guarded([&] {
    require(o, "observation");
    require(gap, "gap");
    *gap = o->obs.gap;
    return AQRM_OK;
  });
}

aqrm_status aqrm_observation_lambda(const aqrm_observation* o, double* lambda) {
  return guarded([&] {
    require(o, "observation");
    require(lambda, "lambda");
    *lambda = o->obs.lambda_star;
    return AQRM_OK;
  });
}

aqrm_status aqrm_observation_to_json(const aqrm_observation* o, char** out) {
  return guarded([&] {
    require(o, "observation");
    require(out, "out");
    *out = copy_string(o->obs.to_json().dump());
    return AQRM_OK;
  });
}

void aqrm_observation_free(aqrm_observation* o) { delete o; }

/* ---- reports ---- */

aqrm_status aqrm_verify_identity(int N, int perturb_step, aqrm_report** out) {
  return guarded([&] {
    require(out, "out");
    constraint::IdentityReport r = constraint::verify_identity_half(N, {perturb_step});
    return make_report(r.to_json(), r.passed(), out);
  });
}

aqrm_status aqrm_verify_conjecture(int N, int ell, const char* grid, int perturb_step, aqrm_report** out) {
  return guarded([&] {
    require(out, "out");
    constraint::ConjectureReport r = constraint::verify_conjecture(N, ell, parse_grid(grid), {perturb_step});
    return make_report(r.to_json(), r.passed(), out);
  });
}

aqrm_status aqrm_rep_check(uint64_t seed, int samples, aqrm_report** out) {
  return guarded([&] {
    require(out, "out");
    if (samples < 1) throw std::invalid_argument("samples must be positive");
    CheckReport r = sl2::run_rep_suite(seed, samples);
    return make_report(r.to_json(), r.passed(), out);
  });
}

aqrm_status aqrm_heun_check(uint64_t seed, int samples, aqrm_report** out) {
  return guarded([&] {
    require(out, "out");
    if (samples < 1) throw std::invalid_argument("samples must be positive");
    CheckReport r = heun::run_heun_suite(seed, samples);
    return make_report(r.to_json(), r.passed(), out);
  });
}

aqrm_status aqrm_commutator_check(int j, const char* a, int n_min, int n_max, const char* lambda, const char* g2,
                                  const char* d, const char* eps, aqrm_report** out) {
  return guarded([&] {
    require(out, "out");
    sl2::RepParams p{j, rational_arg(a, "a"), n_min, n_max};
    EigenParams ep{rational_arg(lambda, "lambda"), rational_arg(g2, "g2"), rational_arg(d, "d"),
                   rational_arg(eps, "eps")};
    sl2::CommutatorResult r = sl2::commutator_check(p, ep);
    return make_report(r.to_json(), r.passed(), out);
  });
}

aqrm_status aqrm_heun_operator(int which, const char* lambda, const char* g2, const char* d, const char* eps,
                               aqrm_report** out) {
  return guarded([&] {
    require(out, "out");
    EigenParams ep{rational_arg(lambda, "lambda"), rational_arg(g2, "g2"), rational_arg(d, "d"),
                   rational_arg(eps, "eps")};
    heun::HeunOp direct = heun::heun_direct(which, ep);
    heun::HeunOp from_k = heun::heun_from_K(which, ep);
    heun::ActionDerivation action = heun::heun_from_action(which, ep);
    heun::Exponents stated = heun::exponents(which, ep.lambda, ep.g2, ep.eps);
    heun::Exponents indicial = heun::indicial_roots(direct);
    const bool agree = direct.same_coefficients(from_k) && action.consistent() &&
                       direct.same_coefficients(action.op) && stated.at0 == indicial.at0 &&
                       stated.at1 == indicial.at1;
    nlohmann::json j = {{"direct", direct.to_json()},
                        {"from_K", from_k.to_json()},
                        {"from_action", action.op.to_json()},
                        {"mu", to_string(mu(ep))},
                        {"exponents", stated.to_json()},
                        {"indicial_roots", indicial.to_json()},
                        {"passed", agree}};
    return make_report(std::move(j), agree, out);
  });
}

aqrm_status aqrm_report_passed(const aqrm_report* r, int* out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = r->passed ? 1 : 0;
    return AQRM_OK;
  });
}

aqrm_status aqrm_report_to_json(const aqrm_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = copy_string(r->json.dump());
    return AQRM_OK;
  });
}

void aqrm_report_free(aqrm_report* r) { delete r; }

/* ---- G-functions ---- */

aqrm_status aqrm_g_plus(int N, double g, double delta, double tol, aqrm_gvalue** out) {
  return guarded([&] {
    require(out, "out");
    *out = new aqrm_gvalue{gfunction::g_plus(N, g, delta, tol)};
    return AQRM_OK;
  });
}

aqrm_status aqrm_g_minus(int N, double g, double delta, double tol, aqrm_gvalue** out) {
  return guarded([&] {
    require(out, "out");
    *out = new aqrm_gvalue{gfunction::g_minus(N, g, delta, tol)};
    return AQRM_OK;
  });
}

aqrm_status aqrm_gvalue_value(const aqrm_gvalue* v, double* value) {
  return guarded([&] {
    require(v, "gvalue");
    require(value, "value");
    *value = v->value.value;
    return AQRM_OK;
  });
}

aqrm_status aqrm_gvalue_tail_bound(const aqrm_gvalue* v, double* bound) {
  return guarded([&] {
    require(v, "gvalue");
    require(bound, "bound");
    *bound = v->value.tail_bound;
    return AQRM_OK;
  });
}

aqrm_status aqrm_gvalue_n_stop(const aqrm_gvalue* v, int* n_stop) {
  return guarded([&] {
    require(v, "gvalue");
    require(n_stop, "n_stop");
    *n_stop = v->value.n_stop;
    return AQRM_OK;
  });
}

void aqrm_gvalue_free(aqrm_gvalue* v) { delete v; }

aqrm_status aqrm_k_series_residual(int N, double g, double delta, int n_stop, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gfunction::k_series(N, g, delta, n_stop).max_residual();
    return AQRM_OK;
  });
}

aqrm_status aqrm_exceptional_find(int N, double delta, double g_lo, double g_hi, double tol, aqrm_exceptional** out) {
  return guarded([&] {
    require(out, "out");
    *out = new aqrm_exceptional{gfunction::find_exceptional(N, delta, g_lo, g_hi, tol)};
    return AQRM_OK;
  });
}

aqrm_status aqrm_exceptional_count(const aqrm_exceptional* e, size_t* out) {
  return guarded([&] {
    require(e, "exceptional");
    require(out, "out");
    *out = e->search.roots.size();
    return AQRM_OK;
  });
}

aqrm_status aqrm_exceptional_get(const aqrm_exceptional* e, size_t i, double* g, double* lambda, int* parity,
                                 double* residual) {
  return guarded([&] {
    require(e, "exceptional");
    const auto& r = e->search.roots.at(i);
    if (g) *g = r.g;
    if (lambda) *lambda = r.lambda;
    if (parity) *parity = r.parity == gfunction::Parity::plus ? 1 : -1;
    if (residual) *residual = r.residual;
    return AQRM_OK;
  });
}

aqrm_status aqrm_exceptional_confirm(const aqrm_exceptional* e, int n_max, double dist_tol, double gap_floor,
                                     char** json_out) {
  return guarded([&] {
    require(e, "exceptional");
    require(json_out, "json_out");
    const auto& s = e->search;
    nlohmann::json arr = nlohmann::json::array();
    bool all = true;
    for (const auto& r : s.roots) {
      spectrum::NondegenerateObservation obs =
          spectrum::observe_isolated({r.g, s.delta, 0.0}, r.lambda, resolve_nmax(n_max));
      const bool ok = obs.distance < dist_tol && obs.neighbor_gap > gap_floor;
      all = all && ok;
      nlohmann::json item = r.to_json(s.N, s.delta);
      item["observation"] = obs.to_json();
      item["confirmed"] = ok;
      arr.push_back(std::move(item));
    }
    *json_out = copy_string(arr.dump());
    return all ? AQRM_OK : fail(AQRM_VERIFICATION_FAILED, "exceptional eigenvalue not confirmed");
  });
}

aqrm_status aqrm_exceptional_to_json(const aqrm_exceptional* e, char** out) {
  return guarded([&] {
    require(e, "exceptional");
    require(out, "out");
    const auto& s = e->search;
    nlohmann::json roots = nlohmann::json::array();
    nlohmann::json excluded = nlohmann::json::array();
    for (const auto& r : s.roots) roots.push_back(r.to_json(s.N, s.delta));
    for (const auto& r : s.excluded) excluded.push_back(r.to_json(s.N, s.delta));
    *out = copy_string(nlohmann::json{{"N", s.N}, {"delta", s.delta}, {"roots", roots}, {"excluded", excluded}}.dump());
    return AQRM_OK;
  });
}

aqrm_status aqrm_exceptional_to_csv(const aqrm_exceptional* e, char** out) {
  return guarded([&] {
    require(e, "exceptional");
    require(out, "out");
    const auto& s = e->search;
    std::string csv = "N,delta,g_root,lambda,parity,G_residual\n";
    char line[256];
    for (const auto& r : s.roots) {
      std::snprintf(line, sizeof line, "%d,%.15g,%.15g,%.15g,%s,%.3e\n", s.N, s.delta, r.g, r.lambda,
                    gfunction::to_string(r.parity).c_str(), r.residual);
      csv += line;
    }
    *out = copy_string(csv);
    return AQRM_OK;
  });
}

void aqrm_exceptional_free(aqrm_exceptional* e) { delete e; }

/* ---- spectrum ---- */

aqrm_status aqrm_eigenvalues(double g, double delta, double eps, int n_max, double* buf, size_t cap, size_t* count) {
  return guarded([&] {
    std::vector<double> ev = spectrum::eigenvalues({g, delta, eps}, resolve_nmax(n_max));
    if (count) *count = ev.size();
    if (buf)
      for (size_t i = 0; i < std::min(cap, ev.size()); ++i) buf[i] = ev[i];
    return AQRM_OK;
  });
}

aqrm_status aqrm_sweep_run(double delta, double eps, const double* g_grid, size_t n_points, int n_max, size_t count,
                           aqrm_sweep** out) {
  return guarded([&] {
    require(out, "out");
    if (n_points > 0) require(g_grid, "g_grid");
    std::vector<double> grid(g_grid, g_grid + n_points);
    *out = new aqrm_sweep{spectrum::sweep(delta, eps, grid, resolve_nmax(n_max), count)};
    return AQRM_OK;
  });
}

aqrm_status aqrm_sweep_to_csv(const aqrm_sweep* s, char** out) {
  return guarded([&] {
    require(s, "sweep");
    require(out, "out");
    *out = copy_string(s->sweep.to_csv());
    return AQRM_OK;
  });
}

aqrm_status aqrm_sweep_to_json(const aqrm_sweep* s, char** out) {
  return guarded([&] {
    require(s, "sweep");
    require(out, "out");
    *out = copy_string(s->sweep.to_json().dump());
    return AQRM_OK;
  });
}

aqrm_status aqrm_sweep_min_gaps(const aqrm_sweep* s, char** out) {
  return guarded([&] {
    require(s, "sweep");
    require(out, "out");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : spectrum::min_gap_scan(s->sweep))
      arr.push_back({{"pair", {r.index, r.index + 1}}, {"g", r.g_at_min}, {"min_gap", r.min_gap}});
    *out = copy_string(arr.dump());
    return AQRM_OK;
  });
}

void aqrm_sweep_free(aqrm_sweep* s) { delete s; }

}  // extern "C"
