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

/* C interface to the asymmetric quantum Rabi model toolkit.
 *
 * Every function returns an aqrm_status. On failure a message is available
 * from aqrm_last_error() on the calling thread. Objects are opaque handles
 * released with their matching *_free function; strings returned through
 * char** out-parameters are released with aqrm_string_free. Exact inputs
 * (Delta^2, precisions, rational parameters) are passed as "p/q" or decimal
 * strings. */

#ifndef AQRM_AQRM_H_
#define AQRM_AQRM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(AQRM_BUILDING_LIBRARY)
#define AQRM_API __attribute__((visibility("default")))
#else
#define AQRM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aqrm_status {
  AQRM_OK = 0,
  AQRM_INVALID_ARGUMENT = 1,
  AQRM_DOMAIN_ERROR = 2,
  AQRM_NOT_CONVERGED = 3,
  AQRM_VERIFICATION_FAILED = 4,
  AQRM_INTERNAL_ERROR = 5
} aqrm_status;

AQRM_API const char* aqrm_version(void);
AQRM_API const char* aqrm_status_string(aqrm_status status);
/* Message of the last failing call on this thread; "" after success. */
AQRM_API const char* aqrm_last_error(void);
AQRM_API void aqrm_string_free(char* s);

/* Fock cutoff used when a caller passes n_max <= 0 (AQRM_NMAX or 60). */
AQRM_API int aqrm_default_nmax(void);

/* ---- Polynomials in x = 4g^2 and d = Delta^2 ------------------------- */

typedef struct aqrm_poly aqrm_poly;

/* P^(N,eps)_k (tilde = 0) or P~^(N,eps)_k (tilde != 0), eps = two_eps/2.
 * perturb_step >= 1 adds 1 to the constant of that recurrence step; pass -1
 * for the genuine polynomial. */
AQRM_API aqrm_status aqrm_poly_constraint(int N, int two_eps, int tilde, int k, int perturb_step, aqrm_poly** out);
/* Determinant of the leading (k+1)x(k+1) tridiagonal block. */
AQRM_API aqrm_status aqrm_poly_continuant(int N, int two_eps, int tilde, int k, aqrm_poly** out);
/* Canonical text "c*x^i*d^j + ..." as produced by aqrm_poly_to_text. */
AQRM_API aqrm_status aqrm_poly_parse(const char* text, aqrm_poly** out);
AQRM_API aqrm_status aqrm_poly_to_text(const aqrm_poly* p, char** out);
AQRM_API aqrm_status aqrm_poly_to_json(const aqrm_poly* p, char** out);
AQRM_API aqrm_status aqrm_poly_degree_x(const aqrm_poly* p, int* out);
AQRM_API aqrm_status aqrm_poly_evaluate(const aqrm_poly* p, double x, double d, double* out);
/* Exact comparison; *out = 1 when equal. */
AQRM_API aqrm_status aqrm_poly_equal(const aqrm_poly* a, const aqrm_poly* b, int* out);
/* Division in x over Q(d): {"quotient": "...", "remainder": "...", "remainder_zero": bool}. */
AQRM_API aqrm_status aqrm_poly_divide(const aqrm_poly* num, const aqrm_poly* den, char** json_out);
/* Isolating intervals of the positive roots of p(x, d_value), each of width
 * at most `precision`: [{"lo":"p/q","hi":"p/q"},...]. */
AQRM_API aqrm_status aqrm_poly_positive_roots(const aqrm_poly* p, const char* d_value, const char* precision,
                                              char** json_out);
AQRM_API void aqrm_poly_free(aqrm_poly* p);

/* ---- Level crossings from constraint roots --------------------------- */

typedef struct aqrm_crossings aqrm_crossings;
typedef struct aqrm_observation aqrm_observation;

AQRM_API aqrm_status aqrm_crossings_find(int N, int two_eps, const char* d_value, const char* precision,
                                         int perturb_step, aqrm_crossings** out);
AQRM_API aqrm_status aqrm_crossings_count(const aqrm_crossings* c, size_t* out);
AQRM_API aqrm_status aqrm_crossings_get(const aqrm_crossings* c, size_t i, double* g, double* lambda);
AQRM_API aqrm_status aqrm_crossings_to_json(const aqrm_crossings* c, char** out);
/* Diagonalises at crossing i. Returns AQRM_VERIFICATION_FAILED when the
 * pair is not within tol of each other and of the predicted eigenvalue; the
 * observation is still produced in that case. */
AQRM_API aqrm_status aqrm_crossings_confirm(const aqrm_crossings* c, size_t i, int n_max, double tol,
                                            aqrm_observation** out);
/* Observation at g scaled by (1 + fraction), targeting N - g'^2 + eps there. */
AQRM_API aqrm_status aqrm_crossings_perturbed(const aqrm_crossings* c, size_t i, double fraction, int n_max,
                                              aqrm_observation** out);
/* Kernel vector of the specialized tridiagonal matrix at crossing i
 * (plain family). Writes up to `cap` entries and the full length. */
AQRM_API aqrm_status aqrm_crossings_kernel(const aqrm_crossings* c, size_t i, double* buf, size_t cap, size_t* len,
                                           double* residual);
AQRM_API void aqrm_crossings_free(aqrm_crossings* c);

/* The two eigenvalues nearest `target` for the given model parameters. */
AQRM_API aqrm_status aqrm_observe_degeneracy(double g, double delta, double eps, double target, int n_max,
                                             aqrm_observation** out);
AQRM_API aqrm_status aqrm_observation_gap(const aqrm_observation* o, double* gap);
AQRM_API aqrm_status aqrm_observation_lambda(const aqrm_observation* o, double* lambda);
AQRM_API aqrm_status aqrm_observation_to_json(const aqrm_observation* o, char** out);
AQRM_API void aqrm_observation_free(aqrm_observation* o);

/* ---- Verification reports -------------------------------------------- */

typedef struct aqrm_report aqrm_report;

AQRM_API aqrm_status aqrm_verify_identity(int N, int perturb_step, aqrm_report** out);
/* grid: "x:d,x:d,..." of rationals, or NULL for the default grid only. */
AQRM_API aqrm_status aqrm_verify_conjecture(int N, int ell, const char* grid, int perturb_step, aqrm_report** out);
AQRM_API aqrm_status aqrm_rep_check(uint64_t seed, int samples, aqrm_report** out);
AQRM_API aqrm_status aqrm_heun_check(uint64_t seed, int samples, aqrm_report** out);
/* Single commutator evaluation under varpi_{j,a} on [n_min, n_max]. */
AQRM_API aqrm_status aqrm_commutator_check(int j, const char* a, int n_min, int n_max, const char* lambda,
                                           const char* g2, const char* d, const char* eps, aqrm_report** out);
/* Heun operators (direct and from K) and exponents at exact parameters. */
AQRM_API aqrm_status aqrm_heun_operator(int which, const char* lambda, const char* g2, const char* d,
                                        const char* eps, aqrm_report** out);
AQRM_API aqrm_status aqrm_report_passed(const aqrm_report* r, int* out);
AQRM_API aqrm_status aqrm_report_to_json(const aqrm_report* r, char** out);
AQRM_API void aqrm_report_free(aqrm_report* r);

/* ---- G-functions (eps = 0) ------------------------------------------- */

typedef struct aqrm_gvalue aqrm_gvalue;
typedef struct aqrm_exceptional aqrm_exceptional;

AQRM_API aqrm_status aqrm_g_plus(int N, double g, double delta, double tol, aqrm_gvalue** out);
AQRM_API aqrm_status aqrm_g_minus(int N, double g, double delta, double tol, aqrm_gvalue** out);
AQRM_API aqrm_status aqrm_gvalue_value(const aqrm_gvalue* v, double* value);
AQRM_API aqrm_status aqrm_gvalue_tail_bound(const aqrm_gvalue* v, double* bound);
AQRM_API aqrm_status aqrm_gvalue_n_stop(const aqrm_gvalue* v, int* n_stop);
AQRM_API void aqrm_gvalue_free(aqrm_gvalue* v);

/* Largest normalised recurrence residual of K_N .. K_{n_stop}. */
AQRM_API aqrm_status aqrm_k_series_residual(int N, double g, double delta, int n_stop, double* out);

AQRM_API aqrm_status aqrm_exceptional_find(int N, double delta, double g_lo, double g_hi, double tol,
                                           aqrm_exceptional** out);
AQRM_API aqrm_status aqrm_exceptional_count(const aqrm_exceptional* e, size_t* out);
/* parity: +1 for G_+, -1 for G_-. */
AQRM_API aqrm_status aqrm_exceptional_get(const aqrm_exceptional* e, size_t i, double* g, double* lambda, int* parity,
                                          double* residual);
/* Checks every root against the truncated spectrum: an eigenvalue within
 * dist_tol of N - g^2 whose neighbours are farther than gap_floor. */
AQRM_API aqrm_status aqrm_exceptional_confirm(const aqrm_exceptional* e, int n_max, double dist_tol, double gap_floor,
                                              char** json_out);
AQRM_API aqrm_status aqrm_exceptional_to_json(const aqrm_exceptional* e, char** out);
/* N,delta,g_root,lambda,parity,G_residual */
AQRM_API aqrm_status aqrm_exceptional_to_csv(const aqrm_exceptional* e, char** out);
AQRM_API void aqrm_exceptional_free(aqrm_exceptional* e);

/* ---- Truncated spectrum ---------------------------------------------- */

typedef struct aqrm_sweep aqrm_sweep;

/* Ascending eigenvalues (2(n_max+1) of them); writes up to cap. */
AQRM_API aqrm_status aqrm_eigenvalues(double g, double delta, double eps, int n_max, double* buf, size_t cap,
                                      size_t* count);
AQRM_API aqrm_status aqrm_sweep_run(double delta, double eps, const double* g_grid, size_t n_points, int n_max,
                                    size_t count, aqrm_sweep** out);
/* g,index,eigenvalue,converged */
AQRM_API aqrm_status aqrm_sweep_to_csv(const aqrm_sweep* s, char** out);
AQRM_API aqrm_status aqrm_sweep_to_json(const aqrm_sweep* s, char** out);
/* [{"pair":[i,i+1],"g":..,"min_gap":..},...] */
AQRM_API aqrm_status aqrm_sweep_min_gaps(const aqrm_sweep* s, char** out);
AQRM_API void aqrm_sweep_free(aqrm_sweep* s);

#ifdef __cplusplus
}
#endif

#endif /* AQRM_AQRM_H_ */
