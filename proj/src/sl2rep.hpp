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

#ifndef AQRM_SL2REP_HPP_
#define AQRM_SL2REP_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "constraint.hpp"
#include "exactpoly.hpp"
#include "json.hpp"
#include "model.hpp"
#include "report.hpp"

// Principal series representations of sl2 on finite weight windows.
//
// Basis vectors e_{j,n} are indexed by n in [n_min, n_max]. A matrix column
// is the input index and a row the output index, so E fills the first
// subdiagonal and F the first superdiagonal. Truncation is tracked by a
// margin: rows closer than `margin` to either window edge may differ from the
// infinite-dimensional operator, and identities are compared on the
// remaining interior rows only.
namespace aqrm::sl2 {

enum class Generator { H, E, F };

struct RepParams {
  int j = 1;  // 1 spherical, 2 non-spherical
  Rational a;
  int n_min = 0;
  int n_max = 0;

  int size() const { return n_max - n_min + 1; }
  int index(int n) const { return n - n_min; }
};

/// Throws std::invalid_argument on j not in {1,2} or an empty window.
void validate(const RepParams& p);

struct RepOperator {
  RepParams params;
  RationalMatrix matrix;
  int margin = 0;
  int bandwidth = 0;

  /// Weight range of rows that are exact.
  int interior_min() const { return params.n_min + margin; }
  int interior_max() const { return params.n_max - margin; }
  int interior_width() const { return interior_max() - interior_min() + 1; }

  const Rational& at(int n_out, int n_in) const;

  RepOperator& operator+=(const RepOperator& rhs);
  RepOperator& operator-=(const RepOperator& rhs);
  /// Adds c times the identity.
  RepOperator& operator+=(const Rational& c);
  RepOperator& operator*=(const Rational& c);

  friend RepOperator operator+(RepOperator a, const RepOperator& b) { return a += b; }
  friend RepOperator operator-(RepOperator a, const RepOperator& b) { return a -= b; }
  friend RepOperator operator+(RepOperator a, const Rational& c) { return a += c; }
  friend RepOperator operator-(RepOperator a, const Rational& c) { return a += Rational(-c); }
  friend RepOperator operator*(RepOperator a, const Rational& c) { return a *= c; }
  friend RepOperator operator*(const Rational& c, RepOperator a) { return a *= c; }
  friend RepOperator operator*(const RepOperator& a, const RepOperator& b);

  nlohmann::json to_json() const;
};

/// Largest |lhs - rhs| over rows common to both interiors; all columns.
Rational interior_discrepancy(const RepOperator& lhs, const RepOperator& rhs);

RepOperator rep_generator(const RepParams& params, Generator gen);
RepOperator identity(const RepParams& params);

/// Omega = H^2 + 2EF + 2FE.
RepOperator casimir(const RepParams& params);

struct KParams {
  Rational alpha;
  Rational beta;
  Rational gamma;
  Rational C;

  /// beta (a/2 + alpha) + gamma (a - 1/2)
  Rational lambda_a(const Rational& a) const { return beta * (a / 2 + alpha) + gamma * (a - Rational(1, 2)); }
};

/// [H/2 - E + alpha](F + beta) + gamma [H - 1/2] + C. Throws
/// std::invalid_argument if the window leaves fewer than 3 interior rows.
RepOperator assemble_K(const RepParams& params, const KParams& kp);

/// Parameters of K (first case) and of K-tilde (second case).
KParams k_params(const EigenParams& p);
KParams k_tilde_params(const EigenParams& p);
/// a = -(lambda + g^2 - eps) and a = -(lambda + g^2 - 1 + eps).
Rational k_index(const EigenParams& p);
Rational k_tilde_index(const EigenParams& p);

struct CommutatorResult {
  Rational max_discrepancy;
  int interior_rows = 0;
  bool passed() const { return max_discrepancy == 0; }
  nlohmann::json to_json() const;
};

/// [K, K~] against
///   (eps+3/2)(H+F)(F+4g^2) + (eps-1/2)(8g^2 E + HF) - 2(eps+1/2)(lambda+g^2-1/2) F
/// under the representation `params`. Throws std::invalid_argument when the
/// comparison would have fewer than 5 interior rows.
CommutatorResult commutator_check(const RepParams& params, const EigenParams& ep);

/// [H,E] = 2E, [H,F] = -2F, [E,F] = H on interior rows.
CheckReport commutation_check(const RepParams& params);

/// Omega = a(a-2) on interior rows.
CheckReport casimir_check(const RepParams& params);

/// Finite block closure, highest/lowest weight annihilation at the
/// discrete-series boundaries, and the n^2-1 Casimir value on the finite
/// block. m >= 1.
CheckReport invariant_subspace_check(int j, int m);

/// Diagonal intertwiner A with c_0 = 1 between a and 2-a (j = 1) checked for
/// H, E and F. Throws std::invalid_argument when a is an even integer.
CheckReport intertwiner_check(const Rational& a, int n_min, int n_max);

/// Block of varpi(K) - Lambda_a (plain) or varpi(K~) - Lambda~_a (tilde)
/// on the finite module carrying the eigenvector at lambda + g^2 = N +/- eps,
/// ordered from the top weight down so that it lines up with
/// constraint::tridiag_matrix(fam, N).
struct FamilyBlock {
  RepParams params;
  int n_top = 0;
  RationalMatrix block;
};
FamilyBlock family_block(const constraint::ConstraintFamily& fam, const Rational& g2, const Rational& d);

/// Exact comparison of family_block with the tridiagonal constraint matrix.
/// The entries of both are affine in (x, d), so agreement on an affinely
/// independent sample set is agreement as polynomials; extra samples are
/// also checked.
CheckReport family_match(const constraint::ConstraintFamily& fam);

/// At a common positive root x of P^(2m,1/2)_{2m} and P~^(2m+1,1/2)_{2m+1},
/// smallest singular value of the 2 x (2m+1) matrix of unit kernel vectors.
double degenerate_pair_sigma_min(int m, const Rational& d, double x);

/// Random exact parameters from a seeded generator.
Rational random_rational(std::mt19937_64& rng, int num_range, int den_max);

/// Full algebra suite: commutation relations and Casimir on random windows,
/// invariant subspaces, intertwiners, family blocks for N <= n_family and the
/// commutator lemma at `samples` random tuples.
CheckReport run_rep_suite(std::uint64_t seed, int samples, int n_family = 8);

}  // namespace aqrm::sl2

#endif  // AQRM_SL2REP_HPP_
