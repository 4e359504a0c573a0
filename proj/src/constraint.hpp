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

#ifndef AQRM_CONSTRAINT_HPP_
#define AQRM_CONSTRAINT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "exactpoly.hpp"
#include "json.hpp"

// Constraint polynomials P^(N,eps)_k and their tilde partners, the
// tridiagonal matrices whose continuants they are, and the exact identity
// checks built on them. Variables: x = 4 g^2, d = Delta^2. The bias eps is
// always carried as the integer two_eps = 2 eps.
namespace aqrm::constraint {

enum class Variant { plain, tilde };

struct ConstraintFamily {
  int N = 1;
  int two_eps = 0;
  Variant variant = Variant::plain;
};

/// Failure-injection hook for exercising verification paths: adds 1 to the
/// constant term of the step-`step` multiplier of the plain recurrence.
/// step < 0 disables it.
struct FaultInjection {
  int step = -1;
};

/// Throws std::invalid_argument unless N >= 1.
void validate(const ConstraintFamily& fam);

/// P_0 .. P_N (or the tilde sequence) via
///   P_k = [k x + d - k^2 -/+ k two_eps] P_{k-1} - k(k-1)(N-k+1) x P_{k-2},
/// minus sign for plain, plus for tilde.
std::vector<BivarPoly> constraint_sequence(const ConstraintFamily& fam, const FaultInjection& fault = {});
BivarPoly constraint_poly(const ConstraintFamily& fam, int k, const FaultInjection& fault = {});

/// Leading block of the tridiagonal matrix, indexed by recurrence step.
/// Row r holds sub[r] at column r-1, diag[r] at r and super[r] at r+1;
/// sub[0] and super[size-1] are unused and zero.
struct TridiagSpec {
  std::vector<BivarPoly> diag;
  std::vector<BivarPoly> sub;
  std::vector<BivarPoly> super;

  int size() const { return static_cast<int>(diag.size()); }
  BivarPoly entry(int row, int col) const;
  RationalMatrix specialize(const Rational& x, const Rational& d) const;
  /// Row-major dense double matrix.
  std::vector<double> specialize(double x, double d) const;
};

TridiagSpec tridiag_matrix(const ConstraintFamily& fam, int k);

/// Determinant of tridiag_matrix(fam, k) by the three-term continuant
/// recurrence; equals (-1)^k (-d) P_k.
BivarPoly continuant(const ConstraintFamily& fam, int k);

struct CrossingRecord {
  int N = 0;
  int two_eps = 0;
  Rational d_value;
  RootInterval root;
  double x_mid = 0.0;
  /// g = sqrt(x) / 2 at the interval midpoint.
  double g = 0.0;
  /// lambda = N - g^2 + eps (omega = 1).
  double lambda = 0.0;
  /// Pair of finite-dimensional sl2 modules carrying the two eigenvectors;
  /// empty for eps < 0.
  std::vector<std::string> modules;

  std::string lambda_description() const;
  nlohmann::json to_json() const;
};

/// {"F_{N+1}", "F_{N+2 eps}"} for eps >= 0, empty otherwise.
std::vector<std::string> module_pair(int N, int two_eps);

/// Positive roots of P^(N,eps)_N(x, d_value), one record per root.
/// Throws std::invalid_argument for d_value <= 0.
std::vector<CrossingRecord> find_crossings(int N, int two_eps, const Rational& d_value, const Rational& precision,
                                           const FaultInjection& fault = {});

enum class KernelSeed { top, bottom };

struct KernelVector {
  std::vector<double> v;  // unit length, largest-magnitude entry positive
  double residual = 0.0;  // ||M v||
  double matrix_norm = 0.0;  // Frobenius norm of M
};

/// Kernel of the specialized (N+1)x(N+1) matrix by running the three-term
/// recurrence from one end; the remaining row gives the residual.
KernelVector kernel_by_recurrence(const ConstraintFamily& fam, const Rational& d_value, double x_value,
                                  KernelSeed seed);

/// Kernel vector seeded where the rank argument guarantees a nonzero entry:
/// the top for the plain family, the bottom (transpose argument) for tilde.
/// Throws VerificationError when residual > 1e-6 * ||M||.
KernelVector kernel_vector(const ConstraintFamily& fam, const Rational& d_value, double x_value);

inline constexpr double kKernelRejectRatio = 1e-6;

struct IdentityReport {
  int N = 0;
  std::vector<int> failing_k;
  bool passed() const { return failing_k.empty(); }
  nlohmann::json to_json() const;
};

/// Checks P~^(N+1,1/2)_{k+1} = [(k+1)x + d] P^(N,1/2)_k - k(k+1)(N-k) x P^(N,1/2)_{k-1}
/// exactly for every k in 0..N (P_{-1} = 0). N >= 0.
IdentityReport verify_identity_half(int N, const FaultInjection& fault = {});

struct GridPoint {
  Rational x;
  Rational d;
};

/// {1/10, 1, 10, 100} x {1/4, 1, 4}.
std::vector<GridPoint> default_conjecture_grid();

struct ConjectureReport {
  int N = 0;
  int ell = 0;
  XDivision division;
  bool remainder_zero = false;
  bool integral_quotient = false;
  bool positive_on_grid = false;
  std::optional<BivarPoly> quotient;
  std::vector<GridPoint> grid;
  std::vector<GridPoint> nonpositive_samples;

  bool passed() const { return remainder_zero && integral_quotient && positive_on_grid; }
  nlohmann::json to_json() const;
};

/// Divides P~^(N+ell, ell/2)_{N+ell} by P^(N, ell/2)_N over Q(d) and checks
/// the quotient on `extra_grid` plus the default grid. A nonzero remainder is
/// reported, not thrown.
ConjectureReport verify_conjecture(int N, int ell, const std::vector<GridPoint>& extra_grid = {},
                                   const FaultInjection& fault = {});

/// Evaluates a Q(d)[x] polynomial at a point; nullopt if a coefficient
/// denominator vanishes there.
std::optional<Rational> evaluate(const XPoly& p, const Rational& x, const Rational& d);

}  // namespace aqrm::constraint

#endif  // AQRM_CONSTRAINT_HPP_
