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

#ifndef AQRM_EXACTPOLY_HPP_
#define AQRM_EXACTPOLY_HPP_

#include <gmpxx.h>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aqrm {

// GMP keeps mpq_class canonical (reduced, positive denominator, 0 == 0/1)
// as long as every value is produced by its arithmetic operators.
using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or a finite decimal such as "-0.125" into an exact
/// rational. Throws std::invalid_argument on malformed input or q == 0.
Rational parse_rational(std::string_view text);

/// "p/q" or "p" when the denominator is one.
std::string to_string(const Rational& value);

/// num/den in canonical form (mpq_class(num, den) alone does not reduce).
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rational& value) { return sgn(value); }
inline int sign(const Integer& value) { return sgn(value); }

// ---------------------------------------------------------------------------
// Univariate polynomials over Q. The variable is positional: the same type
// holds polynomials in x (after specializing d) and polynomials in d (the
// x-coefficients of a BivarPoly).
// ---------------------------------------------------------------------------
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> ascending);

  static UniPoly constant(const Rational& c);
  static UniPoly monomial(const Rational& c, int degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coeff(int i) const;
  const Rational& leading() const;

  Rational operator()(const Rational& t) const;
  double evaluate(double t) const;
  int sign_at(const Rational& t) const { return sign((*this)(t)); }
  /// Sign as t -> +infinity.
  int sign_at_infinity() const { return is_zero() ? 0 : sign(leading()); }

  UniPoly derivative() const;
  UniPoly monic() const;

  UniPoly& operator+=(const UniPoly& rhs);
  UniPoly& operator-=(const UniPoly& rhs);
  UniPoly& operator*=(const Rational& c);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(const UniPoly& a);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, const Rational& c) { return a *= c; }
  friend UniPoly operator*(const Rational& c, UniPoly a) { return a *= c; }
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct UniDivision {
  UniPoly quotient;
  UniPoly remainder;
};

/// Euclidean division over Q. Throws std::domain_error for a zero divisor.
UniDivision divmod(const UniPoly& num, const UniPoly& den);
/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(UniPoly a, UniPoly b);
/// p / gcd(p, p'), made monic. Zero stays zero.
UniPoly squarefree_part(const UniPoly& p);

// ---------------------------------------------------------------------------
// Rational functions in one variable (used for the field Q(d)).
// ---------------------------------------------------------------------------
class RatFunc {
 public:
  RatFunc() : den_(UniPoly::constant(1)) {}
  RatFunc(UniPoly num);  // NOLINT(google-explicit-constructor)
  RatFunc(UniPoly num, UniPoly den);

  const UniPoly& numerator() const { return num_; }
  const UniPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string(char var = 'd') const;

 private:
  void normalize();
  UniPoly num_;
  UniPoly den_;
};

// ---------------------------------------------------------------------------
// Bivariate integer polynomials in x (= 4 g^2) and d (= Delta^2).
// ---------------------------------------------------------------------------
class BivarPoly {
 public:
  /// (degree in x, degree in d)
  using Exponent = std::pair<int, int>;
  /// Iteration order is (i, j) descending, which is the canonical print order.
  using TermMap = std::map<Exponent, Integer, std::greater<Exponent>>;

  BivarPoly() = default;

  static BivarPoly constant(const Integer& c) { return term(c, 0, 0); }
  static BivarPoly term(const Integer& c, int i, int j);
  static BivarPoly x() { return term(1, 1, 0); }
  static BivarPoly d() { return term(1, 0, 1); }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  Integer coeff(int i, int j) const;
  /// -1 for the zero polynomial.
  int degree_x() const;
  int degree_d() const;
  /// Coefficient of x^i as a polynomial in d.
  UniPoly x_coefficient(int i) const;

  /// Substitutes d -> d_value; result is a polynomial in x.
  UniPoly specialize(const Rational& d_value) const;
  Rational evaluate(const Rational& x, const Rational& d) const;
  double evaluate(double x, double d) const;
  /// Sum of |c| x^i d^j, the natural scale for relative smallness tests.
  double abs_evaluate(double x, double d) const;

  BivarPoly& operator+=(const BivarPoly& rhs);
  BivarPoly& operator-=(const BivarPoly& rhs);
  BivarPoly& operator*=(const Integer& c);

  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator-(const BivarPoly& a);
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(BivarPoly a, const Integer& c) { return a *= c; }
  friend BivarPoly operator*(const Integer& c, BivarPoly a) { return a *= c; }
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    return a.terms_ == b.terms_;
  }

  /// Canonical text: "c*x^i*d^j" terms, (i, j) descending, joined by " + " /
  /// " - ". The zero polynomial prints as "0".
  std::string to_text() const;
  /// {"terms":[[i,j,"coeff"],...]} in canonical order.
  std::string to_json() const;
  static BivarPoly from_text(std::string_view text);
  static BivarPoly from_json(std::string_view json);

 private:
  void add_term(const Exponent& e, const Integer& c);
  TermMap terms_;
};

enum class PolyOp { add, sub, mul };
BivarPoly poly_arith(const BivarPoly& a, const BivarPoly& b, PolyOp op);

// ---------------------------------------------------------------------------
// Polynomials in x with coefficients in Q(d); the quotient ring for dividing
// one BivarPoly by another with x as the main variable.
// ---------------------------------------------------------------------------
class XPoly {
 public:
  XPoly() = default;
  explicit XPoly(std::vector<RatFunc> ascending);
  static XPoly from(const BivarPoly& p);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<RatFunc>& coefficients() const { return coeffs_; }
  RatFunc coeff(int i) const;

  /// The polynomial as a BivarPoly when every coefficient is a polynomial in
  /// d with integer coefficients; nullopt otherwise.
  std::optional<BivarPoly> to_integral() const;

  friend XPoly operator+(const XPoly& a, const XPoly& b);
  friend XPoly operator-(const XPoly& a, const XPoly& b);
  friend XPoly operator*(const XPoly& a, const XPoly& b);
  friend bool operator==(const XPoly& a, const XPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();
  std::vector<RatFunc> coeffs_;
};

struct XDivision {
  XPoly quotient;
  XPoly remainder;
};

/// Division with x as the main variable over the field Q(d):
/// num = quotient * den + remainder, deg_x(remainder) < deg_x(den).
/// Throws std::domain_error when den is zero.
XDivision poly_div_x(const BivarPoly& num, const BivarPoly& den);

// ---------------------------------------------------------------------------
// Real root isolation (Sturm sequences over Q, refined by bisection).
// ---------------------------------------------------------------------------
struct RootInterval {
  Rational lower;
  Rational upper;
  Rational width() const { return upper - lower; }
  Rational midpoint() const { return (lower + upper) / 2; }
};

/// Sturm chain s0 = squarefree(p), s1 = s0', s_{k+1} = -rem(s_{k-1}, s_k).
std::vector<UniPoly> sturm_sequence(const UniPoly& p);
/// Sign changes of the chain at t, zeros skipped.
int sign_variations(const std::vector<UniPoly>& chain, const Rational& t);
int sign_variations_at_infinity(const std::vector<UniPoly>& chain);
/// Number of distinct real roots in (a, b].
int count_roots(const std::vector<UniPoly>& chain, const Rational& a,
                const Rational& b);
/// Strict upper bound on the absolute value of every root (Cauchy).
Rational root_bound(const UniPoly& p);

/// Disjoint intervals (lower, upper], each of width <= precision and holding
/// exactly one positive real root, sorted ascending and covering every
/// positive root. Throws std::invalid_argument for the zero polynomial or a
/// nonpositive precision.
std::vector<RootInterval> isolate_positive_roots(const UniPoly& p,
                                                 const Rational& precision);

// ---------------------------------------------------------------------------
// Dense exact matrices (small; used for representation matrices and
// specialized tridiagonal matrices).
// ---------------------------------------------------------------------------
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RationalMatrix identity(int n, const Rational& c = 1);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  RationalMatrix& operator+=(const RationalMatrix& rhs);
  RationalMatrix& operator-=(const RationalMatrix& rhs);
  RationalMatrix& operator*=(const Rational& c);
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(RationalMatrix a, const Rational& c) { return a *= c; }
  friend RationalMatrix operator*(const Rational& c, RationalMatrix a) { return a *= c; }
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace aqrm

#endif  // AQRM_EXACTPOLY_HPP_
