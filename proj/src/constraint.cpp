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

#include "constraint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "errors.hpp"

namespace aqrm::constraint {

namespace {

// sign = -1 gives the plain recurrence, +1 the tilde one.
std::vector<BivarPoly> recurrence(int N, int two_eps, int sign, int k_max, const FaultInjection& fault) {
  std::vector<BivarPoly> seq;
  seq.reserve(static_cast<size_t>(k_max) + 1);
  seq.push_back(BivarPoly::constant(1));
  const BivarPoly x = BivarPoly::x();
  const BivarPoly d = BivarPoly::d();
  for (int k = 1; k <= k_max; ++k) {
    Integer constant = Integer(-k) * k + Integer(sign) * k * two_eps;
    if (k == fault.step) constant += 1;
    BivarPoly multiplier = Integer(k) * x + d + BivarPoly::constant(constant);
    BivarPoly next = multiplier * seq.back();
    if (k >= 2) {
      Integer c = Integer(k) * (k - 1) * (N - k + 1);
      next -= c * (x * seq[static_cast<size_t>(k - 2)]);
    }
    seq.push_back(std::move(next));
  }
  return seq;
}

int variant_sign(Variant v) { return v == Variant::plain ? -1 : 1; }

void check_step(const ConstraintFamily& fam, int k) {
  validate(fam);
  if (k < 0 || k > fam.N)
    throw std::invalid_argument("step k=" + std::to_string(k) + " outside 0.." + std::to_string(fam.N));
}

double frobenius(const std::vector<double>& m) {
  double s = 0.0;
  for (double v : m) s += v * v;
  return std::sqrt(s);
}

double apply_residual(const std::vector<double>& m, int n, const std::vector<double>& v) {
  double s = 0.0;
  for (int r = 0; r < n; ++r) {
    double acc = 0.0;
    for (int c = std::max(0, r - 1); c <= std::min(n - 1, r + 1); ++c) acc += m[static_cast<size_t>(r * n + c)] * v[static_cast<size_t>(c)];
    s += acc * acc;
  }
  return std::sqrt(s);
}

void normalize(std::vector<double>& v) {
  double norm = 0.0;
  size_t big = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    norm += v[i] * v[i];
    if (std::abs(v[i]) > std::abs(v[big])) big = i;
  }
  norm = std::sqrt(norm);
  if (norm == 0.0 || !std::isfinite(norm)) throw VerificationError("kernel recurrence produced a degenerate vector");
  double scale = (v[big] < 0 ? -1.0 : 1.0) / norm;
  for (double& e : v) e *= scale;
}

// Bisects an isolating interval of a simple root until its midpoint is
// the nearest double.
double refine_to_double(const UniPoly& p, RootInterval r) {
  int lower_sign = p.sign_at(r.lower);
  if (lower_sign == 0) return r.lower.get_d();
  if (p.sign_at(r.upper) == 0) return r.upper.get_d();
  for (int iter = 0; iter < 200 && r.lower.get_d() != r.upper.get_d(); ++iter) {
    const Rational mid = r.midpoint();
    const int s = p.sign_at(mid);
    if (s == 0) return mid.get_d();
    (s == lower_sign ? r.lower : r.upper) = mid;
  }
  return r.midpoint().get_d();
}

}  // namespace

void validate(const ConstraintFamily& fam) {
  if (fam.N < 1) throw std::invalid_argument("constraint family needs N >= 1");
}

std::vector<BivarPoly> constraint_sequence(const ConstraintFamily& fam, const FaultInjection& fault) {
  validate(fam);
  return recurrence(fam.N, fam.two_eps, variant_sign(fam.variant), fam.N, fault);
}

BivarPoly constraint_poly(const ConstraintFamily& fam, int k, const FaultInjection& fault) {
  check_step(fam, k);
  return recurrence(fam.N, fam.two_eps, variant_sign(fam.variant), k, fault).back();
}

BivarPoly TridiagSpec::entry(int row, int col) const {
  if (row < 0 || col < 0 || row >= size() || col >= size()) throw std::out_of_range("tridiagonal index");
  if (col == row) return diag[static_cast<size_t>(row)];
  if (col == row - 1) return sub[static_cast<size_t>(row)];
  if (col == row + 1) return super[static_cast<size_t>(row)];
  return {};
}

RationalMatrix TridiagSpec::specialize(const Rational& x, const Rational& d) const {
  const int n = size();
  RationalMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    m(r, r) = diag[static_cast<size_t>(r)].evaluate(x, d);
    if (r > 0) m(r, r - 1) = sub[static_cast<size_t>(r)].evaluate(x, d);
    if (r + 1 < n) m(r, r + 1) = super[static_cast<size_t>(r)].evaluate(x, d);
  }
  return m;
}

std::vector<double> TridiagSpec::specialize(double x, double d) const {
  const int n = size();
  std::vector<double> m(static_cast<size_t>(n * n), 0.0);
  for (int r = 0; r < n; ++r) {
    m[static_cast<size_t>(r * n + r)] = diag[static_cast<size_t>(r)].evaluate(x, d);
    if (r > 0) m[static_cast<size_t>(r * n + r - 1)] = sub[static_cast<size_t>(r)].evaluate(x, d);
    if (r + 1 < n) m[static_cast<size_t>(r * n + r + 1)] = super[static_cast<size_t>(r)].evaluate(x, d);
  }
  return m;
}

TridiagSpec tridiag_matrix(const ConstraintFamily& fam, int k) {
  check_step(fam, k);
  const bool plain = fam.variant == Variant::plain;
  const BivarPoly x = BivarPoly::x();
  const BivarPoly d = BivarPoly::d();
  TridiagSpec spec;
  for (int r = 0; r <= k; ++r) {
    // diagonal: r^2 - r x - d +/- r two_eps
    Integer c = Integer(r) * r + (plain ? 1 : -1) * Integer(r) * fam.two_eps;
    spec.diag.push_back(BivarPoly::constant(c) - Integer(r) * x - d);
    // entry (r, r+1): (r+1) x plain, r x tilde (zero in the first row)
    spec.super.push_back(r < k ? Integer(plain ? r + 1 : r) * x : BivarPoly());
    // entry (r, r-1): (N-r+1)(r-1) plain, (N-r+1) r tilde
    Integer s = r == 0 ? Integer(0) : Integer(fam.N - r + 1) * (plain ? r - 1 : r);
    spec.sub.push_back(BivarPoly::constant(s));
  }
  return spec;
}

BivarPoly continuant(const ConstraintFamily& fam, int k) {
  TridiagSpec spec = tridiag_matrix(fam, k);
  BivarPoly before = BivarPoly::constant(1);  // det of the empty block
  BivarPoly current = spec.diag[0];
  for (int r = 1; r <= k; ++r) {
    BivarPoly next = spec.diag[static_cast<size_t>(r)] * current -
                     spec.super[static_cast<size_t>(r - 1)] * spec.sub[static_cast<size_t>(r)] * before;
    before = std::move(current);
    current = std::move(next);
  }
  return current;
}

std::vector<std::string> module_pair(int N, int two_eps) {
  if (two_eps < 0) return {};
  return {"F_" + std::to_string(N + 1), "F_" + std::to_string(N + two_eps)};
}

std::string CrossingRecord::lambda_description() const {
  std::string eps = two_eps % 2 == 0 ? std::to_string(two_eps / 2) : std::to_string(two_eps) + "/2";
  return "lambda = " + std::to_string(N) + " - g^2 + " + eps;
}

nlohmann::json CrossingRecord::to_json() const {
  return {{"N", N},
          {"two_eps", two_eps},
          {"d", to_string(d_value)},
          {"x_lo", to_string(root.lower)},
          {"x_hi", to_string(root.upper)},
          {"g", g},
          {"lambda", lambda},
          {"modules", modules}};
}

std::vector<CrossingRecord> find_crossings(int N, int two_eps, const Rational& d_value, const Rational& precision,
                                           const FaultInjection& fault) {
  if (d_value <= 0) throw std::invalid_argument("crossing search needs d = Delta^2 > 0");
  ConstraintFamily fam{N, two_eps, Variant::plain};
  UniPoly p = constraint_sequence(fam, fault).back().specialize(d_value);
  const UniPoly simple = squarefree_part(p);
  std::vector<CrossingRecord> out;
  for (const RootInterval& root : isolate_positive_roots(p, precision)) {
    CrossingRecord rec;
    rec.N = N;
    rec.two_eps = two_eps;
    rec.d_value = d_value;
    rec.root = root;
    rec.x_mid = refine_to_double(simple, root);
    rec.g = std::sqrt(rec.x_mid) / 2.0;
    rec.lambda = N - rec.g * rec.g + two_eps / 2.0;
    rec.modules = module_pair(N, two_eps);
    out.push_back(std::move(rec));
  }
  return out;
}

KernelVector kernel_by_recurrence(const ConstraintFamily& fam, const Rational& d_value, double x_value,
                                  KernelSeed seed) {
  TridiagSpec spec = tridiag_matrix(fam, fam.N);
  const int n = spec.size();
  const std::vector<double> m = spec.specialize(x_value, d_value.get_d());
  // The recurrence runs exactly at the binary value of x_value; floating
  // point would amplify rounding along the chain.
  const RationalMatrix exact = spec.specialize(Rational(x_value), d_value);
  std::vector<Rational> w(static_cast<size_t>(n));

  if (seed == KernelSeed::top) {
    int start = 0;
    w[0] = 1;
    if (n > 1 && exact(0, 1) == 0) {
      // First row reads diag_0 v_0 = 0 with diag_0 = -d != 0, so v_0 = 0.
      w[0] = 0;
      w[1] = 1;
      start = 1;
    }
    for (int r = start; r + 1 < n; ++r) {
      Rational lower = r > 0 ? Rational(exact(r, r - 1) * w[static_cast<size_t>(r - 1)]) : Rational(0);
      const Rational& up = exact(r, r + 1);
      if (up == 0) throw VerificationError("zero super-diagonal entry in top-seeded recurrence");
      w[static_cast<size_t>(r + 1)] = -(lower + exact(r, r) * w[static_cast<size_t>(r)]) / up;
    }
  } else {
    w[static_cast<size_t>(n - 1)] = 1;
    for (int r = n - 1; r >= 1; --r) {
      Rational upper = r + 1 < n ? Rational(exact(r, r + 1) * w[static_cast<size_t>(r + 1)]) : Rational(0);
      const Rational& low = exact(r, r - 1);
      if (low != 0) {
        w[static_cast<size_t>(r - 1)] = -(exact(r, r) * w[static_cast<size_t>(r)] + upper) / low;
      } else if (r == 1) {
        // Row 1 does not see v_0; take it from row 0 instead.
        if (exact(0, 0) == 0) throw VerificationError("singular corner in bottom-seeded recurrence");
        w[0] = -exact(0, 1) * w[1] / exact(0, 0);
      } else {
        throw VerificationError("zero sub-diagonal entry in bottom-seeded recurrence");
      }
    }
  }
  Rational largest = 0;
  for (const Rational& e : w) largest = std::max(largest, Rational(abs(e)));
  std::vector<double> v;
  for (const Rational& e : w) v.push_back(largest == 0 ? 0.0 : Rational(e / largest).get_d());
  normalize(v);
  KernelVector out;
  out.matrix_norm = frobenius(m);
  out.residual = apply_residual(m, n, v);
  out.v = std::move(v);
  return out;
}

KernelVector kernel_vector(const ConstraintFamily& fam, const Rational& d_value, double x_value) {
  KernelSeed seed = fam.variant == Variant::plain ? KernelSeed::top : KernelSeed::bottom;
  KernelVector kv = kernel_by_recurrence(fam, d_value, x_value, seed);
  if (kv.residual > kKernelRejectRatio * kv.matrix_norm)
    throw VerificationError("no kernel vector at x=" + std::to_string(x_value) + ": residual " +
                            std::to_string(kv.residual) + " exceeds tolerance");
  return kv;
}

nlohmann::json IdentityReport::to_json() const {
  return {{"N", N}, {"checked_k", N + 1}, {"failing_k", failing_k}, {"passed", passed()}};
}

IdentityReport verify_identity_half(int N, const FaultInjection& fault) {
  if (N < 0) throw std::invalid_argument("identity check needs N >= 0");
  std::vector<BivarPoly> p = recurrence(N, 1, -1, N, fault);
  std::vector<BivarPoly> pt = recurrence(N + 1, 1, +1, N + 1, {});
  const BivarPoly x = BivarPoly::x();
  const BivarPoly d = BivarPoly::d();
  IdentityReport report;
  report.N = N;
  for (int k = 0; k <= N; ++k) {
    BivarPoly rhs = (Integer(k + 1) * x + d) * p[static_cast<size_t>(k)];
    if (k >= 1) rhs -= (Integer(k) * (k + 1) * (N - k)) * (x * p[static_cast<size_t>(k - 1)]);
    if (!(pt[static_cast<size_t>(k + 1)] - rhs).is_zero()) report.failing_k.push_back(k);
  }
  return report;
}

std::vector<GridPoint> default_conjecture_grid() {
  std::vector<GridPoint> grid;
  for (const Rational& x : {Rational(1, 10), Rational(1), Rational(10), Rational(100)})
    for (const Rational& d : {Rational(1, 4), Rational(1), Rational(4)}) grid.push_back({x, d});
  return grid;
}

std::optional<Rational> evaluate(const XPoly& p, const Rational& x, const Rational& d) {
  Rational acc = 0;
  for (int i = p.degree(); i >= 0; --i) {
    const RatFunc& c = p.coefficients()[static_cast<size_t>(i)];
    Rational den = c.denominator()(d);
    if (den == 0) return std::nullopt;
    acc = acc * x + c.numerator()(d) / den;
  }
  return acc;
}

nlohmann::json ConjectureReport::to_json() const {
  nlohmann::json bad = nlohmann::json::array();
  for (const auto& s : nonpositive_samples) bad.push_back({to_string(s.x), to_string(s.d)});
  nlohmann::json out = {{"N", N},
                        {"ell", ell},
                        {"remainder_zero", remainder_zero},
                        {"integral_quotient", integral_quotient},
                        {"positive_on_grid", positive_on_grid},
                        {"grid_size", grid.size()},
                        {"nonpositive_samples", bad},
                        {"quotient", quotient ? quotient->to_text() : division.quotient.to_string()},
                        {"passed", passed()}};
  if (!remainder_zero) out["remainder"] = division.remainder.to_string();
  return out;
}

ConjectureReport verify_conjecture(int N, int ell, const std::vector<GridPoint>& extra_grid,
                                   const FaultInjection& fault) {
  if (N < 1) throw std::invalid_argument("conjecture check needs N >= 1");
  if (ell < 0) throw std::invalid_argument("conjecture check needs ell >= 0");
  BivarPoly num = recurrence(N + ell, ell, +1, N + ell, {}).back();
  BivarPoly den = recurrence(N, ell, -1, N, fault).back();

  ConjectureReport report;
  report.N = N;
  report.ell = ell;
  report.division = poly_div_x(num, den);
  report.remainder_zero = report.division.remainder.is_zero();
  report.quotient = report.division.quotient.to_integral();
  report.integral_quotient = report.quotient.has_value();

  report.grid = extra_grid;
  for (const auto& g : default_conjecture_grid()) report.grid.push_back(g);
  report.positive_on_grid = true;
  for (const auto& sample : report.grid) {
    if (sample.x <= 0) continue;
    std::optional<Rational> v = evaluate(report.division.quotient, sample.x, sample.d);
    if (!v || *v <= 0) {
      report.positive_on_grid = false;
      report.nonpositive_samples.push_back(sample);
    }
  }
  return report;
}

}  // namespace aqrm::constraint
