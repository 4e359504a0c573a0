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

#include "sl2rep.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <stdexcept>

#include "errors.hpp"

namespace aqrm::sl2 {

namespace {

const Rational kHalf(1, 2);

bool same_window(const RepParams& a, const RepParams& b) {
  return a.j == b.j && a.n_min == b.n_min && a.n_max == b.n_max;
}

void require_compatible(const RepOperator& a, const RepOperator& b) {
  if (!same_window(a.params, b.params) || a.params.a != b.params.a)
    throw std::invalid_argument("operators live on different representations or windows");
}

Rational abs_value(const Rational& v) { return v < 0 ? Rational(-v) : v; }

nlohmann::json rational_json(const Rational& v) { return to_string(v); }

// Columns in `inside` must map into `inside` (images leaving the window are
// not visible and are ignored).
template <class Pred>
bool closed_under(const RepOperator& op, Pred inside) {
  const RepParams& p = op.params;
  for (int c = p.n_min; c <= p.n_max; ++c) {
    if (!inside(c)) continue;
    for (int r = p.n_min; r <= p.n_max; ++r)
      if (op.at(r, c) != 0 && !inside(r)) return false;
  }
  return true;
}

bool is_even_integer(const Rational& a) {
  return a.get_den() == 1 && mpz_even_p(a.get_num().get_mpz_t()) != 0;
}

}  // namespace

void validate(const RepParams& p) {
  if (p.j != 1 && p.j != 2) throw std::invalid_argument("representation index j must be 1 or 2");
  if (p.n_min > p.n_max) throw std::invalid_argument("empty weight window");
}

const Rational& RepOperator::at(int n_out, int n_in) const {
  return matrix(params.index(n_out), params.index(n_in));
}

RepOperator& RepOperator::operator+=(const RepOperator& rhs) {
  require_compatible(*this, rhs);
  matrix += rhs.matrix;
  margin = std::max(margin, rhs.margin);
  bandwidth = std::max(bandwidth, rhs.bandwidth);
  return *this;
}

RepOperator& RepOperator::operator-=(const RepOperator& rhs) {
  require_compatible(*this, rhs);
  matrix -= rhs.matrix;
  margin = std::max(margin, rhs.margin);
  bandwidth = std::max(bandwidth, rhs.bandwidth);
  return *this;
}

RepOperator& RepOperator::operator+=(const Rational& c) {
  for (int i = 0; i < params.size(); ++i) matrix(i, i) += c;
  return *this;
}

RepOperator& RepOperator::operator*=(const Rational& c) {
  matrix *= c;
  return *this;
}

RepOperator operator*(const RepOperator& a, const RepOperator& b) {
  require_compatible(a, b);
  RepOperator out;
  out.params = a.params;
  out.matrix = a.matrix * b.matrix;
  out.margin = std::max(a.margin, b.margin + a.bandwidth);
  out.bandwidth = a.bandwidth + b.bandwidth;
  return out;
}

nlohmann::json RepOperator::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < matrix.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < matrix.cols(); ++c) row.push_back(rational_json(matrix(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"j", params.j},
          {"a", to_string(params.a)},
          {"n_min", params.n_min},
          {"n_max", params.n_max},
          {"margin", margin},
          {"bandwidth", bandwidth},
          {"matrix", rows}};
}

Rational interior_discrepancy(const RepOperator& lhs, const RepOperator& rhs) {
  if (!same_window(lhs.params, rhs.params)) throw std::invalid_argument("windows differ");
  const int lo = std::max(lhs.interior_min(), rhs.interior_min());
  const int hi = std::min(lhs.interior_max(), rhs.interior_max());
  Rational worst = 0;
  for (int r = lo; r <= hi; ++r)
    for (int c = lhs.params.n_min; c <= lhs.params.n_max; ++c)
      worst = std::max(worst, abs_value(lhs.at(r, c) - rhs.at(r, c)));
  return worst;
}

RepOperator rep_generator(const RepParams& params, Generator gen) {
  validate(params);
  RepOperator op;
  op.params = params;
  op.matrix = RationalMatrix(params.size(), params.size());
  op.bandwidth = gen == Generator::H ? 0 : 1;
  const Rational& a = params.a;
  const bool spherical = params.j == 1;
  for (int n = params.n_min; n <= params.n_max; ++n) {
    const int col = params.index(n);
    switch (gen) {
      case Generator::H:
        op.matrix(col, col) = spherical ? 2 * n : 2 * n + 1;
        break;
      case Generator::E:
        if (n < params.n_max) op.matrix(col + 1, col) = spherical ? Rational(n + a / 2) : Rational(n + (a + 1) / 2);
        break;
      case Generator::F:
        if (n > params.n_min) op.matrix(col - 1, col) = spherical ? Rational(-n + a / 2) : Rational(-n + (a - 1) / 2);
        break;
    }
  }
  return op;
}

RepOperator identity(const RepParams& params) {
  validate(params);
  RepOperator op;
  op.params = params;
  op.matrix = RationalMatrix::identity(params.size());
  return op;
}

RepOperator casimir(const RepParams& params) {
  RepOperator H = rep_generator(params, Generator::H);
  RepOperator E = rep_generator(params, Generator::E);
  RepOperator F = rep_generator(params, Generator::F);
  return H * H + Rational(2) * (E * F) + Rational(2) * (F * E);
}

RepOperator assemble_K(const RepParams& params, const KParams& kp) {
  if (params.size() - 2 < 3) throw std::invalid_argument("window too small for K: fewer than 3 interior rows");
  RepOperator H = rep_generator(params, Generator::H);
  RepOperator E = rep_generator(params, Generator::E);
  RepOperator F = rep_generator(params, Generator::F);
  RepOperator left = kHalf * H - E + kp.alpha;
  RepOperator right = F + kp.beta;
  return left * right + kp.gamma * (H - kHalf) + kp.C;
}

KParams k_params(const EigenParams& p) {
  const Rational s = p.shifted();
  return {1 - (s - p.eps) / 2, 4 * p.g2, kHalf - (s + p.eps) / 2, mu(p) + 4 * p.eps * p.g2 - p.eps * p.eps};
}

KParams k_tilde_params(const EigenParams& p) {
  const Rational s = p.shifted();
  return {-kHalf - (s + p.eps) / 2, 4 * p.g2, -(s - p.eps) / 2, mu(p) - 4 * p.eps * p.g2 - p.eps * p.eps};
}

Rational k_index(const EigenParams& p) { return -(p.shifted() - p.eps); }
Rational k_tilde_index(const EigenParams& p) { return -(p.shifted() - 1 + p.eps); }

nlohmann::json CommutatorResult::to_json() const {
  return {{"max_discrepancy", to_string(max_discrepancy)}, {"interior_rows", interior_rows}, {"passed", passed()}};
}

CommutatorResult commutator_check(const RepParams& params, const EigenParams& ep) {
  validate(params);
  // K K~ has margin 3.
  if (params.size() - 6 < 5)
    throw std::invalid_argument("window too small for the commutator: fewer than 5 interior rows");
  RepOperator K = assemble_K(params, k_params(ep));
  RepOperator Kt = assemble_K(params, k_tilde_params(ep));
  RepOperator lhs = K * Kt - Kt * K;

  RepOperator H = rep_generator(params, Generator::H);
  RepOperator E = rep_generator(params, Generator::E);
  RepOperator F = rep_generator(params, Generator::F);
  const Rational& eps = ep.eps;
  RepOperator rhs = (eps + Rational(3, 2)) * ((H + F) * (F + 4 * ep.g2)) +
                    (eps - kHalf) * (8 * ep.g2 * E + H * F) -
                    2 * (eps + kHalf) * (ep.shifted() - kHalf) * F;

  CommutatorResult out;
  out.max_discrepancy = interior_discrepancy(lhs, rhs);
  out.interior_rows = std::min(lhs.interior_max(), rhs.interior_max()) -
                      std::max(lhs.interior_min(), rhs.interior_min()) + 1;
  return out;
}

CheckReport commutation_check(const RepParams& params) {
  RepOperator H = rep_generator(params, Generator::H);
  RepOperator E = rep_generator(params, Generator::E);
  RepOperator F = rep_generator(params, Generator::F);
  CheckReport report("commutation");
  auto add = [&](const char* name, const RepOperator& lhs, const RepOperator& rhs) {
    Rational diff = interior_discrepancy(lhs, rhs);
    report.add(name, diff == 0, {{"j", params.j}, {"a", to_string(params.a)}, {"discrepancy", to_string(diff)}});
  };
  add("[H,E]=2E", H * E - E * H, Rational(2) * E);
  add("[H,F]=-2F", H * F - F * H, Rational(-2) * F);
  add("[E,F]=H", E * F - F * E, H);
  return report;
}

CheckReport casimir_check(const RepParams& params) {
  RepOperator omega = casimir(params);
  RepOperator expected = identity(params) * (params.a * (params.a - 2));
  Rational diff = interior_discrepancy(omega, expected);
  CheckReport report("casimir");
  report.add("Omega=a(a-2)", diff == 0,
             {{"j", params.j}, {"a", to_string(params.a)}, {"discrepancy", to_string(diff)}});
  return report;
}

CheckReport invariant_subspace_check(int j, int m) {
  if (j != 1 && j != 2) throw std::invalid_argument("representation index j must be 1 or 2");
  if (m < 1) throw std::invalid_argument("invariant subspace check needs m >= 1");
  CheckReport report("invariant_subspace j=" + std::to_string(j) + " m=" + std::to_string(m));

  auto check_block = [&](const Rational& a, int lo, int hi) {
    RepParams p{j, a, lo - 4, hi + 4};
    const int dim = hi - lo + 1;
    auto inside = [&](int n) { return n >= lo && n <= hi; };
    std::string tag = "F_" + std::to_string(dim) + " (a=" + to_string(a) + ")";
    for (Generator g : {Generator::H, Generator::E, Generator::F}) {
      static const char* names[] = {"H", "E", "F"};
      report.add(tag + " closed under " + names[static_cast<int>(g)], closed_under(rep_generator(p, g), inside));
    }
    RepOperator omega = casimir(p);
    bool scalar = true;
    const Rational value = dim * dim - 1;
    for (int c = lo; c <= hi; ++c)
      for (int r = omega.interior_min(); r <= omega.interior_max(); ++r)
        if (omega.at(r, c) != (r == c ? value : Rational(0))) scalar = false;
    report.add(tag + " Casimir n^2-1", scalar, {{"expected", to_string(value)}});
  };

  auto check_boundary = [&](const Rational& a, int lowest, int highest) {
    // D+ spans n >= lowest, D- spans n <= highest.
    RepParams p{j, a, highest - 5, lowest + 5};
    RepOperator E = rep_generator(p, Generator::E);
    RepOperator F = rep_generator(p, Generator::F);
    std::string tag = " (a=" + to_string(a) + ")";
    report.add("F kills lowest weight of D+" + tag, F.at(lowest - 1, lowest) == 0);
    report.add("E kills highest weight of D-" + tag, E.at(highest + 1, highest) == 0);
    auto plus = [&](int n) { return n >= lowest; };
    auto minus = [&](int n) { return n <= highest; };
    report.add("D+ closed" + tag, closed_under(E, plus) && closed_under(F, plus));
    report.add("D- closed" + tag, closed_under(E, minus) && closed_under(F, minus));
  };

  if (j == 1) {
    check_block(Rational(2 - 2 * m), -m + 1, m - 1);
    check_block(Rational(-2 * m), -m, m);
    check_boundary(Rational(2 * m), m, -m);
  } else {
    check_block(Rational(1 - 2 * m), -m, m - 1);
    check_boundary(Rational(2 * m - 1), m - 1, -m);
  }
  return report;
}

CheckReport intertwiner_check(const Rational& a, int n_min, int n_max) {
  if (is_even_integer(a)) throw std::invalid_argument("no intertwiner for a in 2Z");
  RepParams from{1, a, n_min, n_max};
  RepParams to{1, 2 - a, n_min, n_max};
  validate(from);
  const int size = from.size();
  RationalMatrix A(size, size);
  for (int n = n_min; n <= n_max; ++n) {
    Rational c = 1;
    for (int k = 1; k <= std::abs(n); ++k) c *= (k - a / 2) / (k - 1 + a / 2);
    A(from.index(n), from.index(n)) = c;
  }
  CheckReport report("intertwiner a=" + to_string(a));
  static const char* names[] = {"H", "E", "F"};
  for (Generator g : {Generator::H, Generator::E, Generator::F}) {
    RationalMatrix lhs = A * rep_generator(from, g).matrix;
    RationalMatrix rhs = rep_generator(to, g).matrix * A;
    Rational worst = 0;
    for (int r = 1; r + 1 < size; ++r)
      for (int c = 0; c < size; ++c) worst = std::max(worst, abs_value(lhs(r, c) - rhs(r, c)));
    report.add(std::string("A X_a = X_{2-a} A for ") + names[static_cast<int>(g)], worst == 0,
               {{"discrepancy", to_string(worst)}});
  }
  return report;
}

FamilyBlock family_block(const constraint::ConstraintFamily& fam, const Rational& g2, const Rational& d) {
  constraint::validate(fam);
  const int N = fam.N;
  const Rational eps = make_rational(fam.two_eps, 2);
  const bool plain = fam.variant == constraint::Variant::plain;
  const Rational s = plain ? Rational(N + eps) : Rational(N - eps);
  const EigenParams ep{s - g2, g2, d, eps};
  const KParams kp = plain ? k_params(ep) : k_tilde_params(ep);
  const Rational a = plain ? k_index(ep) : k_tilde_index(ep);

  FamilyBlock out;
  const bool even = N % 2 == 0;
  out.params.j = plain == even ? 1 : 2;
  out.params.a = a;
  out.n_top = plain ? N / 2 : (N + 1) / 2;
  out.params.n_min = out.n_top - N - 2;
  out.params.n_max = out.n_top + 2;

  RepOperator K = assemble_K(out.params, kp) - kp.lambda_a(a);
  out.block = RationalMatrix(N + 1, N + 1);
  for (int r = 0; r <= N; ++r)
    for (int c = 0; c <= N; ++c) out.block(r, c) = K.at(out.n_top - r, out.n_top - c);
  return out;
}

CheckReport family_match(const constraint::ConstraintFamily& fam) {
  const char* variant = fam.variant == constraint::Variant::plain ? "P" : "P~";
  CheckReport report(std::string("family ") + variant + " N=" + std::to_string(fam.N) +
                     " two_eps=" + std::to_string(fam.two_eps));
  constraint::TridiagSpec spec = constraint::tridiag_matrix(fam, fam.N);
  const std::vector<constraint::GridPoint> samples = {
      {0, 0}, {1, 0}, {0, 1}, {Rational(3, 7), Rational(5, 11)}, {12, Rational(1, 4)}};
  for (const auto& s : samples) {
    RationalMatrix block = family_block(fam, s.x / 4, s.d).block;
    RationalMatrix expected = spec.specialize(s.x, s.d);
    int mismatches = 0;
    for (int r = 0; r <= fam.N; ++r)
      for (int c = 0; c <= fam.N; ++c)
        if (block(r, c) != expected(r, c)) ++mismatches;
    report.add("x=" + to_string(s.x) + " d=" + to_string(s.d), mismatches == 0, {{"mismatches", mismatches}});
  }
  return report;
}

double degenerate_pair_sigma_min(int m, const Rational& d, double x) {
  if (m < 1) throw std::invalid_argument("degenerate pair needs m >= 1");
  constraint::KernelVector nu = constraint::kernel_vector({2 * m, 1, constraint::Variant::plain}, d, x);
  constraint::KernelVector nut = constraint::kernel_vector({2 * m + 1, 1, constraint::Variant::tilde}, d, x);
  const int dim = 2 * m + 1;
  Eigen::MatrixXd pair(2, dim);
  for (int i = 0; i < dim; ++i) {
    pair(0, i) = nu.v[static_cast<size_t>(i)];
    pair(1, i) = nut.v[static_cast<size_t>(i + 1)];  // drop the padded top row
  }
  pair.row(1).normalize();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pair);
  return svd.singularValues().minCoeff();
}

Rational random_rational(std::mt19937_64& rng, int num_range, int den_max) {
  const auto span = static_cast<std::uint64_t>(2 * num_range + 1);
  const long num = static_cast<long>(rng() % span) - num_range;
  const long den = static_cast<long>(rng() % static_cast<std::uint64_t>(den_max)) + 1;
  return make_rational(num, den);
}

CheckReport run_rep_suite(std::uint64_t seed, int samples, int n_family) {
  std::mt19937_64 rng(seed);
  CheckReport suite("rep_suite");

  for (int i = 0; i < samples; ++i) {
    RepParams p;
    p.j = 1 + static_cast<int>(rng() % 2);
    p.a = random_rational(rng, 12, 5);
    p.n_min = -3 - static_cast<int>(rng() % 6);
    p.n_max = p.n_min + 8 + static_cast<int>(rng() % 7);
    suite.merge(commutation_check(p));
    suite.merge(casimir_check(p));
  }
  for (int j : {1, 2})
    for (int m = 1; m <= 4; ++m) suite.merge(invariant_subspace_check(j, m));

  std::vector<Rational> intertwined = {1, Rational(1, 2), 3, Rational(-1, 3)};
  while (static_cast<int>(intertwined.size()) < 4 + samples / 4) {
    Rational a = random_rational(rng, 9, 4);
    if (!is_even_integer(a)) intertwined.push_back(a);
  }
  for (const Rational& a : intertwined) suite.merge(intertwiner_check(a, -4, 4));

  for (auto variant : {constraint::Variant::plain, constraint::Variant::tilde})
    for (int N = 1; N <= n_family; ++N)
      for (int two_eps = -2; two_eps <= 2; ++two_eps) suite.merge(family_match({N, two_eps, variant}));

  for (int i = 0; i < samples; ++i) {
    RepParams p{1 + static_cast<int>(rng() % 2), random_rational(rng, 12, 5), -6, 6};
    EigenParams ep{random_rational(rng, 20, 7), random_rational(rng, 10, 7), random_rational(rng, 10, 7),
                   make_rational(static_cast<long>(rng() % 9) - 4, 2)};
    CommutatorResult res = commutator_check(p, ep);
    nlohmann::json detail = res.to_json();
    detail["lambda"] = to_string(ep.lambda);
    detail["g2"] = to_string(ep.g2);
    detail["d"] = to_string(ep.d);
    detail["eps"] = to_string(ep.eps);
    detail["a"] = to_string(p.a);
    suite.add("commutator lemma #" + std::to_string(i), res.passed(), detail);
  }
  return suite;
}

}  // namespace aqrm::sl2
