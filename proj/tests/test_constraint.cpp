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

#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "constraint.hpp"
#include "doctest.h"

using namespace aqrm;
using namespace aqrm::constraint;

namespace {

const BivarPoly X = BivarPoly::x();
const BivarPoly D = BivarPoly::d();
BivarPoly c(long v) { return BivarPoly::constant(v); }

// Leibniz expansion over all permutations; only used for tiny matrices.
BivarPoly leibniz_det(const TridiagSpec& m) {
  const int n = m.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BivarPoly det;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    BivarPoly term = c(inversions % 2 ? -1 : 1);
    for (int i = 0; i < n && !term.is_zero(); ++i) term = term * m.entry(i, perm[i]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

Integer factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("constraint polynomial examples") {
  for (int two_eps : {-2, 0, 1, 3}) {
    ConstraintFamily fam{3, two_eps, Variant::plain};
    CHECK(constraint_poly(fam, 0) == c(1));
    CHECK(constraint_poly(fam, 1) == X + D - c(1) - c(two_eps));
  }
  CHECK(constraint_poly({2, 1, Variant::plain}, 2) ==
        BivarPoly::from_text("2*x^2 + 3*x*d + d^2 - 12*x - 8*d + 12"));
  CHECK_THROWS(constraint_poly({2, 0, Variant::plain}, 3));
  CHECK_THROWS(constraint_poly({2, 0, Variant::plain}, -1));
}

TEST_CASE("hand-expanded recurrence step") {
  // P_2 = (2x + d - 4 - 2*two_eps) P_1 - 2 (N - 1) x, with P_1 = x + d - 1 - two_eps.
  for (int N : {2, 3, 5})
    for (int te : {-1, 0, 2}) {
      const BivarPoly p1 = X + D - c(1 + te);
      const BivarPoly want = (2 * X + D - c(4 + 2 * te)) * p1 - Integer(2 * (N - 1)) * X;
      CHECK(constraint_poly({N, te, Variant::plain}, 2) == want);
    }
}

TEST_CASE("tilde family is the plain family at negated eps") {
  for (int N = 1; N <= 12; ++N)
    for (int te = -4; te <= 4; ++te) {
      auto tilde = constraint_sequence({N, te, Variant::tilde});
      auto plain = constraint_sequence({N, -te, Variant::plain});
      REQUIRE(tilde.size() == plain.size());
      for (size_t k = 0; k < tilde.size(); ++k) CHECK(tilde[k] == plain[k]);
    }
}

TEST_CASE("degree and leading coefficient") {
  for (int N = 1; N <= 10; ++N)
    for (int te : {-3, 0, 1, 2})
      for (Variant v : {Variant::plain, Variant::tilde}) {
        auto seq = constraint_sequence({N, te, v});
        for (int k = 0; k <= N; ++k) {
          CHECK(seq[k].degree_x() == k);
          CHECK(seq[k].x_coefficient(k) == UniPoly::constant(Rational(factorial(k))));
        }
      }
}

TEST_CASE("tridiagonal matrix examples") {
  CHECK(tridiag_matrix({3, 1, Variant::plain}, 0).entry(0, 0) == -D);
  const TridiagSpec t = tridiag_matrix({2, 1, Variant::tilde}, 1);
  CHECK(t.entry(0, 1).is_zero());
  CHECK(t.size() == 2);
  CHECK_THROWS(tridiag_matrix({2, 0, Variant::plain}, 3));
}

TEST_CASE("continuant examples and cofactor oracle") {
  CHECK(continuant({2, 0, Variant::plain}, 0) == -D);
  for (int te : {0, 1, -1}) {
    ConstraintFamily fam{3, te, Variant::plain};
    CHECK(continuant(fam, 1) == -D * (c(1 + te) - X - D));
  }
  for (Variant v : {Variant::plain, Variant::tilde})
    for (int N = 1; N <= 4; ++N)
      for (int te : {-1, 0, 1}) {
        ConstraintFamily fam{N, te, v};
        for (int k = 0; k <= N; ++k) CHECK(continuant(fam, k) == leibniz_det(tridiag_matrix(fam, k)));
      }
}

TEST_CASE("continuant and constraint polynomial agree") {
  for (int N = 1; N <= 10; ++N)
    for (int te : {-2, -1, 0, 1, 2})
      for (Variant v : {Variant::plain, Variant::tilde}) {
        ConstraintFamily fam{N, te, v};
        for (int k = 0; k <= N; ++k) {
          const BivarPoly sign = c(k % 2 ? -1 : 1);
          CHECK(sign * continuant(fam, k) == -D * constraint_poly(fam, k));
        }
      }
}

TEST_CASE("root count in each coupling window") {
  const Rational prec = parse_rational("1e-12");
  for (int N = 1; N <= 6; ++N)
    for (int te : {0, 1, 2}) {
      const BivarPoly p = constraint_poly({N, te, Variant::plain}, N);
      for (int k = 0; k <= N; ++k) {
        // Window in d = Delta^2 is (k^2 + k*two_eps, (k+1)^2 + (k+1)*two_eps).
        const Rational lo = k * k + k * te, hi = (k + 1) * (k + 1) + (k + 1) * te;
        const Rational d = (lo + hi) / 2;
        if (d <= 0) continue;
        CAPTURE(N);
        CAPTURE(te);
        CAPTURE(k);
        CHECK(isolate_positive_roots(p.specialize(d), prec).size() == static_cast<size_t>(N - k));
      }
    }
}

TEST_CASE("crossing examples") {
  const Rational prec = parse_rational("1e-12");
  auto judd = find_crossings(1, 0, make_rational(1, 2), prec);
  REQUIRE(judd.size() == 1);
  CHECK(judd[0].root.lower <= make_rational(1, 2));
  CHECK(judd[0].root.upper >= make_rational(1, 2));
  CHECK(judd[0].g == doctest::Approx(std::sqrt(0.5) / 2));
  CHECK(judd[0].lambda == doctest::Approx(0.875).epsilon(1e-12));

  CHECK(find_crossings(1, 0, Rational(2), prec).empty());
  CHECK_THROWS(find_crossings(1, 0, Rational(0), prec));

  // 2x^2 + (3/4 - 12) x + (1/16 - 2 + 12): both roots real and positive.
  auto two = find_crossings(2, 1, make_rational(1, 4), prec);
  REQUIRE(two.size() == 2);
  const double b = 0.75 - 12, cc = 1.0 / 16 - 2 + 12;
  const double disc = std::sqrt(b * b - 8 * cc);
  CHECK(two[0].x_mid == doctest::Approx((-b - disc) / 4).epsilon(1e-10));
  CHECK(two[1].x_mid == doctest::Approx((-b + disc) / 4).epsilon(1e-10));
  for (const auto& r : two) CHECK(r.lambda == doctest::Approx(2 - r.g * r.g + 0.5).epsilon(1e-14));

  const auto j = two[0].to_json();
  for (const char* key : {"N", "two_eps", "d", "x_lo", "x_hi", "g", "lambda", "modules"}) CHECK(j.contains(key));
  CHECK(j["d"] == "1/4");
}

TEST_CASE("module labels") {
  CHECK(module_pair(1, 0).size() == 2);
  CHECK(module_pair(2, 1).size() == 2);
  CHECK(module_pair(2, -1).empty());
}

TEST_CASE("kernel vector examples") {
  const ConstraintFamily fam{1, 0, Variant::plain};
  KernelVector kv = kernel_vector(fam, make_rational(1, 2), 0.5);
  REQUIRE(kv.v.size() == 2);
  CHECK(std::abs(kv.v[0]) > 0.1);
  CHECK(std::abs(kv.v[1]) > 0.1);
  CHECK(kv.residual < 1e-10);
  const auto m = tridiag_matrix(fam, 1).specialize(0.5, 0.5);
  Eigen::Map<const Eigen::Matrix<double, 2, 2, Eigen::RowMajor>> M(m.data());
  Eigen::Vector2d v(kv.v[0], kv.v[1]);
  CHECK((M * v).norm() < 1e-10);

  CHECK_THROWS(kernel_vector(fam, make_rational(1, 2), 0.9));
}

TEST_CASE("kernel vectors at every isolated root") {
  const Rational prec = parse_rational("1e-12");
  for (int N = 1; N <= 6; ++N)
    for (int te : {0, 1, 2})
      for (const Rational& d : {make_rational(1, 4), make_rational(3, 2), Rational(5)}) {
        const ConstraintFamily fam{N, te, Variant::plain};
        for (const auto& rec : find_crossings(N, te, d, prec)) {
          KernelVector kv = kernel_vector(fam, d, rec.x_mid);
          CHECK(kv.residual < 1e-8 * std::max(1.0, kv.matrix_norm));
          KernelVector top = kernel_by_recurrence(fam, d, rec.x_mid, KernelSeed::top);
          KernelVector bottom = kernel_by_recurrence(fam, d, rec.x_mid, KernelSeed::bottom);
          double diff = 0;
          for (size_t i = 0; i < top.v.size(); ++i) diff = std::max(diff, std::abs(top.v[i] - bottom.v[i]));
          CHECK(diff < 1e-6);

          // Dense nullspace oracle.
          const int n = N + 1;
          const auto flat = tridiag_matrix(fam, N).specialize(rec.x_mid, d.get_d());
          Eigen::MatrixXd M(n, n);
          for (int r = 0; r < n; ++r)
            for (int col = 0; col < n; ++col) M(r, col) = flat[r * n + col];
          Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
          Eigen::VectorXd null = svd.matrixV().col(n - 1);
          Eigen::VectorXd ours = Eigen::Map<const Eigen::VectorXd>(kv.v.data(), n);
          CHECK(std::abs(std::abs(null.dot(ours)) - 1.0) < 1e-6);
        }
      }
}

TEST_CASE("identity at eps = 1/2") {
  CHECK(verify_identity_half(1).passed());
  CHECK(constraint_poly({2, 1, Variant::tilde}, 2) == (2 * X + D - c(2)) * (X + D) - c(2) * X);
  IdentityReport zero = verify_identity_half(0);
  CHECK(zero.passed());
  IdentityReport twelve = verify_identity_half(12);
  CHECK(twelve.passed());
  CHECK(twelve.to_json()["checked_k"] == 13);
  CHECK_FALSE(verify_identity_half(4, FaultInjection{2}).passed());
}

TEST_CASE("conjecture examples") {
  for (int N = 1; N <= 5; ++N) {
    ConjectureReport r0 = verify_conjecture(N, 0);
    CHECK(r0.passed());
    REQUIRE(r0.quotient);
    CHECK(*r0.quotient == c(1));

    ConjectureReport r1 = verify_conjecture(N, 1);
    CHECK(r1.passed());
    CHECK(*r1.quotient == Integer(N + 1) * X + D);
  }
  std::vector<GridPoint> grid{{1, 1}, {4, make_rational(1, 4)}, {10, 2}};
  ConjectureReport r2 = verify_conjecture(2, 2, grid);
  CHECK(r2.remainder_zero);
  CHECK(r2.positive_on_grid);
  CHECK(r2.grid.size() == default_conjecture_grid().size() + grid.size());

  ConjectureReport broken = verify_conjecture(3, 1, {}, FaultInjection{1});
  CHECK_FALSE(broken.passed());
}
