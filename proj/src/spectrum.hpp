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

#ifndef AQRM_SPECTRUM_HPP_
#define AQRM_SPECTRUM_HPP_

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "constraint.hpp"
#include "json.hpp"

// Truncated Fock x spin diagonalisation of a^dag a + Delta sigma_z + g sigma_x (a^dag + a) + eps sigma_x.
// In the sigma_x eigenbasis the Hamiltonian is two (n_max+1)-blocks
// a^dag a +/- g(a^dag + a) +/- eps coupled by Delta times the identity.
namespace aqrm::spectrum {

struct ModelParams {
  double g = 0.0;
  double delta = 0.0;
  double eps = 0.0;
};

inline constexpr int kDefaultNmax = 60;
inline constexpr int kEscalatedNmax = 120;
inline constexpr int kConvergenceOffset = 20;
inline constexpr double kConvergenceTol = 1e-9;

/// AQRM_NMAX when set to a positive integer, otherwise 60.
int default_nmax();

/// Throws std::invalid_argument for n_max < 1 or non-finite parameters.
Eigen::MatrixXd build_hamiltonian(const ModelParams& p, int n_max);

/// Ascending eigenvalues of build_hamiltonian(p, n_max).
std::vector<double> eigenvalues(const ModelParams& p, int n_max);

struct TruncatedSpectrum {
  int n_max = 0;
  std::vector<double> eigenvalues;
  /// Agrees with the n_max+20 run within 1e-9.
  std::vector<bool> converged;

  bool lowest_converged(size_t count) const;
};

TruncatedSpectrum diagonalize(const ModelParams& p, int n_max);

/// Starts at n_max and moves to 120 when any of the lowest `needed`
/// eigenvalues fails the convergence test.
TruncatedSpectrum diagonalize_auto(const ModelParams& p, size_t needed, int n_max = default_nmax());

struct SpectralSweep {
  double delta = 0.0;
  double eps = 0.0;
  int n_max = 0;
  std::vector<double> g_grid;
  /// Lowest `count` eigenvalues per grid point.
  std::vector<std::vector<double>> curves;  // curves[grid point][level]
  std::vector<std::vector<bool>> converged;

  /// g,index,eigenvalue,converged
  std::string to_csv() const;
  nlohmann::json to_json() const;
};

/// Throws std::invalid_argument when g_grid is empty or not ascending.
SpectralSweep sweep(double delta, double eps, const std::vector<double>& g_grid, int n_max, size_t count);

struct GapRecord {
  size_t index = 0;  // pair (index, index+1)
  double g_at_min = 0.0;
  double min_gap = 0.0;
};

/// Smallest gap of every adjacent pair of curves over the grid.
std::vector<GapRecord> min_gap_scan(const SpectralSweep& s);

struct CrossingObservation {
  double g_star = 0.0;
  double lambda_star = 0.0;  // midpoint of the pair
  double gap = 0.0;
  std::pair<size_t, size_t> indices{0, 1};
  double target = 0.0;
  double target_distance = 0.0;  // |lambda_star - target|
  int n_max = 0;
  nlohmann::json to_json() const;
};

/// The two eigenvalues closest to `target`.
CrossingObservation observe_degeneracy(const ModelParams& p, double target, int n_max);

/// Diagonalises at the record's g and requires a pair within tol of each
/// other and of N - g^2 + eps. Throws VerificationError otherwise.
CrossingObservation confirm_crossing(const constraint::CrossingRecord& rec, int n_max, double tol);

struct NondegenerateObservation {
  double lambda_target = 0.0;
  double nearest = 0.0;
  double distance = 0.0;
  double neighbor_gap = 0.0;
  nlohmann::json to_json() const;
};

/// Nearest eigenvalue to `target` and its distance to the closest other one.
NondegenerateObservation observe_isolated(const ModelParams& p, double target, int n_max);

}  // namespace aqrm::spectrum

#endif  // AQRM_SPECTRUM_HPP_
