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

#include "spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "errors.hpp"

namespace aqrm::spectrum {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::vector<size_t> nearest_indices(const std::vector<double>& ev, double target) {
  std::vector<size_t> idx(ev.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](size_t a, size_t b) { return std::abs(ev[a] - target) < std::abs(ev[b] - target); });
  return idx;
}

}  // namespace

int default_nmax() {
  if (const char* env = std::getenv("AQRM_NMAX")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4000) return static_cast<int>(v);
  }
  return kDefaultNmax;
}

Eigen::MatrixXd build_hamiltonian(const ModelParams& p, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (!std::isfinite(p.g) || !std::isfinite(p.delta) || !std::isfinite(p.eps))
    throw std::invalid_argument("model parameters must be finite");
  const int n = n_max + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    h(k, k) = k + p.eps;
    h(n + k, n + k) = k - p.eps;
    h(k, n + k) = p.delta;
    h(n + k, k) = p.delta;
    if (k + 1 < n) {
      const double ladder = p.g * std::sqrt(static_cast<double>(k + 1));
      h(k, k + 1) = h(k + 1, k) = ladder;
      h(n + k, n + k + 1) = h(n + k + 1, n + k) = -ladder;
    }
  }
  return h;
}

std::vector<double> eigenvalues(const ModelParams& p, int n_max) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_hamiltonian(p, n_max), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("symmetric eigensolver failed");
  const Eigen::VectorXd& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

bool TruncatedSpectrum::lowest_converged(size_t count) const {
  count = std::min(count, converged.size());
  return std::all_of(converged.begin(), converged.begin() + static_cast<std::ptrdiff_t>(count),
                     [](bool b) { return b; });
}

TruncatedSpectrum diagonalize(const ModelParams& p, int n_max) {
  TruncatedSpectrum s;
  s.n_max = n_max;
  s.eigenvalues = eigenvalues(p, n_max);
  const std::vector<double> reference = eigenvalues(p, n_max + kConvergenceOffset);
  s.converged.resize(s.eigenvalues.size());
  for (size_t i = 0; i < s.eigenvalues.size(); ++i)
    s.converged[i] = std::abs(s.eigenvalues[i] - reference[i]) < kConvergenceTol;
  return s;
}

TruncatedSpectrum diagonalize_auto(const ModelParams& p, size_t needed, int n_max) {
  TruncatedSpectrum s = diagonalize(p, n_max);
  if (!s.lowest_converged(needed) && n_max < kEscalatedNmax) s = diagonalize(p, kEscalatedNmax);
  return s;
}

std::string SpectralSweep::to_csv() const {
  std::ostringstream os;
  os << "g,index,eigenvalue,converged\n";
  for (size_t i = 0; i < g_grid.size(); ++i)
    for (size_t k = 0; k < curves[i].size(); ++k)
      os << fmt(g_grid[i]) << ',' << k << ',' << fmt(curves[i][k]) << ',' << (converged[i][k] ? 1 : 0) << '\n';
  return os.str();
}

nlohmann::json SpectralSweep::to_json() const {
  nlohmann::json points = nlohmann::json::array();
  for (size_t i = 0; i < g_grid.size(); ++i)
    points.push_back({{"g", g_grid[i]}, {"eigenvalues", curves[i]}, {"converged", converged[i]}});
  return {{"delta", delta}, {"eps", eps}, {"n_max", n_max}, {"points", points}};
}

SpectralSweep sweep(double delta, double eps, const std::vector<double>& g_grid, int n_max, size_t count) {
  if (g_grid.empty()) throw std::invalid_argument("empty g grid");
  if (!std::is_sorted(g_grid.begin(), g_grid.end())) throw std::invalid_argument("g grid must be ascending");
  SpectralSweep s;
  s.delta = delta;
  s.eps = eps;
  s.n_max = n_max;
  s.g_grid = g_grid;
  for (double g : g_grid) {
    TruncatedSpectrum t = diagonalize({g, delta, eps}, n_max);
    const size_t k = std::min(count, t.eigenvalues.size());
    s.curves.emplace_back(t.eigenvalues.begin(), t.eigenvalues.begin() + static_cast<std::ptrdiff_t>(k));
    s.converged.emplace_back(t.converged.begin(), t.converged.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return s;
}

std::vector<GapRecord> min_gap_scan(const SpectralSweep& s) {
  std::vector<GapRecord> out;
  if (s.curves.empty()) return out;
  const size_t count = s.curves.front().size();
  for (size_t k = 0; k + 1 < count; ++k) {
    GapRecord rec;
    rec.index = k;
    rec.min_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < s.g_grid.size(); ++i) {
      const double gap = s.curves[i][k + 1] - s.curves[i][k];
      if (gap < rec.min_gap) {
        rec.min_gap = gap;
        rec.g_at_min = s.g_grid[i];
      }
    }
    out.push_back(rec);
  }
  return out;
}

nlohmann::json CrossingObservation::to_json() const {
  return {{"g_star", g_star},
          {"lambda_star", lambda_star},
          {"gap", gap},
          {"indices", {indices.first, indices.second}},
          {"target", target},
          {"target_distance", target_distance},
          {"n_max", n_max}};
}

CrossingObservation observe_degeneracy(const ModelParams& p, double target, int n_max) {
  const std::vector<double> ev = eigenvalues(p, n_max);
  const std::vector<size_t> idx = nearest_indices(ev, target);
  CrossingObservation obs;
  obs.g_star = p.g;
  obs.indices = std::minmax(idx[0], idx[1]);
  obs.gap = ev[obs.indices.second] - ev[obs.indices.first];
  obs.lambda_star = 0.5 * (ev[obs.indices.first] + ev[obs.indices.second]);
  obs.target = target;
  obs.target_distance = std::abs(obs.lambda_star - target);
  obs.n_max = n_max;
  return obs;
}

CrossingObservation confirm_crossing(const constraint::CrossingRecord& rec, int n_max, double tol) {
  const ModelParams p{rec.g, std::sqrt(rec.d_value.get_d()), rec.two_eps / 2.0};
  CrossingObservation obs = observe_degeneracy(p, rec.lambda, n_max);
  if (obs.gap > tol || obs.target_distance > tol)
    throw VerificationError("crossing not confirmed: " + obs.to_json().dump());
  return obs;
}

nlohmann::json NondegenerateObservation::to_json() const {
  return {{"lambda_target", lambda_target}, {"nearest", nearest}, {"distance", distance}, {"neighbor_gap", neighbor_gap}};
}

NondegenerateObservation observe_isolated(const ModelParams& p, double target, int n_max) {
  const std::vector<double> ev = eigenvalues(p, n_max);
  const size_t i = nearest_indices(ev, target).front();
  NondegenerateObservation obs;
  obs.lambda_target = target;
  obs.nearest = ev[i];
  obs.distance = std::abs(ev[i] - target);
  obs.neighbor_gap = std::numeric_limits<double>::infinity();
  if (i > 0) obs.neighbor_gap = std::min(obs.neighbor_gap, ev[i] - ev[i - 1]);
  if (i + 1 < ev.size()) obs.neighbor_gap = std::min(obs.neighbor_gap, ev[i + 1] - ev[i]);
  return obs;
}

}  // namespace aqrm::spectrum
