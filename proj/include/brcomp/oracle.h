// Copyright 2026 The brcomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BRCOMP_ORACLE_H_
#define BRCOMP_ORACLE_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "brcomp/adaptive.h"
#include "brcomp/grr.h"

namespace brcomp {

// sum_y max{P(y) - e^{eps_g} Q(y), 0}.
absl::StatusOr<double> HockeyStick(const FiniteMechanismPair& pair,
                                   double eps_g);

inline constexpr int kMaxBruteForceK = 3;

struct BruteForceResult {
  double delta = 0.0;
  std::vector<double> argmax;
  // Best value on the product grid before local refinement.
  double grid_delta = 0.0;
  // Lipschitz estimate times half the grid spacing.
  double resolution_bound = 0.0;
};

// Product-grid search over t in prod [0, eps_i] followed by a pattern search
// from the best grid point.
absl::StatusOr<BruteForceResult> BruteForceNonadaptive(
    const std::vector<double>& eps_list, double eps_g, int grid_points);

// Same search applied to the edge-region objective
// prod q_{t_i} * max{1 - e^{eps_g - sum t}, 0}  (high) or
// 1 - e^{eps_g} + prod (1 - q_{t_i}) (e^{eps_g + k eps - sum t} - 1)  (low).
absl::StatusOr<BruteForceResult> BruteForceEdge(double eps, int k,
                                                double eps_g, bool high,
                                                int grid_points);

struct SimulationReport {
  double delta_hat = 0.0;
  int64_t n_samples = 0;
  uint64_t seed = 0;
  double half_width_95 = 0.0;
  double p_tail = 0.0;  // Empirical P[L > eps_g] on the first dataset.
  double q_tail = 0.0;  // Empirical Q[L > eps_g] on the neighbor.
};

inline constexpr int kSimulationShards = 16;

// Plays the adaptive composition game n times on each dataset; threads <= 0
// uses the hardware concurrency. Results do not depend on the thread count.
absl::StatusOr<SimulationReport> SimulateAdaptiveGame(
    const AdversaryStrategy& strategy, const std::vector<double>& eps_list,
    double eps_g, int64_t n, uint64_t seed, int threads = 0);

struct FEllReference {
  double value = 0.0;
  double derivative = 0.0;  // Central difference, step 1e-45 eps.
};

// F_ell(t) and its derivative evaluated in 100-digit arithmetic directly from
// the binomial outcome sums.
absl::StatusOr<FEllReference> FEllHighPrecision(double eps, int64_t k,
                                                double eps_g, int64_t ell,
                                                double t);

// Worst relative error between central differences with step
// h = rel_step * scale and df over `points`; denominators are floored at
// `floor`.
double FiniteDiffCheck(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       const std::vector<double>& points, double scale,
                       double rel_step = 1e-6, double floor = 1e-6);

}  // namespace brcomp

#endif  // BRCOMP_ORACLE_H_
