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

#ifndef BRCOMP_ADAPTIVE_H_
#define BRCOMP_ADAPTIVE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"

namespace brcomp {

struct AdaptiveSolverConfig {
  int t_grid = 64;
  int refine_iters = 20;
  int depth_cap = 6;
  // For identical eps, use the exact nonadaptive optimum in the edge regions
  // and as a candidate root strategy.
  bool use_nonadaptive_optimum = true;
};

// Hard limit on depth_cap; strategy trees have 2^k - 1 nodes.
inline constexpr int kMaxDepthCap = 20;
inline constexpr double kGapTolerance = 1e-7;

absl::Status ValidateConfig(const AdaptiveSolverConfig& cfg);

// Deterministic adversary choosing GRR parameters. Node n at depth d holds
// the t used for mechanism d + 1; its children are 2n + 1 (outcome 0) and
// 2n + 2 (outcome 1).
struct AdversaryStrategy {
  int depth = 0;
  std::vector<double> t;
};

AdversaryStrategy ConstantStrategy(const std::vector<double>& t_per_level);

absl::Status ValidateStrategy(const AdversaryStrategy& s,
                              const std::vector<double>& eps_list);

struct AdaptiveResult {
  // Value of `strategy`; a lower bound on the adaptive optimum.
  double delta = 0.0;
  // Value reported by the recursion before independent re-evaluation.
  double recursion_value = 0.0;
  AdversaryStrategy strategy;
  // Lattice dynamic program or plain per-level grid recursion.
  bool lattice = false;
};

absl::StatusOr<AdaptiveResult> DeltaAdaptiveLb(
    const std::vector<double>& eps_list, double eps_g,
    const AdaptiveSolverConfig& cfg);

// Exact hockey-stick value of an adaptive strategy by path enumeration.
absl::StatusOr<double> StrategyValue(const AdversaryStrategy& s,
                                     const std::vector<double>& eps_list,
                                     double eps_g);

// Equal-t closed forms on the edge regions eps_g >= (k-1) eps and
// eps_g <= -(k-1) eps.
absl::StatusOr<double> AdaptiveEdgeHigh(double eps, int64_t k, double eps_g);
absl::StatusOr<double> AdaptiveEdgeLow(double eps, int64_t k, double eps_g);

struct GapCertificate {
  double delta_nonadaptive = 0.0;
  double t_nonadaptive = 0.0;
  double delta_adaptive_lb = 0.0;
  double gap = 0.0;
  double tolerance = kGapTolerance;
  bool strict = false;
  AdversaryStrategy strategy;
};

absl::StatusOr<GapCertificate> ComputeGapCertificate(
    double eps, int64_t k, double eps_g, const AdaptiveSolverConfig& cfg);

}  // namespace brcomp

#endif  // BRCOMP_ADAPTIVE_H_
