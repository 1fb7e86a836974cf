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

#ifndef BRCOMP_NONADAPTIVE_H_
#define BRCOMP_NONADAPTIVE_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace brcomp {

// Subset enumeration limit for heterogeneous formulas.
inline constexpr int kMaxSubsetK = 25;
inline constexpr double kTieTolerance = 1e-12;

struct HomogeneousQuery {
  double eps = 0.0;
  int64_t k = 1;
  double eps_g = 0.0;
};

absl::Status ValidateQuery(const HomogeneousQuery& q);

// delta^k(t, eps_g) for k copies of GRR(eps, t).
absl::StatusOr<double> DeltaHomFixedT(const HomogeneousQuery& q, double t);
double DeltaHomFixedTUnchecked(double eps, int64_t k, double t, double eps_g);

// Subset form for per-mechanism (eps_i, t_i); k <= kMaxSubsetK.
absl::StatusOr<double> DeltaHetFixedT(const std::vector<double>& eps_list,
                                      const std::vector<double>& t_list,
                                      double eps_g);

// (ell, t*_ell) for ell = 0..k, clamped into [0, eps].
std::vector<std::pair<int64_t, double>> CandidatePoints(
    const HomogeneousQuery& q);

struct NonadaptiveResult {
  double delta = 0.0;
  // Maximizer; smallest ell wins among values within kTieTolerance.
  double t = 0.0;
  // Candidate index of the maximizer; -1 for an endpoint or the constant
  // regime outside (-k eps, k eps).
  int64_t ell = -1;
  bool constant_region = false;
  // Every distinct candidate t within kTieTolerance of the maximum.
  std::vector<double> ties;
};

absl::StatusOr<NonadaptiveResult> DeltaOptNonadaptiveHom(
    const HomogeneousQuery& q);
NonadaptiveResult DeltaOptNonadaptiveHomUnchecked(double eps, int64_t k,
                                                  double eps_g);

// Partial sum over i <= ell without the positive-part clamp, and its
// closed-form t derivative.
absl::StatusOr<double> FEll(const HomogeneousQuery& q, int64_t ell, double t);
absl::StatusOr<double> DFEllDt(const HomogeneousQuery& q, int64_t ell,
                               double t);

// Optimal composition of k eps_dp-DP mechanisms.
absl::StatusOr<double> DpOptCompHom(double eps_dp, int64_t k, double eps_g);

// Heterogeneous DP optimal composition by subset enumeration.
absl::StatusOr<double> DpOptCompHet(const std::vector<double>& eps_list,
                                    double eps_g);

}  // namespace brcomp

#endif  // BRCOMP_NONADAPTIVE_H_
