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

#ifndef BRCOMP_MGF_H_
#define BRCOMP_MGF_H_

#include <vector>

#include "absl/status/statusor.h"

namespace brcomp {

enum class UFunctionKind {
  kImprovedDrv10,
  kDr19,
  kKlImprovedDr19,
  kGeneralMgf,
};

struct LambdaSearch {
  double lambda_max = 1e6;
  double rel_tol = 1e-10;
};

// Max KL divergence of a GRR pair over t in [0, eps].
double MaxKl(double eps);

// sup_t lambda (eps - t) + log(1 + p_t (e^{-lambda eps} - 1)).
double HEps(double eps, double lambda);

double UFunction(UFunctionKind kind, double eps, double lambda);

struct BoundResult {
  double value = 0.0;
  double lambda = 0.0;
  // The optimizing lambda sits on lambda_max.
  bool at_lambda_ceiling = false;
  // Vacuous delta (1) or an eps_g capped at the sum of eps.
  bool capped = false;
};

absl::Status ValidateEpsList(const std::vector<double>& eps_list);

// inf over lambda of exp(-lambda eps_g + sum_i U(eps_i, lambda)).
absl::StatusOr<BoundResult> GenericDeltaFromU(
    UFunctionKind kind, const std::vector<double>& eps_list, double eps_g,
    const LambdaSearch& search = {});

// Smallest eps_g with GenericDeltaFromU <= delta_g, capped at sum eps.
absl::StatusOr<BoundResult> GenericEpsilonFromU(
    UFunctionKind kind, const std::vector<double>& eps_list, double delta_g,
    const LambdaSearch& search = {});

absl::StatusOr<double> OptKlEpsilon(const std::vector<double>& eps_list,
                                    double delta_g);

absl::StatusOr<BoundResult> MgfDelta(const std::vector<double>& eps_list,
                                     double eps_g,
                                     const LambdaSearch& search = {});
absl::StatusOr<BoundResult> MgfEpsilon(const std::vector<double>& eps_list,
                                       double delta_g,
                                       const LambdaSearch& search = {});

absl::StatusOr<double> BasicComposition(const std::vector<double>& eps_list);

}  // namespace brcomp

#endif  // BRCOMP_MGF_H_
