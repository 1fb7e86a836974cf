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

#ifndef BRCOMP_GRR_H_
#define BRCOMP_GRR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace brcomp {

// Generalized randomized response with parameters (eps, t). Outcome 0 has
// probability q on the first dataset and p on its neighbor.
struct GrrProbs {
  double p = 1.0;
  double q = 1.0;
  double one_minus_p = 0.0;
  double one_minus_q = 0.0;
  double log_p = 0.0;
  double log_q = 0.0;
  double log_one_minus_p = 0.0;
  double log_one_minus_q = 0.0;
};

// Requires eps > 0 and 0 <= t <= eps.
absl::StatusOr<GrrProbs> ComputeGrrProbs(double eps, double t);

// No validation; t is clamped into [0, eps]. Requires eps > 0.
GrrProbs GrrProbsUnchecked(double eps, double t);

// Probability vectors of one mechanism on two neighboring datasets.
struct FiniteMechanismPair {
  std::vector<double> probs_x;
  std::vector<double> probs_x_prime;
};

absl::Status ValidatePair(const FiniteMechanismPair& pair);

// Smallest t in [0, eps] with t - eps <= log(P(y)/Q(y)) <= t for every
// outcome with positive mass, or nullopt when the pair is not eps-BR.
// Comparisons use an absolute slack of kBrSlack.
inline constexpr double kBrSlack = 1e-9;
absl::StatusOr<std::optional<double>> BrWitness(const FiniteMechanismPair& pair,
                                                double eps);

// Quality scores u(x, y): rows are datasets, columns are outcomes.
struct QualityScoreTable {
  std::vector<std::vector<double>> scores;
  std::vector<std::pair<int, int>> neighbors;
};

absl::Status ValidateTable(const QualityScoreTable& table);

// Parses {"scores": [[...], ...], "neighbors": [[i, j], ...]}.
absl::StatusOr<QualityScoreTable> ParseQualityScoreTable(
    const std::string& json);

// sup over neighbors of max_y diff - min_y diff, diff = u(x,y) - u(x',y).
absl::StatusOr<double> QualityRange(const QualityScoreTable& table);

// max over neighbors and outcomes of |u(x,y) - u(x',y)|.
absl::StatusOr<double> QualitySensitivity(const QualityScoreTable& table);

enum class Normalizer { kSensitivity, kRange };

struct ExpMechResult {
  std::vector<double> probs;
  // Set when the normalizer is zero; probs is then uniform.
  bool degenerate = false;
};

// P(y) proportional to exp(eps * u(x, y) / c) where c = 2 * sensitivity or
// c = range.
absl::StatusOr<ExpMechResult> ExpMechProbs(const QualityScoreTable& table,
                                           double eps, int dataset,
                                           Normalizer normalizer);

using BitMatrix = std::vector<std::vector<uint8_t>>;

// P(j) proportional to exp(eps * column_sum_j(data)).
absl::StatusOr<std::vector<double>> CountingQueryProbs(const BitMatrix& data,
                                                       int num_columns,
                                                       double eps);

// The two matrices must differ by exactly one row (either may be the larger).
// Returns t = log(Z_larger / Z_smaller) for the normalizers Z of the counting
// query mechanism, so that log(P_smaller(j) / P_larger(j)) is t or t - eps.
absl::StatusOr<double> CqTValue(const BitMatrix& x, const BitMatrix& x_prime,
                                int num_columns, double eps);

}  // namespace brcomp

#endif  // BRCOMP_GRR_H_
