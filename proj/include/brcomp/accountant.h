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

#ifndef BRCOMP_ACCOUNTANT_H_
#define BRCOMP_ACCOUNTANT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "brcomp/adaptive.h"
#include "brcomp/mgf.h"

namespace brcomp {

enum class Method {
  kBasic,
  kDpOptComp,
  kDpOptCompHalf,
  kBrOptComp,
  kAdaptiveLb,
  kDr19,
  kDrv10,
  kOptKl,
  kMgf,
  kEdgeHigh,
  kEdgeLow,
};

std::optional<Method> MethodFromName(const std::string& name);
const char* MethodName(Method m);
std::vector<Method> AllMethods();

struct AccountantOptions {
  LambdaSearch lambda;
  AdaptiveSolverConfig adaptive;
  // <= 0 means hardware concurrency.
  int threads = 0;
};

inline constexpr int64_t kMaxCurveK = 100000;
inline constexpr double kEpsilonTolerance = 1e-9;

struct AccountantValue {
  double value = 0.0;
  std::string meta;
};

// delta_g(eps_g) for the composition of mechanisms with parameters eps_list.
absl::StatusOr<AccountantValue> ComputeDelta(Method m,
                                             const std::vector<double>& eps,
                                             double eps_g,
                                             const AccountantOptions& opts);

// eps_g(delta_g), delta_g in (0, 1).
absl::StatusOr<AccountantValue> ComputeEpsilon(Method m,
                                               const std::vector<double>& eps,
                                               double delta_g,
                                               const AccountantOptions& opts);

struct CurveRow {
  int64_t k = 0;
  Method method = Method::kBasic;
  double eps = 0.0;
  double delta_g = 0.0;
  double eps_g = 0.0;
  std::string solver_meta;
};

// One row per (method, k), sorted by (method name, k).
absl::StatusOr<std::vector<CurveRow>> ComputeCurve(
    double eps, int64_t k_max, double delta_g,
    const std::vector<Method>& methods, const AccountantOptions& opts);

// Largest k with eps_g(k) <= budget for a homogeneous method, searching
// k in [1, k_limit]; 0 when even k = 1 exceeds the budget.
absl::StatusOr<int64_t> MaxQueries(Method m, double eps, double eps_g_budget,
                                   double delta_g, int64_t k_limit,
                                   const AccountantOptions& opts);

struct ValidationCheck {
  std::string check;
  std::string params;
  double expected = 0.0;
  double got = 0.0;
  double tol = 0.0;
  bool pass = false;
};

enum class ValidationLevel { kFast, kFull };

std::vector<ValidationCheck> RunValidation(ValidationLevel level,
                                           uint64_t seed, int threads = 0);

// Thread count from BRCOMP_THREADS, or the hardware concurrency.
int DefaultThreads();

}  // namespace brcomp

#endif  // BRCOMP_ACCOUNTANT_H_
