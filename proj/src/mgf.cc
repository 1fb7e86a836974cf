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

#include "brcomp/mgf.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "brcomp/grr.h"
#include "numeric.h"

namespace brcomp {
namespace {

using internal::LogExpm1;
using internal::MaximizeBrent;

constexpr int kHGridPoints = 256;
constexpr int kHGeometricPoints = 48;  // Quarter decades down to 1e-12.
constexpr double kMaxKlSeriesCutoff = 1.0;
constexpr double kLambdaFloor = 1e-12;

using Grouped = std::vector<std::pair<double, double>>;  // (eps, count).

Grouped Group(const std::vector<double>& eps_list) {
  std::map<double, double> counts;
  for (double e : eps_list) {
    if (e > 0.0) counts[e] += 1.0;
  }
  return Grouped(counts.begin(), counts.end());
}

double SumU(UFunctionKind kind, const Grouped& g, double lambda) {
  double s = 0.0;
  for (const auto& [e, c] : g) s += c * UFunction(kind, e, lambda);
  return s;
}

struct Minimum {
  double lambda;
  double value;
};

// Minimizes a function of lambda that is unimodal in log(lambda) over
// (0, lambda_max].
template <typename F>
Minimum MinimizeOverLambda(F f, double lambda_max) {
  double lam = std::min(1.0, lambda_max);
  double v = f(lam);
  double lo = lam;
  double hi = lam;
  bool went_up = false;
  if (lam < lambda_max) {
    double prev = lam;
    while (lam < lambda_max) {
      const double next = std::min(lam * 2.0, lambda_max);
      const double vn = f(next);
      if (vn >= v) {
        hi = next;
        break;
      }
      went_up = true;
      prev = lam;
      lam = next;
      v = vn;
      hi = lam;
    }
    lo = prev;
  }
  if (!went_up) {
    double up = std::min(lam * 2.0, lambda_max);
    while (lam > kLambdaFloor) {
      const double next = lam * 0.5;
      const double vn = f(next);
      if (vn >= v) break;
      up = lam;
      lam = next;
      v = vn;
    }
    lo = lam * 0.5;
    hi = up;
  }
  if (!(hi > lo)) return {lam, v};
  auto g = [&](double u) { return -f(std::exp(u)); };
  auto [u, neg] = MaximizeBrent(g, std::log(lo), std::log(hi), 200);
  if (-neg < v) return {std::exp(u), -neg};
  return {lam, v};
}

}  // namespace

double MaxKl(double eps) {
  if (eps <= 0.0) return 0.0;
  if (eps >= kMaxKlSeriesCutoff) {
    // x = eps / (e^eps - 1); maxkl = x - 1 - log x.
    const double log_x = std::log(eps) - LogExpm1(eps);
    return std::exp(log_x) - 1.0 - log_x;
  }
  // y = x - 1 = -(e^eps - 1 - eps) / (e^eps - 1), summed termwise.
  double s = 0.0;
  double term = eps;
  for (int n = 2; n < 40; ++n) {
    term *= eps / n;
    s += term;
    if (term < 1e-18 * s) break;
  }
  const double y = -s / std::expm1(eps);
  // y - log1p(y) = sum_{n>=2} (-y)^n / n.
  double out = 0.0;
  double pw = -y;
  for (int n = 2; n < 200; ++n) {
    pw *= -y;
    const double add = pw / n;
    out += add;
    if (std::fabs(add) < 1e-18 * out) break;
  }
  return out;
}

double HEps(double eps, double lambda) {
  if (!(eps > 0.0) || !(lambda > 0.0)) return 0.0;
  const double em = std::expm1(-lambda * eps);
  auto g = [&](double t) {
    const double p = GrrProbsUnchecked(eps, t).p;
    return lambda * (eps - t) + std::log1p(p * em);
  };
  std::vector<double> ts;
  ts.reserve(kHGridPoints + 2 * kHGeometricPoints);
  for (int i = 0; i < kHGridPoints; ++i) {
    ts.push_back(eps * i / (kHGridPoints - 1));
  }
  for (int j = 4; j <= kHGeometricPoints; ++j) {
    const double d = eps * std::pow(10.0, -0.25 * j);
    ts.push_back(d);
    ts.push_back(eps - d);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  size_t best_i = 0;
  double best = g(ts[0]);
  for (size_t i = 1; i < ts.size(); ++i) {
    const double v = g(ts[i]);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = ts[best_i == 0 ? 0 : best_i - 1];
  const double hi = ts[std::min(best_i + 1, ts.size() - 1)];
  auto [t, v] = MaximizeBrent(g, lo, hi, 200);
  (void)t;
  return std::max({best, v, 0.0});
}

double UFunction(UFunctionKind kind, double eps, double lambda) {
  const double e2 = eps * eps;
  switch (kind) {
    case UFunctionKind::kImprovedDrv10:
      return 0.5 * e2 * (lambda * lambda + lambda);
    case UFunctionKind::kDr19:
      return 0.5 * e2 * (0.25 * lambda * lambda + lambda);
    case UFunctionKind::kKlImprovedDr19:
      return 0.125 * e2 * lambda * lambda + lambda * MaxKl(eps);
    case UFunctionKind::kGeneralMgf:
      return HEps(eps, lambda);
  }
  return 0.0;
}

absl::Status ValidateEpsList(const std::vector<double>& eps_list) {
  for (double e : eps_list) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      return absl::InvalidArgumentError(
          absl::StrCat("eps entries must be nonnegative and finite, got ", e));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<BoundResult> GenericDeltaFromU(
    UFunctionKind kind, const std::vector<double>& eps_list, double eps_g,
    const LambdaSearch& search) {
  if (absl::Status s = ValidateEpsList(eps_list); !s.ok()) return s;
  if (std::isnan(eps_g)) return absl::InvalidArgumentError("eps_g is NaN");
  if (!(search.lambda_max > 0.0)) {
    return absl::InvalidArgumentError("lambda_max must be positive");
  }
  const Grouped g = Group(eps_list);
  BoundResult out;
  if (g.empty()) {
    out.value = eps_g >= 0.0 ? 0.0 : 1.0;
    out.capped = eps_g < 0.0;
    return out;
  }
  auto phi = [&](double lambda) {
    return -lambda * eps_g + SumU(kind, g, lambda);
  };
  const Minimum m = MinimizeOverLambda(phi, search.lambda_max);
  out.lambda = m.lambda;
  out.at_lambda_ceiling = m.lambda >= search.lambda_max * (1.0 - 1e-9);
  if (m.value >= 0.0) {
    out.value = 1.0;
    out.capped = true;
  } else {
    out.value = std::exp(m.value);
  }
  return out;
}

absl::StatusOr<BoundResult> GenericEpsilonFromU(
    UFunctionKind kind, const std::vector<double>& eps_list, double delta_g,
    const LambdaSearch& search) {
  if (absl::Status s = ValidateEpsList(eps_list); !s.ok()) return s;
  if (!(delta_g > 0.0 && delta_g < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta_g must lie in (0, 1), got ", delta_g));
  }
  if (!(search.lambda_max > 0.0)) {
    return absl::InvalidArgumentError("lambda_max must be positive");
  }
  const Grouped g = Group(eps_list);
  BoundResult out;
  if (g.empty()) return out;
  double total = 0.0;
  for (const auto& [e, c] : g) total += c * e;
  const double log_inv = -std::log(delta_g);
  // eps_g(delta) = inf_lambda (sum U(lambda) + log(1/delta)) / lambda.
  auto psi = [&](double lambda) {
    return (SumU(kind, g, lambda) + log_inv) / lambda;
  };
  const Minimum m = MinimizeOverLambda(psi, search.lambda_max);
  out.lambda = m.lambda;
  out.at_lambda_ceiling = m.lambda >= search.lambda_max * (1.0 - 1e-9);
  if (m.value >= total) {
    out.value = total;
    out.capped = true;
  } else {
    out.value = m.value;
  }
  return out;
}

absl::StatusOr<double> OptKlEpsilon(const std::vector<double>& eps_list,
                                    double delta_g) {
  if (absl::Status s = ValidateEpsList(eps_list); !s.ok()) return s;
  if (!(delta_g > 0.0 && delta_g < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta_g must lie in (0, 1), got ", delta_g));
  }
  double total = 0.0;
  double kl = 0.0;
  double sq = 0.0;
  for (double e : eps_list) {
    total += e;
    kl += MaxKl(e);
    sq += e * e;
  }
  return std::min(total, kl + std::sqrt(0.5 * sq * std::log(1.0 / delta_g)));
}

absl::StatusOr<BoundResult> MgfDelta(const std::vector<double>& eps_list,
                                     double eps_g, const LambdaSearch& search) {
  return GenericDeltaFromU(UFunctionKind::kGeneralMgf, eps_list, eps_g, search);
}

absl::StatusOr<BoundResult> MgfEpsilon(const std::vector<double>& eps_list,
                                       double delta_g,
                                       const LambdaSearch& search) {
  return GenericEpsilonFromU(UFunctionKind::kGeneralMgf, eps_list, delta_g,
                             search);
}

absl::StatusOr<double> BasicComposition(const std::vector<double>& eps_list) {
  if (absl::Status s = ValidateEpsList(eps_list); !s.ok()) return s;
  double total = 0.0;
  for (double e : eps_list) total += e;
  return total;
}

}  // namespace brcomp
