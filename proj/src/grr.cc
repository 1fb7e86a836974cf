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

#include "brcomp/grr.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "numeric.h"

namespace brcomp {
namespace {

using internal::kNegInf;

double LogOrNegInf(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

double LogSumExp(const std::vector<double>& v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

std::vector<double> ColumnSums(const BitMatrix& m, int d) {
  std::vector<double> sums(d, 0.0);
  for (const auto& row : m) {
    for (int j = 0; j < d; ++j) sums[j] += row[j] ? 1.0 : 0.0;
  }
  return sums;
}

absl::Status CheckBitMatrix(const BitMatrix& m, int d) {
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != d) {
      return absl::InvalidArgumentError(
          absl::StrCat("bit matrix row has ", row.size(), " entries, expected ",
                       d));
    }
    for (uint8_t b : row) {
      if (b > 1) return absl::InvalidArgumentError("bit matrix entry not 0/1");
    }
  }
  return absl::OkStatus();
}

}  // namespace

GrrProbs GrrProbsUnchecked(double eps, double t) {
  t = std::clamp(t, 0.0, eps);
  GrrProbs g;
  const double den = std::expm1(-eps);
  g.q = std::expm1(t - eps) / den;
  g.one_minus_p = std::expm1(-t) / den;
  g.p = std::exp(-t) * g.q;
  g.one_minus_q = std::exp(t - eps) * g.one_minus_p;
  g.log_q = LogOrNegInf(g.q);
  g.log_p = g.log_q == kNegInf ? kNegInf : g.log_q - t;
  g.log_one_minus_p = LogOrNegInf(g.one_minus_p);
  g.log_one_minus_q =
      g.log_one_minus_p == kNegInf ? kNegInf : g.log_one_minus_p + t - eps;
  return g;
}

absl::StatusOr<GrrProbs> ComputeGrrProbs(double eps, double t) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps must be positive and finite, got ", eps));
  }
  if (!(t >= 0.0 && t <= eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("t must lie in [0, eps], got t=", t, " eps=", eps));
  }
  return GrrProbsUnchecked(eps, t);
}

absl::Status ValidatePair(const FiniteMechanismPair& pair) {
  if (pair.probs_x.empty() ||
      pair.probs_x.size() != pair.probs_x_prime.size()) {
    return absl::InvalidArgumentError(
        "probability vectors must be nonempty and of equal length");
  }
  for (const auto* v : {&pair.probs_x, &pair.probs_x_prime}) {
    double s = 0.0;
    for (double x : *v) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        return absl::InvalidArgumentError("probabilities must be nonnegative");
      }
      s += x;
    }
    if (std::fabs(s - 1.0) > 1e-12 * static_cast<double>(v->size())) {
      return absl::InvalidArgumentError(
          absl::StrCat("probabilities sum to ", s, ", not 1"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::optional<double>> BrWitness(const FiniteMechanismPair& pair,
                                                double eps) {
  if (absl::Status s = ValidatePair(pair); !s.ok()) return s;
  if (!(eps >= 0.0)) return absl::InvalidArgumentError("eps must be >= 0");
  double max_r = -std::numeric_limits<double>::infinity();
  double min_r = std::numeric_limits<double>::infinity();
  for (size_t y = 0; y < pair.probs_x.size(); ++y) {
    const double a = pair.probs_x[y];
    const double b = pair.probs_x_prime[y];
    if (a == 0.0 && b == 0.0) continue;
    if (a == 0.0 || b == 0.0) return std::optional<double>();
    const double r = std::log(a) - std::log(b);
    max_r = std::max(max_r, r);
    min_r = std::min(min_r, r);
  }
  const double lo = std::max(max_r, 0.0);
  const double hi = std::min(min_r + eps, eps);
  if (lo > hi + kBrSlack) return std::optional<double>();
  return std::optional<double>(std::clamp(lo, 0.0, eps));
}

absl::Status ValidateTable(const QualityScoreTable& table) {
  if (table.scores.empty() || table.scores[0].empty()) {
    return absl::InvalidArgumentError("score table needs a dataset and outcome");
  }
  const size_t cols = table.scores[0].size();
  for (const auto& row : table.scores) {
    if (row.size() != cols) {
      return absl::InvalidArgumentError("score table rows differ in length");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError("score table has non-finite entry");
      }
    }
  }
  const int n = static_cast<int>(table.scores.size());
  for (const auto& [a, b] : table.neighbors) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      return absl::InvalidArgumentError(
          absl::StrCat("neighbor pair (", a, ", ", b, ") out of range"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<QualityScoreTable> ParseQualityScoreTable(
    const std::string& json) {
  QualityScoreTable table;
  try {
    auto j = nlohmann::json::parse(json);
    table.scores = j.at("scores").get<std::vector<std::vector<double>>>();
    for (const auto& pr : j.at("neighbors")) {
      if (pr.size() != 2) {
        return absl::InvalidArgumentError("neighbor entries must be pairs");
      }
      table.neighbors.emplace_back(pr[0].get<int>(), pr[1].get<int>());
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed score table: ", e.what()));
  }
  if (absl::Status s = ValidateTable(table); !s.ok()) return s;
  return table;
}

absl::StatusOr<double> QualityRange(const QualityScoreTable& table) {
  if (absl::Status s = ValidateTable(table); !s.ok()) return s;
  if (table.neighbors.empty()) {
    return absl::InvalidArgumentError("neighbor list is empty");
  }
  double range = 0.0;
  for (const auto& [a, b] : table.neighbors) {
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (size_t y = 0; y < table.scores[a].size(); ++y) {
      const double d = table.scores[a][y] - table.scores[b][y];
      hi = std::max(hi, d);
      lo = std::min(lo, d);
    }
    range = std::max(range, hi - lo);
  }
  return range;
}

absl::StatusOr<double> QualitySensitivity(const QualityScoreTable& table) {
  if (absl::Status s = ValidateTable(table); !s.ok()) return s;
  if (table.neighbors.empty()) {
    return absl::InvalidArgumentError("neighbor list is empty");
  }
  double sens = 0.0;
  for (const auto& [a, b] : table.neighbors) {
    for (size_t y = 0; y < table.scores[a].size(); ++y) {
      sens = std::max(sens, std::fabs(table.scores[a][y] - table.scores[b][y]));
    }
  }
  return sens;
}

absl::StatusOr<ExpMechResult> ExpMechProbs(const QualityScoreTable& table,
                                           double eps, int dataset,
                                           Normalizer normalizer) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError("eps must be nonnegative and finite");
  }
  if (absl::Status s = ValidateTable(table); !s.ok()) return s;
  if (dataset < 0 || dataset >= static_cast<int>(table.scores.size())) {
    return absl::InvalidArgumentError("dataset index out of range");
  }
  absl::StatusOr<double> c = normalizer == Normalizer::kRange
                                 ? QualityRange(table)
                                 : QualitySensitivity(table);
  if (!c.ok()) return c.status();
  const double scale = normalizer == Normalizer::kRange ? *c : 2.0 * *c;
  const auto& row = table.scores[dataset];
  ExpMechResult out;
  if (scale == 0.0) {
    out.degenerate = true;
    out.probs.assign(row.size(), 1.0 / static_cast<double>(row.size()));
    return out;
  }
  std::vector<double> logits(row.size());
  for (size_t y = 0; y < row.size(); ++y) logits[y] = eps * row[y] / scale;
  const double lz = LogSumExp(logits);
  out.probs.resize(row.size());
  for (size_t y = 0; y < row.size(); ++y) {
    out.probs[y] = std::exp(logits[y] - lz);
  }
  return out;
}

absl::StatusOr<std::vector<double>> CountingQueryProbs(const BitMatrix& data,
                                                       int num_columns,
                                                       double eps) {
  if (num_columns < 1) return absl::InvalidArgumentError("need d >= 1");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError("eps must be nonnegative and finite");
  }
  if (absl::Status s = CheckBitMatrix(data, num_columns); !s.ok()) return s;
  std::vector<double> logits = ColumnSums(data, num_columns);
  for (double& v : logits) v *= eps;
  const double lz = LogSumExp(logits);
  std::vector<double> probs(num_columns);
  for (int j = 0; j < num_columns; ++j) probs[j] = std::exp(logits[j] - lz);
  return probs;
}

absl::StatusOr<double> CqTValue(const BitMatrix& x, const BitMatrix& x_prime,
                                int num_columns, double eps) {
  if (num_columns < 1) return absl::InvalidArgumentError("need d >= 1");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError("eps must be nonnegative and finite");
  }
  if (absl::Status s = CheckBitMatrix(x, num_columns); !s.ok()) return s;
  if (absl::Status s = CheckBitMatrix(x_prime, num_columns); !s.ok()) return s;
  const auto nx = static_cast<int64_t>(x.size());
  const auto ny = static_cast<int64_t>(x_prime.size());
  if (nx - ny != 1 && ny - nx != 1) {
    return absl::InvalidArgumentError(
        "neighboring matrices must differ by exactly one row");
  }
  auto log_z = [&](const BitMatrix& m) {
    std::vector<double> logits = ColumnSums(m, num_columns);
    for (double& v : logits) v *= eps;
    return LogSumExp(logits);
  };
  const double big = nx > ny ? log_z(x) : log_z(x_prime);
  const double small = nx > ny ? log_z(x_prime) : log_z(x);
  return big - small;
}

}  // namespace brcomp
