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

#include "brcomp/nonadaptive.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "brcomp/grr.h"
#include "numeric.h"

namespace brcomp {
namespace {

using internal::KahanSum;
using internal::kNegInf;
using internal::LogChoose;
using internal::LogExpm1;
using internal::PowLog;

// Relative size of the neglected tail of the log-concave term sequence.
constexpr double kTailRelTol = 1e-17;

absl::Status CheckT(double eps, double t) {
  if (!(t >= 0.0 && t <= eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("t must lie in [0, eps], got t=", t, " eps=", eps));
  }
  return absl::OkStatus();
}

absl::Status CheckEpsList(const std::vector<double>& eps_list) {
  for (double e : eps_list) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      return absl::InvalidArgumentError(
          absl::StrCat("eps entries must be nonnegative, got ", e));
    }
  }
  return absl::OkStatus();
}

// Depth-first enumeration of the 2^k outcome sequences of heterogeneous GRR
// mechanisms. Each leaf sums its k contributions directly.
struct HetEnumerator {
  const std::vector<double>* eps;
  const std::vector<GrrProbs>* probs;
  const std::vector<double>* t;
  double eps_g;
  KahanSum sum;

  void Visit(size_t i, double log_q, double loss) {
    if (log_q == kNegInf) return;
    if (i == eps->size()) {
      if (loss > eps_g) {
        sum.Add(std::exp(log_q + eps_g + LogExpm1(loss - eps_g)));
      }
      return;
    }
    const GrrProbs& g = (*probs)[i];
    Visit(i + 1, log_q + g.log_p, loss + (*t)[i]);
    Visit(i + 1, log_q + g.log_one_minus_p, loss + (*t)[i] - (*eps)[i]);
  }
};

struct DpEnumerator {
  const std::vector<double>* eps;
  double eps_g;
  double log_z;
  KahanSum sum;

  void Visit(size_t i, double in_sum, double out_sum) {
    if (i == eps->size()) {
      if (in_sum - out_sum > eps_g) {
        sum.Add(std::exp(in_sum - log_z) *
                -std::expm1(eps_g + out_sum - in_sum));
      }
      return;
    }
    Visit(i + 1, in_sum + (*eps)[i], out_sum);
    Visit(i + 1, in_sum, out_sum + (*eps)[i]);
  }
};

}  // namespace

absl::Status ValidateQuery(const HomogeneousQuery& q) {
  if (!(q.eps > 0.0) || !std::isfinite(q.eps)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps must be positive and finite, got ", q.eps));
  }
  if (q.k < 1) {
    return absl::InvalidArgumentError(absl::StrCat("k must be >= 1, got ", q.k));
  }
  if (std::isnan(q.eps_g)) return absl::InvalidArgumentError("eps_g is NaN");
  return absl::OkStatus();
}

double DeltaHomFixedTUnchecked(double eps, int64_t k, double t, double eps_g) {
  const double keps = static_cast<double>(k) * eps;
  if (eps_g >= keps) return 0.0;
  if (eps_g <= -keps) return -std::expm1(eps_g);
  if (t <= 0.0 || t >= eps) return std::max(-std::expm1(eps_g), 0.0);
  const GrrProbs g = GrrProbsUnchecked(eps, t);
  // Term i has a positive bracket iff a - i * eps > 0.
  const double a = static_cast<double>(k) * t - eps_g;
  if (a <= 0.0) return 0.0;
  int64_t imax = std::min<int64_t>(
      k, static_cast<int64_t>(std::ceil(a / eps)) - 1);
  while (imax >= 0 && a - static_cast<double>(imax) * eps <= 0.0) --imax;
  while (imax + 1 <= k && a - static_cast<double>(imax + 1) * eps > 0.0) {
    ++imax;
  }
  if (imax < 0) return 0.0;
  auto log_term = [&](int64_t i) {
    return LogChoose(k, i) + PowLog(k - i, g.log_p) +
           PowLog(i, g.log_one_minus_p) + eps_g +
           LogExpm1(a - static_cast<double>(i) * eps);
  };
  // The sequence is log-concave in i: locate its mode, then sum outward
  // until the geometric tail bound is negligible.
  int64_t lo = 0;
  int64_t hi = imax;
  while (lo < hi) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (log_term(mid + 1) > log_term(mid)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  const int64_t mode = lo;
  const double l_mode = log_term(mode);
  KahanSum s;
  s.Add(1.0);
  double prev = l_mode;
  for (int64_t i = mode + 1; i <= imax; ++i) {
    const double li = log_term(i);
    const double w = std::exp(li - l_mode);
    s.Add(w);
    const double r = std::exp(li - prev);
    if (r < 1.0 && w * r / (1.0 - r) <= kTailRelTol * s.value()) break;
    prev = li;
  }
  prev = l_mode;
  for (int64_t i = mode - 1; i >= 0; --i) {
    const double li = log_term(i);
    const double w = std::exp(li - l_mode);
    s.Add(w);
    const double r = std::exp(li - prev);
    if (r < 1.0 && w * r / (1.0 - r) <= kTailRelTol * s.value()) break;
    prev = li;
  }
  return std::clamp(std::exp(l_mode) * s.value(), 0.0, 1.0);
}

absl::StatusOr<double> DeltaHomFixedT(const HomogeneousQuery& q, double t) {
  if (absl::Status s = ValidateQuery(q); !s.ok()) return s;
  if (absl::Status s = CheckT(q.eps, t); !s.ok()) return s;
  return DeltaHomFixedTUnchecked(q.eps, q.k, t, q.eps_g);
}

absl::StatusOr<double> DeltaHetFixedT(const std::vector<double>& eps_list,
                                      const std::vector<double>& t_list,
                                      double eps_g) {
  if (eps_list.size() != t_list.size()) {
    return absl::InvalidArgumentError("eps and t lists differ in length");
  }
  if (absl::Status s = CheckEpsList(eps_list); !s.ok()) return s;
  std::vector<double> eps;
  std::vector<double> ts;
  for (size_t i = 0; i < eps_list.size(); ++i) {
    if (eps_list[i] == 0.0) {
      if (t_list[i] != 0.0) {
        return absl::InvalidArgumentError("t must be 0 when eps is 0");
      }
      continue;
    }
    if (absl::Status s = CheckT(eps_list[i], t_list[i]); !s.ok()) return s;
    eps.push_back(eps_list[i]);
    ts.push_back(t_list[i]);
  }
  if (eps.size() > static_cast<size_t>(kMaxSubsetK)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "subset enumeration is capped at k = ", kMaxSubsetK, ", got ",
        eps.size()));
  }
  if (eps.empty()) return std::max(-std::expm1(eps_g), 0.0);
  std::vector<GrrProbs> probs;
  probs.reserve(eps.size());
  for (size_t i = 0; i < eps.size(); ++i) {
    probs.push_back(GrrProbsUnchecked(eps[i], ts[i]));
  }
  HetEnumerator e{&eps, &probs, &ts, eps_g, {}};
  e.Visit(0, 0.0, 0.0);
  return std::clamp(e.sum.value(), 0.0, 1.0);
}

std::vector<std::pair<int64_t, double>> CandidatePoints(
    const HomogeneousQuery& q) {
  std::vector<std::pair<int64_t, double>> out;
  out.reserve(static_cast<size_t>(q.k) + 1);
  for (int64_t ell = 0; ell <= q.k; ++ell) {
    const double t = (q.eps_g + static_cast<double>(ell + 1) * q.eps) /
                     static_cast<double>(q.k + 1);
    out.emplace_back(ell, std::clamp(t, 0.0, q.eps));
  }
  return out;
}

NonadaptiveResult DeltaOptNonadaptiveHomUnchecked(double eps, int64_t k,
                                                  double eps_g) {
  NonadaptiveResult res;
  const double keps = static_cast<double>(k) * eps;
  if (eps_g >= keps || eps_g <= -keps) {
    res.delta = std::max(-std::expm1(eps_g), 0.0);
    res.constant_region = true;
    res.t = 0.0;
    res.ties = {0.0};
    return res;
  }
  auto cands = CandidatePoints({eps, k, eps_g});
  cands.emplace_back(-1, 0.0);
  cands.emplace_back(-1, eps);
  std::vector<double> values(cands.size());
  double best = 0.0;
  for (size_t i = 0; i < cands.size(); ++i) {
    if (i > 0 && cands[i].second == cands[i - 1].second) {
      values[i] = values[i - 1];
    } else {
      values[i] = DeltaHomFixedTUnchecked(eps, k, cands[i].second, eps_g);
    }
    best = std::max(best, values[i]);
  }
  res.delta = best;
  bool found = false;
  for (size_t i = 0; i < cands.size(); ++i) {
    if (values[i] < best - kTieTolerance) continue;
    if (!found) {
      res.t = cands[i].second;
      res.ell = cands[i].first;
      found = true;
    }
    if (std::find(res.ties.begin(), res.ties.end(), cands[i].second) ==
        res.ties.end()) {
      res.ties.push_back(cands[i].second);
    }
  }
  return res;
}

absl::StatusOr<NonadaptiveResult> DeltaOptNonadaptiveHom(
    const HomogeneousQuery& q) {
  if (absl::Status s = ValidateQuery(q); !s.ok()) return s;
  return DeltaOptNonadaptiveHomUnchecked(q.eps, q.k, q.eps_g);
}

absl::StatusOr<double> FEll(const HomogeneousQuery& q, int64_t ell, double t) {
  if (absl::Status s = ValidateQuery(q); !s.ok()) return s;
  if (absl::Status s = CheckT(q.eps, t); !s.ok()) return s;
  if (ell < 0 || ell > q.k) {
    return absl::InvalidArgumentError(
        absl::StrCat("ell must lie in [0, k], got ", ell));
  }
  const GrrProbs g = GrrProbsUnchecked(q.eps, t);
  KahanSum s;
  for (int64_t i = 0; i <= ell; ++i) {
    const double lc = LogChoose(q.k, i);
    s.Add(std::exp(lc + PowLog(q.k - i, g.log_q) +
                   PowLog(i, g.log_one_minus_q)));
    s.Add(-std::exp(lc + q.eps_g + PowLog(q.k - i, g.log_p) +
                    PowLog(i, g.log_one_minus_p)));
  }
  return s.value();
}

absl::StatusOr<double> DFEllDt(const HomogeneousQuery& q, int64_t ell,
                               double t) {
  if (absl::Status s = ValidateQuery(q); !s.ok()) return s;
  if (absl::Status s = CheckT(q.eps, t); !s.ok()) return s;
  if (ell < 0 || ell > q.k) {
    return absl::InvalidArgumentError(
        absl::StrCat("ell must lie in [0, k], got ", ell));
  }
  if (ell == q.k) return 0.0;
  const GrrProbs g = GrrProbsUnchecked(q.eps, t);
  const double log_coef = std::log(static_cast<double>(q.k - ell)) +
                          LogChoose(q.k, ell) +
                          PowLog(q.k - 1 - ell, g.log_p) +
                          PowLog(ell, g.log_one_minus_p) -
                          std::log(-std::expm1(-q.eps));
  if (log_coef == kNegInf) return 0.0;
  const double bracket =
      std::exp(q.eps_g - t) -
      std::exp(static_cast<double>(q.k) * t -
               static_cast<double>(ell + 1) * q.eps);
  return std::exp(log_coef) * bracket;
}

absl::StatusOr<double> DpOptCompHom(double eps_dp, int64_t k, double eps_g) {
  if (!(eps_dp > 0.0) || !std::isfinite(eps_dp)) {
    return absl::InvalidArgumentError("eps_dp must be positive and finite");
  }
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  if (std::isnan(eps_g)) return absl::InvalidArgumentError("eps_g is NaN");
  return DeltaHomFixedTUnchecked(2.0 * eps_dp, k, eps_dp, eps_g);
}

absl::StatusOr<double> DpOptCompHet(const std::vector<double>& eps_list,
                                    double eps_g) {
  if (absl::Status s = CheckEpsList(eps_list); !s.ok()) return s;
  std::vector<double> eps;
  for (double e : eps_list) {
    if (e > 0.0) eps.push_back(e);
  }
  if (eps.size() > static_cast<size_t>(kMaxSubsetK)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "subset enumeration is capped at k = ", kMaxSubsetK, ", got ",
        eps.size()));
  }
  if (eps.empty()) return std::max(-std::expm1(eps_g), 0.0);
  double log_z = 0.0;
  for (double e : eps) log_z += e + std::log1p(std::exp(-e));
  DpEnumerator d{&eps, eps_g, log_z, {}};
  d.Visit(0, 0.0, 0.0);
  return std::clamp(d.sum.value(), 0.0, 1.0);
}

}  // namespace brcomp
