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

#include "brcomp/adaptive.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "brcomp/grr.h"
#include "brcomp/nonadaptive.h"
#include "numeric.h"

namespace brcomp {
namespace {

using internal::KahanSum;
using internal::kNegInf;
using internal::LogExpm1;
using internal::MaximizeBrent;

// Ratio tolerance when deciding that every eps is a multiple of the lattice
// step.
constexpr double kCommensurateTol = 1e-9;
// Work limits (inner-loop evaluations).
constexpr double kMaxLatticeWork = 4e9;
constexpr double kMaxRecursionWork = 2e9;
constexpr double kEdgeSlack = 1e-12;

double BaseValue(double x) { return std::max(-std::expm1(x), 0.0); }

// Shared description of a heterogeneous instance.
struct Instance {
  std::vector<double> eps;
  std::vector<double> suffix;  // suffix[i] = sum_{j >= i} eps[j].
  // tail_homog[i]: eps[i..k) are all equal.
  std::vector<bool> tail_homog;
  int t_grid = 64;
  bool use_nonadaptive_optimum = true;

  int k() const { return static_cast<int>(eps.size()); }

  // Exact value when x lies outside (-suffix, suffix), or the homogeneous
  // edge region where the nonadaptive optimum is adaptively optimal.
  // Returns false when no shortcut applies.
  bool Shortcut(int i, double x, double* value, double* t) const {
    if (x >= suffix[i]) {
      *value = 0.0;
      *t = 0.0;
      return true;
    }
    if (x <= -suffix[i]) {
      *value = -std::expm1(x);
      *t = 0.0;
      return true;
    }
    const int r = k() - i;
    if (r == 1 || (use_nonadaptive_optimum && tail_homog[i] &&
                   std::fabs(x) >= static_cast<double>(r - 1) * eps[i])) {
      NonadaptiveResult na = DeltaOptNonadaptiveHomUnchecked(eps[i], r, x);
      *value = na.delta;
      *t = na.t;
      return true;
    }
    return false;
  }
};

Instance MakeInstance(const std::vector<double>& eps,
                      const AdaptiveSolverConfig& cfg) {
  Instance in;
  in.eps = eps;
  in.t_grid = cfg.t_grid;
  in.use_nonadaptive_optimum = cfg.use_nonadaptive_optimum;
  const int k = in.k();
  in.suffix.assign(k + 1, 0.0);
  in.tail_homog.assign(k + 1, true);
  for (int i = k - 1; i >= 0; --i) {
    in.suffix[i] = in.suffix[i + 1] + eps[i];
    in.tail_homog[i] =
        (i == k - 1) || (in.tail_homog[i + 1] && eps[i] == eps[i + 1]);
  }
  return in;
}

void FillSubtree(AdversaryStrategy& s, int64_t node, double t) {
  if (node >= static_cast<int64_t>(s.t.size())) return;
  s.t[node] = t;
  FillSubtree(s, 2 * node + 1, t);
  FillSubtree(s, 2 * node + 2, t);
}

// Dynamic program over the lattice x = offset + j * h for levels 1..k-1.
// Every eps is m_i * h, so every state reachable through grid choices
// t = m * h stays on the lattice and memoization is exact.
class LatticeSolver {
 public:
  LatticeSolver(const Instance& in, double h, std::vector<int> steps)
      : in_(in), h_(h), steps_(std::move(steps)) {
    q_.resize(in.k());
    for (int i = 0; i < in.k(); ++i) {
      q_[i].resize(steps_[i] + 1);
      for (int m = 0; m <= steps_[i]; ++m) {
        q_[i][m] = GrrProbsUnchecked(in.eps[i], std::min(m * h_, in.eps[i])).q;
      }
    }
  }

  double Work() const {
    double w = 0.0;
    for (int i = 1; i < in_.k(); ++i) {
      w += (2.0 * in_.suffix[i] / h_ + 3.0) * (steps_[i] + 1.0);
    }
    return w;
  }

  // Fills tables for levels 1..k-1 on the lattice with the given offset.
  void Solve(double offset) {
    offset_ = offset;
    const int k = in_.k();
    levels_.assign(k, Level());
    for (int i = k - 1; i >= 1; --i) {
      Level& lv = levels_[i];
      // Only |x| < suffix[i] needs storage; the root reaches at most
      // sum_{j < i} eps[j] away from the offset.
      const double reach = in_.suffix[0] - in_.suffix[i];
      const double lo = std::max(offset - reach, -in_.suffix[i]);
      const double hi = std::min(offset + reach, in_.suffix[i]);
      lv.j_lo = static_cast<int64_t>(std::floor((lo - offset) / h_)) - 1;
      const int64_t j_hi =
          static_cast<int64_t>(std::ceil((hi - offset) / h_)) + 1;
      const size_t n = static_cast<size_t>(std::max<int64_t>(j_hi - lv.j_lo + 1, 0));
      lv.value.assign(n, 0.0);
      lv.arg.assign(n, -1);
      for (size_t idx = 0; idx < n; ++idx) {
        const int64_t j = lv.j_lo + static_cast<int64_t>(idx);
        const double x = X(j);
        double v;
        double t;
        if (in_.Shortcut(i, x, &v, &t)) {
          lv.value[idx] = v;
          continue;
        }
        const int mi = steps_[i];
        double best = -1.0;
        int arg = 0;
        for (int m = 0; m <= mi; ++m) {
          const double qm = q_[i][m];
          const double val = qm * Value(i + 1, j - m) +
                             (1.0 - qm) * Value(i + 1, j + mi - m);
          if (val > best) {
            best = val;
            arg = m;
          }
        }
        lv.value[idx] = best;
        lv.arg[idx] = arg;
      }
    }
  }

  double X(int64_t j) const { return offset_ + static_cast<double>(j) * h_; }

  double Value(int i, int64_t j) const {
    if (i >= in_.k()) return BaseValue(X(j));
    const double x = X(j);
    if (x >= in_.suffix[i]) return 0.0;
    if (x <= -in_.suffix[i]) return -std::expm1(x);
    const Level& lv = levels_[i];
    const int64_t idx = j - lv.j_lo;
    if (idx < 0 || idx >= static_cast<int64_t>(lv.value.size())) {
      // Unreachable states; fall back to the exact shortcut or a safe
      // feasible value (t = 0 at every remaining step).
      double v;
      double t;
      if (in_.Shortcut(i, x, &v, &t)) return v;
      return BaseValue(x);
    }
    return lv.value[idx];
  }

  // Writes the subtree rooted at `node` (level i, lattice index j).
  void Extract(AdversaryStrategy& s, int64_t node, int i, int64_t j) const {
    if (i >= in_.k()) return;
    const double x = X(j);
    double v;
    double t;
    if (in_.Shortcut(i, x, &v, &t)) {
      FillSubtree(s, node, t);
      return;
    }
    const Level& lv = levels_[i];
    const int64_t idx = j - lv.j_lo;
    if (idx < 0 || idx >= static_cast<int64_t>(lv.arg.size())) {
      FillSubtree(s, node, 0.0);
      return;
    }
    const int m = lv.arg[idx];
    s.t[node] = std::min(m * h_, in_.eps[i]);
    Extract(s, 2 * node + 1, i + 1, j - m);
    Extract(s, 2 * node + 2, i + 1, j + steps_[i] - m);
  }

  const std::vector<double>& q(int i) const { return q_[i]; }
  int steps(int i) const { return steps_[i]; }

 private:
  struct Level {
    int64_t j_lo = 0;
    std::vector<double> value;
    std::vector<int> arg;
  };

  const Instance& in_;
  double h_;
  std::vector<int> steps_;
  std::vector<std::vector<double>> q_;
  std::vector<Level> levels_;
  double offset_ = 0.0;
};

// Plain recursion with a per-level grid of t_grid points in [0, eps_i].
class RecursionSolver {
 public:
  explicit RecursionSolver(const Instance& in) : in_(in) {}

  double Work() const {
    double w = 1.0;
    for (int i = 1; i < in_.k() - 1; ++i) w *= 2.0 * in_.t_grid;
    return w * in_.t_grid;
  }

  double Value(int i, double x) const {
    if (i >= in_.k()) return BaseValue(x);
    double v;
    double t;
    if (in_.Shortcut(i, x, &v, &t)) return v;
    return Best(i, x).first;
  }

  // (value, t) of the best grid choice at level i.
  std::pair<double, double> Best(int i, double x) const {
    const int g = in_.t_grid;
    const double e = in_.eps[i];
    double best = -1.0;
    double best_t = 0.0;
    for (int m = 0; m < g; ++m) {
      const double t = e * m / (g - 1);
      const double q = GrrProbsUnchecked(e, t).q;
      const double val =
          q * Value(i + 1, x - t) + (1.0 - q) * Value(i + 1, x + e - t);
      if (val > best) {
        best = val;
        best_t = t;
      }
    }
    return {best, best_t};
  }

  void Extract(AdversaryStrategy& s, int64_t node, int i, double x) const {
    if (i >= in_.k()) return;
    double v;
    double t;
    if (in_.Shortcut(i, x, &v, &t)) {
      FillSubtree(s, node, t);
      return;
    }
    t = Best(i, x).second;
    s.t[node] = t;
    Extract(s, 2 * node + 1, i + 1, x - t);
    Extract(s, 2 * node + 2, i + 1, x + in_.eps[i] - t);
  }

 private:
  const Instance& in_;
};

struct LogPath {
  const AdversaryStrategy* s;
  const std::vector<double>* eps;
  std::vector<GrrProbs> probs;  // Per node.
  double eps_g;
  KahanSum sum;

  void Visit(int64_t node, int depth, double log_p, double log_q) {
    if (log_p == kNegInf) return;
    if (depth == s->depth) {
      // max{P - e^{eps_g} Q, 0} with P = e^{log_p}, Q = e^{log_q}.
      const double loss = log_p - log_q;
      if (loss > eps_g) {
        sum.Add(std::exp(log_q + eps_g + LogExpm1(loss - eps_g)));
      }
      return;
    }
    const GrrProbs& g = probs[node];
    Visit(2 * node + 1, depth + 1, log_p + g.log_q, log_q + g.log_p);
    Visit(2 * node + 2, depth + 1, log_p + g.log_one_minus_q,
          log_q + g.log_one_minus_p);
  }
};

absl::StatusOr<std::vector<double>> PositiveEps(
    const std::vector<double>& eps_list) {
  std::vector<double> eps;
  for (double e : eps_list) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      return absl::InvalidArgumentError(
          absl::StrCat("eps entries must be nonnegative, got ", e));
    }
    if (e > 0.0) eps.push_back(e);
  }
  return eps;
}

}  // namespace

absl::Status ValidateConfig(const AdaptiveSolverConfig& cfg) {
  if (cfg.t_grid < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("t_grid must be >= 2, got ", cfg.t_grid));
  }
  if (cfg.refine_iters < 0) {
    return absl::InvalidArgumentError("refine_iters must be >= 0");
  }
  if (cfg.depth_cap < 1 || cfg.depth_cap > kMaxDepthCap) {
    return absl::InvalidArgumentError(absl::StrCat(
        "depth_cap must lie in [1, ", kMaxDepthCap, "], got ", cfg.depth_cap));
  }
  return absl::OkStatus();
}

AdversaryStrategy ConstantStrategy(const std::vector<double>& t_per_level) {
  AdversaryStrategy s;
  s.depth = static_cast<int>(t_per_level.size());
  s.t.assign((size_t{1} << s.depth) - 1, 0.0);
  for (size_t node = 0; node < s.t.size(); ++node) {
    // Depth of a heap node is floor(log2(node + 1)).
    int d = 0;
    while ((size_t{2} << d) <= node + 1) ++d;
    s.t[node] = t_per_level[d];
  }
  return s;
}

absl::Status ValidateStrategy(const AdversaryStrategy& s,
                              const std::vector<double>& eps_list) {
  if (s.depth < 0 || s.depth > kMaxDepthCap) {
    return absl::InvalidArgumentError(
        absl::StrCat("strategy depth must lie in [0, ", kMaxDepthCap, "]"));
  }
  if (static_cast<size_t>(s.depth) != eps_list.size()) {
    return absl::InvalidArgumentError(
        "strategy depth does not match the number of mechanisms");
  }
  if (s.t.size() != (size_t{1} << s.depth) - 1) {
    return absl::InvalidArgumentError("strategy tree has the wrong size");
  }
  for (double e : eps_list) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      return absl::InvalidArgumentError("eps entries must be positive");
    }
  }
  int d = 0;
  for (size_t node = 0; node < s.t.size(); ++node) {
    if ((size_t{2} << d) <= node + 1) ++d;
    if (!(s.t[node] >= 0.0 && s.t[node] <= eps_list[d])) {
      return absl::InvalidArgumentError(absl::StrCat(
          "strategy node ", node, " has t=", s.t[node], " outside [0, ",
          eps_list[d], "]"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<double> StrategyValue(const AdversaryStrategy& s,
                                     const std::vector<double>& eps_list,
                                     double eps_g) {
  if (absl::Status st = ValidateStrategy(s, eps_list); !st.ok()) return st;
  if (s.depth == 0) return BaseValue(eps_g);
  LogPath lp{&s, &eps_list, {}, eps_g, {}};
  lp.probs.resize(s.t.size());
  int d = 0;
  for (size_t node = 0; node < s.t.size(); ++node) {
    if ((size_t{2} << d) <= node + 1) ++d;
    lp.probs[node] = GrrProbsUnchecked(eps_list[d], s.t[node]);
  }
  lp.Visit(0, 0, 0.0, 0.0);
  return std::clamp(lp.sum.value(), 0.0, 1.0);
}

absl::StatusOr<AdaptiveResult> DeltaAdaptiveLb(
    const std::vector<double>& eps_list, double eps_g,
    const AdaptiveSolverConfig& cfg) {
  if (absl::Status s = ValidateConfig(cfg); !s.ok()) return s;
  if (std::isnan(eps_g)) return absl::InvalidArgumentError("eps_g is NaN");
  absl::StatusOr<std::vector<double>> eps_or = PositiveEps(eps_list);
  if (!eps_or.ok()) return eps_or.status();
  const std::vector<double>& eps = *eps_or;
  const int k = static_cast<int>(eps.size());
  if (k > cfg.depth_cap) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "adaptive recursion depth ", k, " exceeds depth cap ", cfg.depth_cap));
  }
  AdaptiveResult res;
  res.strategy.depth = k;
  res.strategy.t.assign((size_t{1} << k) - 1, 0.0);
  if (k == 0) {
    res.delta = res.recursion_value = BaseValue(eps_g);
    return res;
  }
  const Instance in = MakeInstance(eps, cfg);
  {
    double v;
    double t;
    if (eps_g >= in.suffix[0] || eps_g <= -in.suffix[0] || k == 1) {
      in.Shortcut(0, eps_g, &v, &t);
      FillSubtree(res.strategy, 0, t);
      res.recursion_value = v;
      absl::StatusOr<double> sv = StrategyValue(res.strategy, eps, eps_g);
      if (!sv.ok()) return sv.status();
      res.delta = std::min(v, *sv);
      return res;
    }
  }

  const double e_min = *std::min_element(eps.begin(), eps.end());
  const double h = e_min / (cfg.t_grid - 1);
  std::vector<int> steps(k);
  bool commensurate = true;
  for (int i = 0; i < k; ++i) {
    const double ratio = eps[i] / h;
    const double r = std::round(ratio);
    if (std::fabs(ratio - r) > kCommensurateTol * std::max(1.0, ratio) ||
        r > 1e7) {
      commensurate = false;
      break;
    }
    steps[i] = static_cast<int>(r);
  }

  double best_value = -1.0;
  double best_t = 0.0;
  if (commensurate) {
    LatticeSolver solver(in, h, steps);
    if (solver.Work() > kMaxLatticeWork) {
      return absl::ResourceExhaustedError(
          "lattice recursion exceeds the work limit");
    }
    res.lattice = true;
    solver.Solve(eps_g);
    const auto& q0 = solver.q(0);
    for (int m = 0; m <= steps[0]; ++m) {
      const double val = q0[m] * solver.Value(1, -m) +
                         (1.0 - q0[m]) * solver.Value(1, steps[0] - m);
      if (val > best_value) {
        best_value = val;
        best_t = std::min(m * h, eps[0]);
      }
    }
    auto root = [&](double t) {
      solver.Solve(eps_g - t);
      const double q = GrrProbsUnchecked(eps[0], t).q;
      return q * solver.Value(1, 0) + (1.0 - q) * solver.Value(1, steps[0]);
    };
    if (cfg.refine_iters > 0) {
      const double lo = std::max(0.0, best_t - h);
      const double hi = std::min(eps[0], best_t + h);
      auto [t_ref, v_ref] = MaximizeBrent(root, lo, hi, cfg.refine_iters);
      if (v_ref > best_value) {
        best_value = v_ref;
        best_t = t_ref;
      }
    }
    res.recursion_value = root(best_t);
    res.strategy.t[0] = best_t;
    solver.Extract(res.strategy, 1, 1, 0);
    solver.Extract(res.strategy, 2, 1, steps[0]);
  } else {
    RecursionSolver solver(in);
    if (solver.Work() > kMaxRecursionWork) {
      return absl::ResourceExhaustedError(
          "grid recursion exceeds the work limit; use a smaller t_grid");
    }
    auto root = [&](double t) {
      const double q = GrrProbsUnchecked(eps[0], t).q;
      return q * solver.Value(1, eps_g - t) +
             (1.0 - q) * solver.Value(1, eps_g + eps[0] - t);
    };
    const double h0 = eps[0] / (cfg.t_grid - 1);
    for (int m = 0; m < cfg.t_grid; ++m) {
      const double val = root(m * h0);
      if (val > best_value) {
        best_value = val;
        best_t = m * h0;
      }
    }
    if (cfg.refine_iters > 0) {
      const double lo = std::max(0.0, best_t - h0);
      const double hi = std::min(eps[0], best_t + h0);
      auto [t_ref, v_ref] = MaximizeBrent(root, lo, hi, cfg.refine_iters);
      if (v_ref > best_value) {
        best_value = v_ref;
        best_t = t_ref;
      }
    }
    res.recursion_value = best_value;
    res.strategy.t[0] = best_t;
    solver.Extract(res.strategy, 1, 1, eps_g - best_t);
    solver.Extract(res.strategy, 2, 1, eps_g + eps[0] - best_t);
  }
  absl::StatusOr<double> sv = StrategyValue(res.strategy, eps, eps_g);
  if (!sv.ok()) return sv.status();
  res.delta = std::min(res.recursion_value, *sv);
  if (cfg.use_nonadaptive_optimum &&
      std::all_of(eps.begin(), eps.end(),
                  [&](double e) { return e == eps[0]; })) {
    const NonadaptiveResult na =
        DeltaOptNonadaptiveHomUnchecked(eps[0], k, eps_g);
    if (na.delta > res.delta) {
      AdversaryStrategy seed = res.strategy;
      FillSubtree(seed, 0, na.t);
      absl::StatusOr<double> sv_na = StrategyValue(seed, eps, eps_g);
      if (!sv_na.ok()) return sv_na.status();
      if (*sv_na > res.delta) {
        res.strategy = std::move(seed);
        res.recursion_value = std::max(res.recursion_value, na.delta);
        res.delta = std::min(na.delta, *sv_na);
      }
    }
  }
  return res;
}

absl::StatusOr<double> AdaptiveEdgeHigh(double eps, int64_t k, double eps_g) {
  if (absl::Status s = ValidateQuery({eps, k, eps_g}); !s.ok()) return s;
  const double kd = static_cast<double>(k);
  if (eps_g < (kd - 1.0) * eps - kEdgeSlack) {
    return absl::FailedPreconditionError(
        absl::StrCat("edge-high requires eps_g >= (k-1) eps = ",
                     (kd - 1.0) * eps, ", got ", eps_g));
  }
  if (eps_g >= kd * eps) return 0.0;
  // Equal t_i = s / k; log q_t and log(1 - e^{eps_g - s}) are concave.
  auto f = [&](double s) {
    if (s <= eps_g) return -1e300;
    const double lq = GrrProbsUnchecked(eps, s / kd).log_q;
    if (lq == kNegInf) return -1e300;
    return kd * lq + internal::Log1mExp(eps_g - s);
  };
  const double lo = std::max(eps_g, 0.0);
  const double hi = kd * eps;
  auto [s_best, f_best] = MaximizeBrent(f, lo, hi, 500);
  (void)s_best;
  return f_best <= -1e299 ? 0.0 : std::exp(f_best);
}

absl::StatusOr<double> AdaptiveEdgeLow(double eps, int64_t k, double eps_g) {
  if (absl::Status s = ValidateQuery({eps, k, eps_g}); !s.ok()) return s;
  const double kd = static_cast<double>(k);
  if (eps_g > -(kd - 1.0) * eps + kEdgeSlack) {
    return absl::FailedPreconditionError(
        absl::StrCat("edge-low requires eps_g <= -(k-1) eps = ",
                     -(kd - 1.0) * eps, ", got ", eps_g));
  }
  const double base = -std::expm1(eps_g);
  if (eps_g <= -kd * eps) return base;
  const double top = eps_g + kd * eps;  // Positive here.
  auto f = [&](double s) {
    if (s >= top) return -1e300;
    const double l1q = GrrProbsUnchecked(eps, s / kd).log_one_minus_q;
    if (l1q == kNegInf) return -1e300;
    return kd * l1q + LogExpm1(top - s);
  };
  const double hi = std::min(kd * eps, top);
  auto [s_best, f_best] = MaximizeBrent(f, 0.0, hi, 500);
  (void)s_best;
  return base + (f_best <= -1e299 ? 0.0 : std::exp(f_best));
}

absl::StatusOr<GapCertificate> ComputeGapCertificate(
    double eps, int64_t k, double eps_g, const AdaptiveSolverConfig& cfg) {
  if (absl::Status s = ValidateQuery({eps, k, eps_g}); !s.ok()) return s;
  if (k < 2) {
    return absl::InvalidArgumentError("gap certificate requires k >= 2");
  }
  if (absl::Status s = ValidateConfig(cfg); !s.ok()) return s;
  if (k > cfg.depth_cap) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "adaptive recursion depth ", k, " exceeds depth cap ", cfg.depth_cap));
  }
  const NonadaptiveResult na = DeltaOptNonadaptiveHomUnchecked(eps, k, eps_g);
  absl::StatusOr<AdaptiveResult> ad =
      DeltaAdaptiveLb(std::vector<double>(static_cast<size_t>(k), eps), eps_g,
                      cfg);
  if (!ad.ok()) return ad.status();
  GapCertificate c;
  c.delta_nonadaptive = na.delta;
  c.t_nonadaptive = na.t;
  c.delta_adaptive_lb = ad->delta;
  c.gap = ad->delta - na.delta;
  c.tolerance = kGapTolerance;
  c.strict = c.gap > kGapTolerance;
  c.strategy = std::move(ad->strategy);
  return c;
}

}  // namespace brcomp
