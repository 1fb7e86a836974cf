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

// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Pass a list of criterion numbers to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "absl/strings/str_format.h"
#include "brcomp/accountant.h"
#include "brcomp/adaptive.h"
#include "brcomp/grr.h"
#include "brcomp/mgf.h"
#include "brcomp/nonadaptive.h"
#include "brcomp/oracle.h"

namespace brcomp {
namespace {

constexpr uint64_t kSeed = 20260917;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Nonadaptive optimum vs brute-force grid search.
Outcome NonadaptiveVsBruteForce() {
  const auto start = Clock::now();
  double worst = 0.0;
  std::string where;
  int cases = 0;
  for (double eps : {0.1, 1.0}) {
    for (int k = 1; k <= 3; ++k) {
      for (int j = -3; j <= 3; ++j) {
        const double eps_g = k * eps * 0.3 * j;
        absl::StatusOr<BruteForceResult> bf =
            BruteForceNonadaptive(std::vector<double>(k, eps), eps_g, 400);
        absl::StatusOr<NonadaptiveResult> opt =
            DeltaOptNonadaptiveHom({eps, k, eps_g});
        if (!bf.ok() || !opt.ok()) return {false, "solver error"};
        const double err = std::fabs(bf->delta - opt->delta);
        if (err >= worst) {
          worst = err;
          where = absl::StrFormat("eps=%g k=%d eps_g=%g", eps, k, eps_g);
        }
        ++cases;
      }
    }
  }
  const double secs = Seconds(start);
  return {worst <= 1e-5 && secs < 120.0,
          absl::StrFormat("%d cases, max |diff|=%.3g at %s, %.1fs (limit 120s)",
                          cases, worst, where, secs)};
}

// 2. Fixed t = eps/2 equals subset-sum DP optimal composition.
Outcome DpCorrespondence() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 1 + trial % 10;
    const double eps = 0.05 + 1.95 * u(rng);
    const double eps_g = (2.0 * u(rng) - 1.0) * k * eps / 2;
    absl::StatusOr<double> a = DeltaHomFixedT({eps, k, eps_g}, eps / 2);
    absl::StatusOr<double> b =
        DpOptCompHet(std::vector<double>(k, eps / 2), eps_g);
    if (!a.ok() || !b.ok()) return {false, "solver error"};
    worst = std::max(worst, std::fabs(*a - *b));
  }
  return {worst <= 1e-10,
          absl::StrFormat("20 pairs, k<=10, max |diff|=%.3g (tol 1e-10)",
                          worst)};
}

// 3. Closed-form dF_ell/dt vs 100-digit central differences.
Outcome DerivativeIdentity() {
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double eps = 0.05 + 2.95 * u(rng);
    const int64_t k = 1 + static_cast<int64_t>(u(rng) * 20);
    const int64_t ell = static_cast<int64_t>(u(rng) * (k + 1)) % (k + 1);
    const double t = eps * (0.01 + 0.98 * u(rng));
    const double eps_g = (2.0 * u(rng) - 1.0) * k * eps;
    absl::StatusOr<double> an = DFEllDt({eps, k, eps_g}, ell, t);
    absl::StatusOr<FEllReference> ref =
        FEllHighPrecision(eps, k, eps_g, ell, t);
    if (!an.ok() || !ref.ok()) return {false, "solver error"};
    worst = std::max(worst, std::fabs(*an - ref->derivative) /
                                std::max(std::fabs(ref->derivative), 1e-50));
  }
  return {worst < 1e-6,
          absl::StrFormat("200 tuples, max relative error=%.3g (tol 1e-6)",
                          worst)};
}

// 4. Adaptivity gap: strict in the middle, none at the edges.
Outcome AdaptivityGap() {
  const auto start = Clock::now();
  AdaptiveSolverConfig cfg;
  cfg.t_grid = 64;
  Outcome out;
  double min_gap = INFINITY;
  double max_edge = 0.0;
  for (int k = 4; k <= 6; ++k) {
    for (double eps_g : {0.0, (k - 3) / 2.0, static_cast<double>(k - 3)}) {
      absl::StatusOr<GapCertificate> c = ComputeGapCertificate(1.0, k, eps_g, cfg);
      if (!c.ok()) return {false, std::string(c.status().message())};
      min_gap = std::min(min_gap, c->gap);
      if (!c->strict || !(c->gap > 1e-7)) {
        out.pass = false;
        out.detail += absl::StrFormat("[no gap k=%d eps_g=%g gap=%.3g] ", k,
                                      eps_g, c->gap);
      }
    }
    for (double eps_g : {static_cast<double>(k - 1), 0.99 * k}) {
      absl::StatusOr<AdaptiveResult> lb =
          DeltaAdaptiveLb(std::vector<double>(k, 1.0), eps_g, cfg);
      if (!lb.ok()) return {false, std::string(lb.status().message())};
      const double na = DeltaOptNonadaptiveHomUnchecked(1.0, k, eps_g).delta;
      const double diff = std::fabs(lb->delta - na);
      max_edge = std::max(max_edge, diff);
      if (diff > 1e-6) {
        out.pass = false;
        out.detail += absl::StrFormat("[edge k=%d eps_g=%g diff=%.3g] ", k,
                                      eps_g, diff);
      }
    }
  }
  for (double eps_g : {-0.45, -0.25, 0.0, 0.25, 0.45}) {
    absl::StatusOr<GapCertificate> c = ComputeGapCertificate(1.0, 2, eps_g, cfg);
    if (!c.ok()) return {false, std::string(c.status().message())};
    min_gap = std::min(min_gap, c->gap);
    if (!c->strict || !(c->gap > 1e-7)) {
      out.pass = false;
      out.detail +=
          absl::StrFormat("[no gap k=2 eps_g=%g gap=%.3g] ", eps_g, c->gap);
    }
  }
  const double secs = Seconds(start);
  if (secs >= 600.0) out.pass = false;
  out.detail += absl::StrFormat(
      "min certified gap=%.3g, max edge |LB-NA|=%.3g, %.1fs (limit 600s)",
      min_gap, max_edge, secs);
  return out;
}

// 5. Pointwise ordering of eps_g(k) curves.
Outcome CurveOrdering() {
  const auto start = Clock::now();
  AccountantOptions opts;
  opts.threads = DefaultThreads();
  const std::vector<Method> methods = {
      Method::kDpOptCompHalf, Method::kBrOptComp, Method::kMgf,
      Method::kOptKl,         Method::kDr19,      Method::kDrv10,
      Method::kDpOptComp};
  // A numerically tied pair must agree to the inversion tolerance.
  const double slack = kEpsilonTolerance;
  int violations = 0;
  std::string first;
  for (double eps : {0.01, 0.1, 1.0}) {
    absl::StatusOr<std::vector<CurveRow>> rows =
        ComputeCurve(eps, 500, 1e-6, methods, opts);
    if (!rows.ok()) return {false, std::string(rows.status().message())};
    std::map<std::pair<Method, int64_t>, double> v;
    for (const CurveRow& r : *rows) v[{r.method, r.k}] = r.eps_g;
    const std::vector<std::pair<Method, Method>> chain = {
        {Method::kDpOptCompHalf, Method::kBrOptComp},
        {Method::kBrOptComp, Method::kMgf},
        {Method::kMgf, Method::kOptKl},
        {Method::kOptKl, Method::kDr19},
        {Method::kDr19, Method::kDrv10},
        {Method::kBrOptComp, Method::kDpOptComp}};
    for (int64_t k = 1; k <= 500; ++k) {
      for (const auto& [a, b] : chain) {
        const double va = v[{a, k}];
        const double vb = v[{b, k}];
        if (va > vb + slack) {
          if (violations == 0) {
            first = absl::StrFormat(" first: eps=%g k=%d %s=%.12g > %s=%.12g",
                                    eps, k, MethodName(a), va, MethodName(b),
                                    vb);
          }
          ++violations;
        }
      }
    }
  }
  const double secs = Seconds(start);
  return {violations == 0,
          absl::StrFormat("3 eps x 500 k x 6 relations, %d violations%s, %.1fs",
                          violations, first, secs)};
}

// 6. Query-budget factor at eps = 0.01.
Outcome QueryBudgetFactor() {
  AccountantOptions opts;
  opts.threads = 1;
  absl::StatusOr<int64_t> br =
      MaxQueries(Method::kBrOptComp, 0.01, 1.0, 1e-6, kMaxCurveK, opts);
  absl::StatusOr<int64_t> dp =
      MaxQueries(Method::kDpOptComp, 0.01, 1.0, 1e-6, kMaxCurveK, opts);
  if (!br.ok() || !dp.ok()) return {false, "solver error"};
  const double ratio = static_cast<double>(*br) / static_cast<double>(*dp);
  return {ratio >= 3.0 && ratio <= 5.0,
          absl::StrFormat("max k br-optcomp=%d, dp-optcomp=%d, ratio=%.4f "
                          "(range [3, 5])",
                          *br, *dp, ratio)};
}

// 7. Inverting the KL-improved bound reproduces the closed form.
Outcome OptKlIdentity() {
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int k = 1 + static_cast<int>(u(rng) * 50);
    std::vector<double> eps(k);
    double total = 0.0;
    for (double& e : eps) {
      e = 0.001 + 0.5 * u(rng);
      total += e;
    }
    const double delta = std::pow(10.0, -1.0 - 9.0 * u(rng));
    absl::StatusOr<double> closed = OptKlEpsilon(eps, delta);
    if (!closed.ok()) return {false, "solver error"};
    // Bisection on eps_g of the delta bound; delta is nonincreasing.
    auto log_delta = [&](double eps_g) {
      return std::log(
          GenericDeltaFromU(UFunctionKind::kKlImprovedDr19, eps, eps_g)
              ->value);
    };
    double lo = 0.0;
    double hi = total;
    double inverted = total;
    if (log_delta(hi) <= std::log(delta)) {
      for (int it = 0; it < 200 && hi - lo > 1e-14 * total; ++it) {
        const double mid = 0.5 * (lo + hi);
        (log_delta(mid) > std::log(delta) ? lo : hi) = mid;
      }
      inverted = 0.5 * (lo + hi);
    }
    worst = std::max(worst, std::fabs(inverted - *closed) / *closed);
  }
  return {worst <= 1e-6,
          absl::StrFormat("50 heterogeneous instances, k<=50, max relative "
                          "diff=%.3g (tol 1e-6)",
                          worst)};
}

// 8. Monte Carlo estimate of a fixed strategy.
Outcome MonteCarlo() {
  const auto start = Clock::now();
  absl::StatusOr<SimulationReport> r = SimulateAdaptiveGame(
      ConstantStrategy({0.5, 0.5}), {1.0, 1.0}, 0.0, 10000000, kSeed,
      DefaultThreads());
  if (!r.ok()) return {false, std::string(r.status().message())};
  const double secs = Seconds(start);
  const double exact = 0.24491866240370913;
  const double tol = 4.0 * r->half_width_95;
  const double err = std::fabs(r->delta_hat - exact);
  return {err <= tol && secs < 60.0,
          absl::StrFormat("n=1e7 seed=%d delta_hat=%.6f |err|=%.3g "
                          "4*half_width=%.3g, %.1fs (limit 60s)",
                          kSeed, r->delta_hat, err, tol, secs)};
}

// 9. Counting-query log ratios take the two values t - eps and t.
Outcome CountingQuery() {
  std::mt19937_64 rng(kSeed + 9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution bit(0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(u(rng) * 21);
    const int d = 1 + static_cast<int>(u(rng) * 8);
    const double eps = 0.01 + 3.0 * u(rng);
    BitMatrix x(n, std::vector<uint8_t>(d));
    for (auto& row : x) {
      for (auto& b : row) b = bit(rng);
    }
    BitMatrix y = x;
    y.emplace_back(d);
    for (auto& b : y.back()) b = bit(rng);
    absl::StatusOr<double> t = CqTValue(x, y, d, eps);
    auto px = CountingQueryProbs(x, d, eps);
    auto py = CountingQueryProbs(y, d, eps);
    if (!t.ok() || !px.ok() || !py.ok()) return {false, "solver error"};
    for (int j = 0; j < d; ++j) {
      const double r = std::log((*px)[j]) - std::log((*py)[j]);
      worst = std::max(
          worst, std::min(std::fabs(r - *t), std::fabs(r - (*t - eps))));
    }
  }
  return {worst <= 1e-12,
          absl::StrFormat("100 matrices, max distance to {t-eps, t}=%.3g "
                          "(tol 1e-12)",
                          worst)};
}

// 10. Edge closed forms vs the adaptive solver and 3-D grid search.
Outcome EdgeClosedForms() {
  AdaptiveSolverConfig cfg;
  cfg.t_grid = 256;
  cfg.use_nonadaptive_optimum = false;
  double worst_lb = 0.0;
  double worst_grid = 0.0;
  std::string where;
  for (int k = 1; k <= 4; ++k) {
    for (double frac : {0.0, 0.3, 0.6, 0.9}) {
      const double eps_g = (k - 1) + frac;
      absl::StatusOr<double> hi = AdaptiveEdgeHigh(1.0, k, eps_g);
      absl::StatusOr<double> lo = AdaptiveEdgeLow(1.0, k, -eps_g);
      absl::StatusOr<AdaptiveResult> lb_hi =
          DeltaAdaptiveLb(std::vector<double>(k, 1.0), eps_g, cfg);
      absl::StatusOr<AdaptiveResult> lb_lo =
          DeltaAdaptiveLb(std::vector<double>(k, 1.0), -eps_g, cfg);
      if (!hi.ok() || !lo.ok() || !lb_hi.ok() || !lb_lo.ok()) {
        return {false, "solver error"};
      }
      for (double d : {std::fabs(*hi - lb_hi->delta),
                       std::fabs(*lo - lb_lo->delta)}) {
        if (d >= worst_lb) {
          worst_lb = d;
          where = absl::StrFormat("k=%d |eps_g|=%g", k, eps_g);
        }
      }
    }
  }
  for (double eps_g : {2.0, 2.4, 2.8}) {
    absl::StatusOr<BruteForceResult> bh =
        BruteForceEdge(1.0, 3, eps_g, true, 400);
    absl::StatusOr<BruteForceResult> bl =
        BruteForceEdge(1.0, 3, -eps_g, false, 400);
    if (!bh.ok() || !bl.ok()) return {false, "solver error"};
    worst_grid = std::max(
        {worst_grid, std::fabs(bh->delta - AdaptiveEdgeHigh(1.0, 3, eps_g).value()),
         std::fabs(bl->delta - AdaptiveEdgeLow(1.0, 3, -eps_g).value())});
  }
  return {worst_lb <= 1e-6 && worst_grid <= 1e-6,
          absl::StrFormat("vs adaptive LB (t_grid=256, no edge shortcut): "
                          "max |diff|=%.3g at %s; vs 3-D grid: max |diff|=%.3g "
                          "(tol 1e-6)",
                          worst_lb, where, worst_grid)};
}

}  // namespace
}  // namespace brcomp

int main(int argc, char** argv) {
  using brcomp::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria =
      {{"nonadaptive optimum matches brute force",
        brcomp::NonadaptiveVsBruteForce},
       {"DP correspondence at t = eps/2", brcomp::DpCorrespondence},
       {"derivative identity", brcomp::DerivativeIdentity},
       {"adaptivity gap reproduction", brcomp::AdaptivityGap},
       {"eps_g curve ordering", brcomp::CurveOrdering},
       {"query-budget factor", brcomp::QueryBudgetFactor},
       {"OptKL closed-form identity", brcomp::OptKlIdentity},
       {"Monte Carlo consistency", brcomp::MonteCarlo},
       {"counting-query equivalence", brcomp::CountingQuery},
       {"edge closed forms", brcomp::EdgeClosedForms}};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && only.count(id) == 0) continue;
    const Outcome o = criteria[i].second();
    std::printf("%s criterion %d: %s; %s\n", o.pass ? "PASS" : "FAIL", id,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
