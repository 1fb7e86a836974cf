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

#include <algorithm>
#include <cmath>
#include <random>

#include "absl/strings/str_format.h"
#include "brcomp/accountant.h"
#include "brcomp/adaptive.h"
#include "brcomp/grr.h"
#include "brcomp/mgf.h"
#include "brcomp/nonadaptive.h"
#include "brcomp/oracle.h"

namespace brcomp {
namespace {

class Suite {
 public:
  void Near(const std::string& check, const std::string& params,
            double expected, double got, double tol) {
    checks_.push_back({check, params, expected, got, tol,
                       std::isfinite(got) && std::fabs(got - expected) <= tol});
  }
  void AtLeast(const std::string& check, const std::string& params,
               double bound, double got, double tol) {
    checks_.push_back(
        {check, params, bound, got, tol, std::isfinite(got) && got > bound + tol});
  }
  void Fail(const std::string& check, const std::string& params,
            const std::string& why) {
    checks_.push_back({check, params + ";error=" + why, 0.0, NAN, 0.0, false});
  }
  std::vector<ValidationCheck> Take() { return std::move(checks_); }

 private:
  std::vector<ValidationCheck> checks_;
};

constexpr double kDerivativeFloor = 1e-50;

}  // namespace

std::vector<ValidationCheck> RunValidation(ValidationLevel level,
                                           uint64_t seed, int threads) {
  const bool full = level == ValidationLevel::kFull;
  Suite s;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  {
    double worst = 0.0;
    double worst_sym = 0.0;
    const double eps = 1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = eps * i / 1000.0;
      const GrrProbs g = GrrProbsUnchecked(eps, t);
      const GrrProbs h = GrrProbsUnchecked(eps, eps - t);
      worst = std::max(worst, std::fabs(g.q - std::exp(t) * g.p));
      worst = std::max(worst, std::fabs(g.one_minus_q -
                                        std::exp(t - eps) * g.one_minus_p));
      worst_sym = std::max(worst_sym, std::fabs(g.q - h.one_minus_p));
    }
    s.Near("grr_ratio_identity", "eps=1;grid=1001", 0.0, worst, 1e-12);
    s.Near("grr_symmetry", "eps=1;grid=1001", 0.0, worst_sym, 1e-12);
  }

  {
    const GrrProbs g = GrrProbsUnchecked(1.0, 0.5);
    FiniteMechanismPair pair{{g.q, g.one_minus_q}, {g.p, g.one_minus_p}};
    absl::StatusOr<double> hs = HockeyStick(pair, 0.0);
    s.Near("hockey_stick_single_grr", "eps=1;t=0.5;eps_g=0",
           DeltaHomFixedTUnchecked(1.0, 1, 0.5, 0.0), hs.value_or(NAN), 1e-12);
  }

  {
    const int k = full ? 3 : 2;
    const int grid = full ? 400 : 200;
    for (double eps_g : {-0.9, 0.0, 0.9}) {
      absl::StatusOr<BruteForceResult> bf =
          BruteForceNonadaptive(std::vector<double>(k, 1.0), eps_g, grid);
      const double opt = DeltaOptNonadaptiveHomUnchecked(1.0, k, eps_g).delta;
      s.Near("nonadaptive_vs_brute_force",
             absl::StrFormat("eps=1;k=%d;eps_g=%g;grid=%d", k, eps_g, grid),
             opt, bf.ok() ? bf->delta : NAN, 1e-5);
    }
  }

  {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const double eps = 0.05 + 1.95 * unit(rng);
      const int k = 1 + static_cast<int>(unit(rng) * 8);
      const double eps_g = (2.0 * unit(rng) - 1.0) * k * eps * 0.5;
      const double a = DeltaHomFixedTUnchecked(eps, k, eps / 2, eps_g);
      const double b =
          DpOptCompHet(std::vector<double>(k, eps / 2), eps_g).value_or(NAN);
      worst = std::max(worst, std::fabs(a - b));
    }
    s.Near("dp_correspondence", "trials=10;k<=8", 0.0, worst, 1e-10);
  }

  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double eps = 0.1 + 1.9 * unit(rng);
      const int64_t k = 1 + static_cast<int64_t>(unit(rng) * 20);
      const int64_t ell = static_cast<int64_t>(unit(rng) * (k + 1)) % (k + 1);
      const double t = eps * (0.05 + 0.9 * unit(rng));
      const double eps_g = (2.0 * unit(rng) - 1.0) * k * eps;
      absl::StatusOr<FEllReference> ref =
          FEllHighPrecision(eps, k, eps_g, ell, t);
      const double an = DFEllDt({eps, k, eps_g}, ell, t).value_or(NAN);
      if (!ref.ok()) {
        worst = NAN;
        break;
      }
      worst = std::max(worst, std::fabs(an - ref->derivative) /
                                  std::max(std::fabs(ref->derivative), kDerivativeFloor));
    }
    s.Near("derivative_identity", "trials=20;k<=20", 0.0, worst, 1e-6);
  }

  {
    const double hi = AdaptiveEdgeHigh(1.0, 3, 2.5).value_or(NAN);
    s.Near("edge_high_vs_nonadaptive", "eps=1;k=3;eps_g=2.5",
           DeltaOptNonadaptiveHomUnchecked(1.0, 3, 2.5).delta, hi, 1e-8);
    const double lo = AdaptiveEdgeLow(1.0, 3, -2.5).value_or(NAN);
    s.Near("edge_low_vs_nonadaptive", "eps=1;k=3;eps_g=-2.5",
           DeltaOptNonadaptiveHomUnchecked(1.0, 3, -2.5).delta, lo, 1e-8);
  }

  AdversaryStrategy gap_strategy;
  double gap_value = NAN;
  {
    AdaptiveSolverConfig cfg;
    absl::StatusOr<GapCertificate> c = ComputeGapCertificate(1.0, 4, 0.5, cfg);
    if (c.ok()) {
      s.AtLeast("gap_certificate_strict", "eps=1;k=4;eps_g=0.5;t_grid=64",
                c->delta_nonadaptive, c->delta_adaptive_lb, kGapTolerance);
      gap_strategy = c->strategy;
      gap_value = c->delta_adaptive_lb;
    } else {
      s.Fail("gap_certificate_strict", "eps=1;k=4;eps_g=0.5",
             std::string(c.status().message()));
    }
  }

  {
    const int64_t n = full ? 10000000 : 1000000;
    absl::StatusOr<SimulationReport> r = SimulateAdaptiveGame(
        ConstantStrategy({0.5, 0.5}), {1.0, 1.0}, 0.0, n, seed, threads);
    const double exact = DeltaHomFixedTUnchecked(1.0, 2, 0.5, 0.0);
    if (r.ok()) {
      s.Near("monte_carlo_fixed_t",
             absl::StrFormat("eps=1;k=2;t=0.5;eps_g=0;n=%d", n), exact,
             r->delta_hat, 4.0 * r->half_width_95 / 1.96);
    } else {
      s.Fail("monte_carlo_fixed_t", "", std::string(r.status().message()));
    }
    if (gap_strategy.depth == 4) {
      absl::StatusOr<SimulationReport> g = SimulateAdaptiveGame(
          gap_strategy, std::vector<double>(4, 1.0), 0.5, n, seed + 1, threads);
      if (g.ok()) {
        s.Near("monte_carlo_gap_strategy",
               absl::StrFormat("eps=1;k=4;eps_g=0.5;n=%d", n), gap_value,
               g->delta_hat, 4.0 * g->half_width_95 / 1.96);
      }
    }
  }

  {
    double worst = 0.0;
    std::bernoulli_distribution bit(0.5);
    for (int trial = 0; trial < (full ? 100 : 20); ++trial) {
      const int n = static_cast<int>(unit(rng) * 20);
      const int d = 1 + static_cast<int>(unit(rng) * 8);
      const double eps = 0.05 + 2.0 * unit(rng);
      BitMatrix x(n, std::vector<uint8_t>(d));
      for (auto& row : x) {
        for (auto& b : row) b = bit(rng);
      }
      BitMatrix y = x;
      y.emplace_back(d);
      for (auto& b : y.back()) b = bit(rng);
      const double t = CqTValue(x, y, d, eps).value_or(NAN);
      auto px = CountingQueryProbs(x, d, eps);
      auto py = CountingQueryProbs(y, d, eps);
      if (!px.ok() || !py.ok()) {
        worst = NAN;
        break;
      }
      for (int j = 0; j < d; ++j) {
        const double r = std::log((*px)[j]) - std::log((*py)[j]);
        worst = std::max(worst, std::min(std::fabs(r - t),
                                         std::fabs(r - (t - eps))));
      }
    }
    s.Near("counting_query_two_point_support", "n<=20;d<=8", 0.0, worst,
           1e-12);
  }

  {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const int k = 1 + static_cast<int>(unit(rng) * 50);
      std::vector<double> eps(k);
      for (double& e : eps) e = 0.01 + 0.5 * unit(rng);
      const double delta = std::pow(10.0, -2.0 - 8.0 * unit(rng));
      const double closed = OptKlEpsilon(eps, delta).value_or(NAN);
      absl::StatusOr<BoundResult> inv =
          GenericEpsilonFromU(UFunctionKind::kKlImprovedDr19, eps, delta);
      const double got = inv.ok() ? inv->value : NAN;
      worst = std::max(worst, std::fabs(got - closed) / closed);
    }
    s.Near("optkl_closed_form", "trials=10;k<=50", 0.0, worst, 1e-6);
  }

  {
    double worst = 0.0;
    for (double eps_g : {0.0, 1.0, 2.0}) {
      const double na = DeltaOptNonadaptiveHomUnchecked(1.0, 4, eps_g).delta;
      const double ub = MgfDelta(std::vector<double>(4, 1.0), eps_g)
                            .value_or(BoundResult{NAN})
                            .value;
      worst = std::max(worst, na - ub);
    }
    s.Near("mgf_dominates_optimum", "eps=1;k=4", 0.0, std::max(worst, 0.0),
           1e-12);
  }
  return s.Take();
}

}  // namespace brcomp
