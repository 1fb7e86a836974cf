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

#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "brcomp/nonadaptive.h"
#include "brcomp/oracle.h"
#include "gtest/gtest.h"

namespace brcomp {
namespace {

AdaptiveSolverConfig Config(int t_grid) {
  AdaptiveSolverConfig cfg;
  cfg.t_grid = t_grid;
  return cfg;
}

TEST(StrategyValueTest, ConstantStrategyMatchesFixedT) {
  const std::vector<double> eps = {0.5, 1.0, 2.0};
  AdversaryStrategy s = ConstantStrategy({0.1, 0.6, 1.5});
  EXPECT_EQ(s.depth, 3);
  EXPECT_EQ(s.t.size(), 7u);
  EXPECT_NEAR(StrategyValue(s, eps, 0.3).value(), 0.31799453255953854, 1e-14);
}

TEST(StrategyValueTest, RejectsMalformedStrategies) {
  AdversaryStrategy s = ConstantStrategy({0.5, 0.5});
  EXPECT_FALSE(StrategyValue(s, {1.0}, 0.0).ok());
  s.t[1] = 1.5;
  EXPECT_FALSE(StrategyValue(s, {1.0, 1.0}, 0.0).ok());
  s.t.pop_back();
  EXPECT_FALSE(StrategyValue(s, {1.0, 1.0}, 0.0).ok());
}

TEST(DeltaAdaptiveLbTest, SingleRoundEqualsNonadaptive) {
  for (double eps_g : {-0.5, 0.0, 0.3, 0.9}) {
    absl::StatusOr<AdaptiveResult> r = DeltaAdaptiveLb({1.0}, eps_g, Config(64));
    ASSERT_TRUE(r.ok());
    EXPECT_NEAR(r->delta,
                DeltaOptNonadaptiveHomUnchecked(1.0, 1, eps_g).delta, 1e-12);
  }
}

TEST(DeltaAdaptiveLbTest, NeverBelowNonadaptiveOptimum) {
  for (int k = 2; k <= 5; ++k) {
    for (double frac : {-0.6, -0.2, 0.0, 0.25, 0.5, 0.8}) {
      const double eps_g = frac * k;
      absl::StatusOr<AdaptiveResult> r =
          DeltaAdaptiveLb(std::vector<double>(k, 1.0), eps_g, Config(32));
      ASSERT_TRUE(r.ok()) << r.status();
      const double na = DeltaOptNonadaptiveHomUnchecked(1.0, k, eps_g).delta;
      EXPECT_GE(r->delta, na - 1e-6) << "k=" << k << " eps_g=" << eps_g;
      EXPECT_LE(r->delta, r->recursion_value + 1e-15);
    }
  }
}

TEST(DeltaAdaptiveLbTest, StrategyValueCertifiesReportedDelta) {
  absl::StatusOr<AdaptiveResult> r =
      DeltaAdaptiveLb(std::vector<double>(4, 1.0), 0.5, Config(64));
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->lattice);
  EXPECT_NEAR(StrategyValue(r->strategy, std::vector<double>(4, 1.0), 0.5)
                  .value(),
              r->delta, 1e-9);
}

TEST(DeltaAdaptiveLbTest, MonotoneOnNestedGrids) {
  // Grids 17, 33, 65 are nested lattices.
  double prev = 0.0;
  for (int g : {17, 33, 65}) {
    const double d =
        DeltaAdaptiveLb(std::vector<double>(4, 1.0), 0.0, Config(g))->delta;
    EXPECT_GE(d, prev - 1e-12);
    prev = d;
  }
}

TEST(DeltaAdaptiveLbTest, HeterogeneousCommensurateList) {
  absl::StatusOr<AdaptiveResult> r =
      DeltaAdaptiveLb({0.5, 1.0, 0.5}, 0.2, Config(33));
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->lattice);
  absl::StatusOr<BruteForceResult> bf =
      BruteForceNonadaptive({0.5, 1.0, 0.5}, 0.2, 100);
  ASSERT_TRUE(bf.ok());
  EXPECT_GE(r->delta, bf->delta - 1e-4);
}

TEST(DeltaAdaptiveLbTest, EnforcesDepthCap) {
  EXPECT_EQ(DeltaAdaptiveLb(std::vector<double>(7, 1.0), 0.0, Config(16))
                .status()
                .code(),
            absl::StatusCode::kResourceExhausted);
  AdaptiveSolverConfig bad;
  bad.t_grid = 1;
  EXPECT_FALSE(DeltaAdaptiveLb({1.0}, 0.0, bad).ok());
  bad = AdaptiveSolverConfig();
  bad.depth_cap = kMaxDepthCap + 1;
  EXPECT_FALSE(ValidateConfig(bad).ok());
}

TEST(AdaptiveEdgeTest, MatchesReferenceValues) {
  // tools/oracle_values.py, equal-t reduction in 50 digits.
  EXPECT_NEAR(AdaptiveEdgeHigh(1.0, 3, 2.5).value(), 0.00075474025358806284,
              1e-12);
  EXPECT_NEAR(AdaptiveEdgeLow(1.0, 3, -2.5).value(), 0.91797695422877838,
              1e-12);
}

TEST(AdaptiveEdgeTest, PreconditionsAndConstants) {
  EXPECT_EQ(AdaptiveEdgeHigh(1.0, 3, 1.0).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(AdaptiveEdgeLow(1.0, 3, -1.0).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(AdaptiveEdgeHigh(1.0, 3, 3.0).value(), 0.0);
  EXPECT_NEAR(AdaptiveEdgeLow(1.0, 3, -3.5).value(), -std::expm1(-3.5),
              1e-15);
}

TEST(AdaptiveEdgeTest, AgreesWithThreeDimensionalSearch) {
  absl::StatusOr<BruteForceResult> hi = BruteForceEdge(1.0, 3, 2.5, true, 120);
  ASSERT_TRUE(hi.ok());
  EXPECT_NEAR(AdaptiveEdgeHigh(1.0, 3, 2.5).value(), hi->delta, 1e-6);
  absl::StatusOr<BruteForceResult> lo =
      BruteForceEdge(1.0, 3, -2.5, false, 120);
  ASSERT_TRUE(lo.ok());
  EXPECT_NEAR(AdaptiveEdgeLow(1.0, 3, -2.5).value(), lo->delta, 1e-6);
}

TEST(GapCertificateTest, StrictInTheMiddle) {
  absl::StatusOr<GapCertificate> c =
      ComputeGapCertificate(1.0, 4, 0.5, Config(64));
  ASSERT_TRUE(c.ok());
  EXPECT_TRUE(c->strict);
  EXPECT_NEAR(c->delta_nonadaptive, 0.25993219888835933, 1e-12);
  EXPECT_GT(c->gap, 1.5e-3);
  EXPECT_LT(c->gap, 3e-3);
  EXPECT_EQ(c->strategy.depth, 4);
}

TEST(GapCertificateTest, NoGapAtTheEdge) {
  absl::StatusOr<GapCertificate> c =
      ComputeGapCertificate(1.0, 4, 3.5, Config(64));
  ASSERT_TRUE(c.ok());
  EXPECT_FALSE(c->strict);
  EXPECT_LE(std::fabs(c->gap), 1e-6);
}

TEST(GapCertificateTest, TwoRoundsAroundZero) {
  for (double eps_g : {-0.4, 0.0, 0.4}) {
    absl::StatusOr<GapCertificate> c =
        ComputeGapCertificate(1.0, 2, eps_g, Config(64));
    ASSERT_TRUE(c.ok());
    EXPECT_TRUE(c->strict) << eps_g;
  }
}

TEST(GapCertificateTest, RejectsSingleRound) {
  EXPECT_FALSE(ComputeGapCertificate(1.0, 1, 0.0, Config(64)).ok());
}

}  // namespace
}  // namespace brcomp
