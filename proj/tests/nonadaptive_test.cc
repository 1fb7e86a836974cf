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

#include <cmath>
#include <random>
#include <vector>

#include "absl/status/status.h"
#include "brcomp/oracle.h"
#include "gtest/gtest.h"

namespace brcomp {
namespace {

// References below come from tools/oracle_values.py (50-digit outcome
// enumeration).

TEST(DeltaHomFixedTTest, MatchesReferenceValues) {
  EXPECT_NEAR(DeltaHomFixedT({1.0, 1, 0.0}, 0.5).value(),
              0.24491866240370913, 1e-14);
  EXPECT_NEAR(DeltaHomFixedT({1.0, 2, 0.0}, 0.5).value(),
              0.24491866240370913, 1e-14);
  EXPECT_NEAR(DeltaHomFixedT({0.3, 5, 0.2}, 0.1).value(),
              0.043371334408809468, 1e-14);
  EXPECT_NEAR(DeltaHomFixedT({1.0, 40, 2.0}, 0.4).value(),
              0.69616741726014174, 1e-13);
}

TEST(DeltaHomFixedTTest, EndpointsAndConstantRegion) {
  // t = 0 and t = eps are point masses on loss 0.
  EXPECT_DOUBLE_EQ(DeltaHomFixedTUnchecked(1.0, 5, 0.0, -0.5),
                   -std::expm1(-0.5));
  EXPECT_DOUBLE_EQ(DeltaHomFixedTUnchecked(1.0, 5, 1.0, 0.5), 0.0);
  EXPECT_DOUBLE_EQ(DeltaHomFixedTUnchecked(1.0, 4, 0.3, 4.0), 0.0);
  EXPECT_NEAR(DeltaHomFixedTUnchecked(1.0, 4, 0.3, -4.5), -std::expm1(-4.5),
              1e-15);
}

TEST(DeltaHomFixedTTest, LargeKIsFiniteAndBounded) {
  for (int64_t k : {1000, 100000, 10000000}) {
    const double d = DeltaHomFixedTUnchecked(0.01, k, 0.005, 1.0);
    EXPECT_TRUE(std::isfinite(d));
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
  }
}

TEST(DeltaHomFixedTTest, RejectsBadQueries) {
  EXPECT_EQ(DeltaHomFixedT({0.0, 1, 0.0}, 0.0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(DeltaHomFixedT({1.0, 0, 0.0}, 0.5).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(DeltaHomFixedT({1.0, 1, NAN}, 0.5).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(DeltaHomFixedT({1.0, 1, 0.0}, 1.5).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(DeltaHetFixedTTest, MatchesReferenceValue) {
  EXPECT_NEAR(DeltaHetFixedT({0.5, 1.0, 2.0}, {0.1, 0.6, 1.5}, 0.3).value(),
              0.31799453255953854, 1e-14);
}

TEST(DeltaHetFixedTTest, AgreesWithHomogeneousPath) {
  const std::vector<double> eps(7, 0.4);
  const std::vector<double> t(7, 0.15);
  EXPECT_NEAR(DeltaHetFixedT(eps, t, 0.3).value(),
              DeltaHomFixedTUnchecked(0.4, 7, 0.15, 0.3), 1e-13);
}

TEST(DeltaHetFixedTTest, CapsSubsetEnumeration) {
  const std::vector<double> eps(kMaxSubsetK + 1, 0.1);
  EXPECT_EQ(DeltaHetFixedT(eps, eps, 0.0).status().code(),
            absl::StatusCode::kResourceExhausted);
  EXPECT_EQ(DeltaHetFixedT({1.0}, {0.5, 0.5}, 0.0).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(DeltaOptNonadaptiveTest, MatchesReferenceValues) {
  EXPECT_NEAR(DeltaOptNonadaptiveHom({1.0, 2, 0.0})->delta,
              0.28831726236863417, 1e-12);
  EXPECT_NEAR(DeltaOptNonadaptiveHom({1.0, 3, 0.5})->delta,
              0.20646776583118836, 1e-12);
  EXPECT_NEAR(DeltaOptNonadaptiveHom({0.1, 10, 0.2})->delta,
              0.0091912639018059841, 1e-13);
  EXPECT_NEAR(DeltaOptNonadaptiveHom({1.0, 4, 0.5})->delta,
              0.25993219888835933, 1e-12);
}

TEST(DeltaOptNonadaptiveTest, ReportsTiesAndArgmax) {
  // k = 2, eps_g = 0: t = 1/3 and t = 2/3 give the same value.
  absl::StatusOr<NonadaptiveResult> r = DeltaOptNonadaptiveHom({1.0, 2, 0.0});
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->t, 1.0 / 3.0, 1e-12);
  ASSERT_EQ(r->ties.size(), 2u);
  EXPECT_NEAR(r->ties[1], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(DeltaHomFixedTUnchecked(1.0, 2, r->t, 0.0), r->delta, 1e-15);
}

TEST(DeltaOptNonadaptiveTest, ConstantRegionOutsideLossSupport) {
  absl::StatusOr<NonadaptiveResult> hi = DeltaOptNonadaptiveHom({1.0, 4, 4.0});
  ASSERT_TRUE(hi.ok());
  EXPECT_EQ(hi->delta, 0.0);
  EXPECT_TRUE(hi->constant_region);
  absl::StatusOr<NonadaptiveResult> lo = DeltaOptNonadaptiveHom({1.0, 4, -5.0});
  ASSERT_TRUE(lo.ok());
  EXPECT_NEAR(lo->delta, -std::expm1(-5.0), 1e-15);
}

TEST(DeltaOptNonadaptiveTest, DominatesEveryFixedT) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double eps = 0.05 + 2.0 * u(rng);
    const int64_t k = 1 + trial % 12;
    const double eps_g = (2.0 * u(rng) - 1.0) * k * eps;
    const double opt = DeltaOptNonadaptiveHomUnchecked(eps, k, eps_g).delta;
    for (int i = 0; i <= 200; ++i) {
      EXPECT_LE(DeltaHomFixedTUnchecked(eps, k, eps * i / 200.0, eps_g),
                opt + 1e-14);
    }
  }
}

TEST(DeltaOptNonadaptiveTest, AgreesWithBruteForce) {
  for (double eps_g : {-1.5, -0.3, 0.0, 0.7, 1.9}) {
    absl::StatusOr<BruteForceResult> bf =
        BruteForceNonadaptive({1.0, 1.0}, eps_g, 200);
    ASSERT_TRUE(bf.ok());
    EXPECT_NEAR(DeltaOptNonadaptiveHomUnchecked(1.0, 2, eps_g).delta,
                bf->delta, 1e-9);
  }
}

TEST(DeltaOptNonadaptiveTest, NonincreasingInEpsG) {
  double prev = 2.0;
  for (int i = -40; i <= 40; ++i) {
    const double d = DeltaOptNonadaptiveHomUnchecked(0.5, 8, 0.1 * i).delta;
    EXPECT_LE(d, prev + 1e-15);
    prev = d;
  }
}

TEST(CandidatePointsTest, ClampedToUnitInterval) {
  for (const auto& [ell, t] : CandidatePoints({1.0, 6, 2.0})) {
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, 1.0);
    EXPECT_GE(ell, -1);
  }
}

TEST(FEllTest, MatchesReferenceAndDerivative) {
  const HomogeneousQuery q{1.0, 6, 0.5};
  EXPECT_NEAR(FEll(q, 2, 0.4).value(), 0.26772118591184915, 1e-14);
  const double h = 1e-6;
  for (int64_t ell = 0; ell <= 6; ++ell) {
    for (double t : {0.1, 0.35, 0.8}) {
      const double fd = (FEll(q, ell, t + h).value() -
                         FEll(q, ell, t - h).value()) / (2 * h);
      const double an = DFEllDt(q, ell, t).value();
      EXPECT_NEAR(an, fd, 1e-7 * std::max(1.0, std::fabs(an)));
    }
  }
  EXPECT_EQ(DFEllDt(q, 6, 0.3).value(), 0.0);
  EXPECT_FALSE(FEll(q, 7, 0.3).ok());
}

TEST(DpOptCompTest, MatchesRandomizedResponseReference) {
  EXPECT_NEAR(DpOptCompHom(0.5, 3, 0.5).value(), 0.15245190679866559, 1e-14);
  EXPECT_NEAR(DpOptCompHom(0.1, 20, 0.4).value(), 0.052284703928476151,
              1e-14);
  EXPECT_NEAR(DpOptCompHet(std::vector<double>(3, 0.5), 0.5).value(),
              0.15245190679866559, 1e-14);
}

TEST(DpOptCompTest, HeterogeneousAgreesWithFixedT) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double eps = 0.05 + 1.95 * u(rng);
    const int k = 1 + trial % 10;
    const double eps_g = (2.0 * u(rng) - 1.0) * k * eps / 2;
    EXPECT_NEAR(DeltaHomFixedTUnchecked(eps, k, eps / 2, eps_g),
                DpOptCompHet(std::vector<double>(k, eps / 2), eps_g).value(),
                1e-10);
  }
}

TEST(DpOptCompTest, RejectsBadArguments) {
  EXPECT_FALSE(DpOptCompHom(0.0, 3, 0.0).ok());
  EXPECT_FALSE(DpOptCompHom(1.0, 0, 0.0).ok());
  EXPECT_EQ(DpOptCompHet(std::vector<double>(kMaxSubsetK + 1, 0.1), 0.0)
                .status()
                .code(),
            absl::StatusCode::kResourceExhausted);
}

}  // namespace
}  // namespace brcomp
