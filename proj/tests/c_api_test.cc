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

#include "brcomp/brcomp.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace {

TEST(CApiTest, MethodNames) {
  EXPECT_EQ(brcomp_method_count(), 11);
  for (int i = 0; i < brcomp_method_count(); ++i) {
    const auto m = static_cast<brcomp_method>(i);
    brcomp_method back;
    ASSERT_EQ(brcomp_method_from_name(brcomp_method_name(m), &back), BRCOMP_OK);
    EXPECT_EQ(back, m);
  }
  EXPECT_STREQ(brcomp_method_name(BRCOMP_METHOD_DP_OPTCOMP_HALF),
               "dp-optcomp-half");
  EXPECT_EQ(brcomp_method_name(static_cast<brcomp_method>(99)), nullptr);
  brcomp_method m;
  EXPECT_EQ(brcomp_method_from_name("bogus", &m), BRCOMP_E_DOMAIN);
  EXPECT_NE(std::string(brcomp_last_error()).find("bogus"), std::string::npos);
}

TEST(CApiTest, DeltaAndEpsilon) {
  brcomp_options opts;
  brcomp_options_default(&opts);
  EXPECT_EQ(opts.t_grid, 64);
  const double eps[] = {1.0};
  double d = 0.0;
  char* meta = nullptr;
  ASSERT_EQ(brcomp_compute_delta(BRCOMP_METHOD_BR_OPTCOMP, eps, 1, 0.0, &opts,
                                 &d, &meta),
            BRCOMP_OK);
  EXPECT_NEAR(d, 0.24491866240370913, 1e-14);
  ASSERT_NE(meta, nullptr);
  EXPECT_NE(std::strstr(meta, "exact"), nullptr);
  brcomp_string_free(meta);

  double e = 0.0;
  ASSERT_EQ(brcomp_compute_epsilon(BRCOMP_METHOD_BR_OPTCOMP, eps, 1, d, &opts,
                                   &e, nullptr),
            BRCOMP_OK);
  EXPECT_NEAR(e, 0.0, 1e-9);
}

TEST(CApiTest, ErrorCodes) {
  const double eps[] = {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  double d;
  EXPECT_EQ(brcomp_compute_delta(BRCOMP_METHOD_ADAPTIVE_LB, eps, 8, 0.0,
                                 nullptr, &d, nullptr),
            BRCOMP_E_CAP);
  EXPECT_EQ(brcomp_compute_epsilon(BRCOMP_METHOD_MGF, eps, 2, 2.0, nullptr, &d,
                                   nullptr),
            BRCOMP_E_DOMAIN);
  EXPECT_EQ(brcomp_compute_epsilon(BRCOMP_METHOD_EDGE_HIGH, eps, 3, 0.5,
                                   nullptr, &d, nullptr),
            BRCOMP_E_PRECONDITION);
  const double het[] = {0.1, 0.2, 0.3, 0.4};
  EXPECT_EQ(brcomp_compute_delta(BRCOMP_METHOD_BR_OPTCOMP, het, 4, 0.0,
                                 nullptr, &d, nullptr),
            BRCOMP_E_UNSUPPORTED);
  EXPECT_EQ(brcomp_compute_delta(BRCOMP_METHOD_BR_OPTCOMP, nullptr, 1, 0.0,
                                 nullptr, &d, nullptr),
            BRCOMP_E_NULL);
  EXPECT_STREQ(brcomp_status_name(BRCOMP_E_CAP), "cap");
}

TEST(CApiTest, CurveHandle) {
  const brcomp_method ms[] = {BRCOMP_METHOD_MGF, BRCOMP_METHOD_BR_OPTCOMP};
  brcomp_curve* c = nullptr;
  ASSERT_EQ(brcomp_curve_compute(0.1, 5, 1e-6, ms, 2, nullptr, &c), BRCOMP_OK);
  ASSERT_EQ(brcomp_curve_size(c), 10u);
  brcomp_curve_row r;
  ASSERT_EQ(brcomp_curve_row_at(c, 0, &r), BRCOMP_OK);
  EXPECT_EQ(r.method, BRCOMP_METHOD_BR_OPTCOMP);
  EXPECT_EQ(r.k, 1);
  EXPECT_EQ(brcomp_curve_row_at(c, 10, &r), BRCOMP_E_DOMAIN);
  brcomp_curve_free(c);
}

TEST(CApiTest, StrategyAndSimulation) {
  const double t[] = {0.5, 0.5};
  brcomp_strategy* s = nullptr;
  ASSERT_EQ(brcomp_strategy_constant(t, 2, &s), BRCOMP_OK);
  EXPECT_EQ(brcomp_strategy_depth(s), 2);
  EXPECT_EQ(brcomp_strategy_size(s), 3u);
  const double eps[] = {1.0, 1.0};
  double v = 0.0;
  ASSERT_EQ(brcomp_strategy_value(s, eps, 2, 0.0, &v), BRCOMP_OK);
  EXPECT_NEAR(v, 0.24491866240370913, 1e-14);
  brcomp_sim_report rep;
  ASSERT_EQ(brcomp_simulate(s, eps, 2, 0.0, 200000, 3, 1, &rep), BRCOMP_OK);
  EXPECT_NEAR(rep.delta_hat, v, 4.0 * rep.half_width_95 / 1.96);
  brcomp_strategy_free(s);
  EXPECT_EQ(brcomp_strategy_create(2, t, 2, &s), BRCOMP_E_DOMAIN);
}

TEST(CApiTest, GapCertificate) {
  brcomp_gap g;
  brcomp_strategy* s = nullptr;
  ASSERT_EQ(brcomp_gap_certificate(1.0, 4, 0.5, nullptr, &g, &s), BRCOMP_OK);
  EXPECT_TRUE(g.strict);
  EXPECT_EQ(brcomp_strategy_size(s), 15u);
  brcomp_strategy_free(s);
}

TEST(CApiTest, FiniteMechanisms) {
  const char* json =
      R"({"scores": [[0, 1, 3], [1, 1, 2]], "neighbors": [[0, 1]]})";
  brcomp_quality_table* t = nullptr;
  ASSERT_EQ(brcomp_quality_table_parse(json, &t), BRCOMP_OK);
  double range = 0.0;
  ASSERT_EQ(brcomp_quality_range(t, &range), BRCOMP_OK);
  EXPECT_DOUBLE_EQ(range, 2.0);
  double a[3], b[3];
  size_t n = 0;
  int degenerate = 1;
  ASSERT_EQ(brcomp_exp_mech_probs(t, 1.0, 0, BRCOMP_NORMALIZER_RANGE, a, 3, &n,
                                  &degenerate),
            BRCOMP_OK);
  ASSERT_EQ(brcomp_exp_mech_probs(t, 1.0, 1, BRCOMP_NORMALIZER_RANGE, b, 3, &n,
                                  nullptr),
            BRCOMP_OK);
  EXPECT_EQ(n, 3u);
  EXPECT_EQ(degenerate, 0);
  int found = 0;
  double wt = 0.0;
  ASSERT_EQ(brcomp_br_witness(a, b, 3, 1.0, &found, &wt), BRCOMP_OK);
  EXPECT_EQ(found, 1);
  brcomp_quality_table_free(t);
  EXPECT_EQ(brcomp_quality_table_parse("{", &t), BRCOMP_E_DOMAIN);

  const uint8_t y[] = {1, 0};
  double cq = 0.0;
  ASSERT_EQ(brcomp_cq_t_value(nullptr, 0, y, 1, 2, 1.0, &cq), BRCOMP_OK);
  EXPECT_NEAR(cq, std::log((std::exp(1.0) + 1) / 2), 1e-15);
}

TEST(CApiTest, BoundsAndOracles) {
  EXPECT_NEAR(brcomp_max_kl(1.0), 0.12330156148224453, 1e-15);
  const double eps[] = {1.0, 1.0, 1.0};
  brcomp_bound b;
  ASSERT_EQ(brcomp_bound_delta(BRCOMP_U_GENERAL_MGF, eps, 3, 0.5, 1e6, &b),
            BRCOMP_OK);
  brcomp_brute_force bf;
  ASSERT_EQ(brcomp_brute_force_nonadaptive(eps, 3, 0.5, 40, &bf), BRCOMP_OK);
  EXPECT_NEAR(bf.delta, 0.20646776583118836, 1e-8);
  EXPECT_GE(b.value, bf.delta);
  EXPECT_EQ(bf.k, 3);
  brcomp_nonadaptive na;
  ASSERT_EQ(brcomp_delta_opt_nonadaptive(1.0, 3, 0.5, &na), BRCOMP_OK);
  EXPECT_NEAR(na.delta, bf.delta, 1e-8);
  double u = 0.0;
  EXPECT_EQ(brcomp_u_function(static_cast<brcomp_u_kind>(7), 1.0, 1.0, &u),
            BRCOMP_E_DOMAIN);
}

TEST(CApiTest, ValidateFastPasses) {
  char* json = nullptr;
  int all_pass = 0;
  ASSERT_EQ(brcomp_validate(BRCOMP_VALIDATE_FAST, 1234, 1, &json, &all_pass),
            BRCOMP_OK);
  ASSERT_NE(json, nullptr);
  EXPECT_EQ(all_pass, 1) << json;
  brcomp_string_free(json);
}

}  // namespace
