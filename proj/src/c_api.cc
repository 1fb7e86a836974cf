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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "brcomp/accountant.h"
#include "brcomp/adaptive.h"
#include "brcomp/grr.h"
#include "brcomp/mgf.h"
#include "brcomp/nonadaptive.h"
#include "brcomp/oracle.h"
#include "json.hpp"

struct brcomp_strategy {
  brcomp::AdversaryStrategy s;
};

struct brcomp_quality_table {
  brcomp::QualityScoreTable t;
};

struct brcomp_curve {
  std::vector<brcomp::CurveRow> rows;
};

namespace {

thread_local std::string last_error;

brcomp_status Fail(brcomp_status code, std::string msg) {
  last_error = std::move(msg);
  return code;
}

brcomp_status FromStatus(const absl::Status& s) {
  if (s.ok()) {
    last_error.clear();
    return BRCOMP_OK;
  }
  brcomp_status code = BRCOMP_E_INTERNAL;
  switch (s.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      code = BRCOMP_E_DOMAIN;
      break;
    case absl::StatusCode::kFailedPrecondition:
      code = BRCOMP_E_PRECONDITION;
      break;
    case absl::StatusCode::kResourceExhausted:
      code = BRCOMP_E_CAP;
      break;
    case absl::StatusCode::kUnimplemented:
      code = BRCOMP_E_UNSUPPORTED;
      break;
    default:
      break;
  }
  return Fail(code, std::string(s.message()));
}

// Runs body, translating exceptions into BRCOMP_E_INTERNAL.
template <typename F>
brcomp_status Guard(F body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return Fail(BRCOMP_E_INTERNAL, e.what());
  } catch (...) {
    return Fail(BRCOMP_E_INTERNAL, "unknown exception");
  }
}

brcomp_status NullArg(const char* name) {
  return Fail(BRCOMP_E_NULL, std::string(name) + " is NULL");
}

std::vector<double> Vec(const double* p, size_t n) {
  return n == 0 ? std::vector<double>() : std::vector<double>(p, p + n);
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool ValidMethod(brcomp_method m) {
  return static_cast<int>(m) >= 0 &&
         static_cast<int>(m) < static_cast<int>(brcomp::AllMethods().size());
}

brcomp::Method ToMethod(brcomp_method m) {
  return brcomp::AllMethods()[static_cast<int>(m)];
}

brcomp_method FromMethod(brcomp::Method m) {
  const auto all = brcomp::AllMethods();
  for (size_t i = 0; i < all.size(); ++i) {
    if (all[i] == m) return static_cast<brcomp_method>(i);
  }
  return BRCOMP_METHOD_BASIC;
}

brcomp::AccountantOptions ToOptions(const brcomp_options* o) {
  brcomp::AccountantOptions out;
  if (o == nullptr) {
    out.threads = brcomp::DefaultThreads();
    return out;
  }
  out.adaptive.t_grid = o->t_grid;
  out.adaptive.refine_iters = o->refine_iters;
  out.adaptive.depth_cap = o->depth_cap;
  out.lambda.lambda_max = o->lambda_max;
  out.threads = o->threads > 0 ? o->threads : brcomp::DefaultThreads();
  return out;
}

bool ValidKind(brcomp_u_kind k) {
  return static_cast<int>(k) >= 0 && static_cast<int>(k) <= 3;
}

brcomp::UFunctionKind ToKind(brcomp_u_kind k) {
  return static_cast<brcomp::UFunctionKind>(static_cast<int>(k));
}

void CopyBound(const brcomp::BoundResult& b, brcomp_bound* out) {
  out->value = b.value;
  out->lambda = b.lambda;
  out->at_lambda_ceiling = b.at_lambda_ceiling;
  out->capped = b.capped;
}

void CopyBrute(const brcomp::BruteForceResult& r, brcomp_brute_force* out) {
  out->delta = r.delta;
  out->grid_delta = r.grid_delta;
  out->resolution_bound = r.resolution_bound;
  out->k = static_cast<int>(r.argmax.size());
  for (int i = 0; i < 3; ++i) {
    out->argmax[i] = i < out->k ? r.argmax[i] : 0.0;
  }
}

brcomp::BitMatrix ToBits(const uint8_t* bits, size_t rows, int d) {
  brcomp::BitMatrix m(rows);
  for (size_t r = 0; r < rows; ++r) {
    m[r].assign(bits + r * d, bits + (r + 1) * d);
  }
  return m;
}

}  // namespace

extern "C" {

const char* brcomp_last_error(void) { return last_error.c_str(); }

const char* brcomp_status_name(brcomp_status s) {
  switch (s) {
    case BRCOMP_OK:
      return "ok";
    case BRCOMP_E_DOMAIN:
      return "domain";
    case BRCOMP_E_PRECONDITION:
      return "precondition";
    case BRCOMP_E_CAP:
      return "cap";
    case BRCOMP_E_UNSUPPORTED:
      return "unsupported";
    case BRCOMP_E_IO:
      return "io";
    case BRCOMP_E_NULL:
      return "null";
    case BRCOMP_E_INTERNAL:
      return "internal";
  }
  return "unknown";
}

void brcomp_string_free(char* s) { std::free(s); }

int brcomp_method_count(void) {
  return static_cast<int>(brcomp::AllMethods().size());
}

const char* brcomp_method_name(brcomp_method m) {
  return ValidMethod(m) ? brcomp::MethodName(ToMethod(m)) : nullptr;
}

brcomp_status brcomp_method_from_name(const char* name, brcomp_method* out) {
  if (name == nullptr) return NullArg("name");
  if (out == nullptr) return NullArg("out");
  auto m = brcomp::MethodFromName(name);
  if (!m.has_value()) {
    return Fail(BRCOMP_E_DOMAIN, std::string("unknown method: ") + name);
  }
  *out = FromMethod(*m);
  return BRCOMP_OK;
}

void brcomp_options_default(brcomp_options* opts) {
  if (opts == nullptr) return;
  const brcomp::AccountantOptions d;
  opts->t_grid = d.adaptive.t_grid;
  opts->refine_iters = d.adaptive.refine_iters;
  opts->depth_cap = d.adaptive.depth_cap;
  opts->lambda_max = d.lambda.lambda_max;
  opts->threads = 0;
}

brcomp_status brcomp_compute_delta(brcomp_method m, const double* eps,
                                   size_t k, double eps_g,
                                   const brcomp_options* opts, double* out,
                                   char** meta) {
  if (eps == nullptr && k > 0) return NullArg("eps");
  if (out == nullptr) return NullArg("out");
  if (!ValidMethod(m)) return Fail(BRCOMP_E_DOMAIN, "unknown method id");
  return Guard([&] {
    auto r = brcomp::ComputeDelta(ToMethod(m), Vec(eps, k), eps_g,
                                  ToOptions(opts));
    if (!r.ok()) return FromStatus(r.status());
    *out = r->value;
    if (meta != nullptr) *meta = Dup(r->meta);
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_compute_epsilon(brcomp_method m, const double* eps,
                                     size_t k, double delta_g,
                                     const brcomp_options* opts, double* out,
                                     char** meta) {
  if (eps == nullptr && k > 0) return NullArg("eps");
  if (out == nullptr) return NullArg("out");
  if (!ValidMethod(m)) return Fail(BRCOMP_E_DOMAIN, "unknown method id");
  return Guard([&] {
    auto r = brcomp::ComputeEpsilon(ToMethod(m), Vec(eps, k), delta_g,
                                    ToOptions(opts));
    if (!r.ok()) return FromStatus(r.status());
    *out = r->value;
    if (meta != nullptr) *meta = Dup(r->meta);
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_curve_compute(double eps, int64_t k_max, double delta_g,
                                   const brcomp_method* methods,
                                   size_t num_methods,
                                   const brcomp_options* opts,
                                   brcomp_curve** out) {
  if (methods == nullptr && num_methods > 0) return NullArg("methods");
  if (out == nullptr) return NullArg("out");
  std::vector<brcomp::Method> ms;
  for (size_t i = 0; i < num_methods; ++i) {
    if (!ValidMethod(methods[i])) {
      return Fail(BRCOMP_E_DOMAIN, "unknown method id");
    }
    ms.push_back(ToMethod(methods[i]));
  }
  return Guard([&] {
    auto r = brcomp::ComputeCurve(eps, k_max, delta_g, ms, ToOptions(opts));
    if (!r.ok()) return FromStatus(r.status());
    *out = new brcomp_curve{std::move(*r)};
    return BRCOMP_OK;
  });
}

size_t brcomp_curve_size(const brcomp_curve* c) {
  return c == nullptr ? 0 : c->rows.size();
}

brcomp_status brcomp_curve_row_at(const brcomp_curve* c, size_t i,
                                  brcomp_curve_row* out) {
  if (c == nullptr) return NullArg("curve");
  if (out == nullptr) return NullArg("out");
  if (i >= c->rows.size()) return Fail(BRCOMP_E_DOMAIN, "row out of range");
  const brcomp::CurveRow& r = c->rows[i];
  out->k = r.k;
  out->method = FromMethod(r.method);
  out->eps = r.eps;
  out->delta_g = r.delta_g;
  out->eps_g = r.eps_g;
  out->solver_meta = r.solver_meta.c_str();
  return BRCOMP_OK;
}

void brcomp_curve_free(brcomp_curve* c) { delete c; }

brcomp_status brcomp_max_queries(brcomp_method m, double eps,
                                 double eps_g_budget, double delta_g,
                                 int64_t k_limit, const brcomp_options* opts,
                                 int64_t* out) {
  if (out == nullptr) return NullArg("out");
  if (!ValidMethod(m)) return Fail(BRCOMP_E_DOMAIN, "unknown method id");
  return Guard([&] {
    auto r = brcomp::MaxQueries(ToMethod(m), eps, eps_g_budget, delta_g,
                                k_limit, ToOptions(opts));
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_validate(brcomp_level level, uint64_t seed, int threads,
                              char** json, int* all_pass) {
  if (json == nullptr) return NullArg("json");
  return Guard([&] {
    const auto checks = brcomp::RunValidation(
        level == BRCOMP_VALIDATE_FULL ? brcomp::ValidationLevel::kFull
                                      : brcomp::ValidationLevel::kFast,
        seed, threads > 0 ? threads : brcomp::DefaultThreads());
    nlohmann::json arr = nlohmann::json::array();
    bool ok = true;
    for (const auto& c : checks) {
      ok = ok && c.pass;
      nlohmann::json row;
      row["check"] = c.check;
      row["params"] = c.params;
      row["expected"] = c.expected;
      if (std::isfinite(c.got)) {
        row["got"] = c.got;
      } else {
        row["got"] = nullptr;
      }
      row["tol"] = c.tol;
      row["pass"] = c.pass;
      arr.push_back(std::move(row));
    }
    *json = Dup(arr.dump(2));
    if (all_pass != nullptr) *all_pass = ok;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_grr_probs(double eps, double t, brcomp_grr* out) {
  if (out == nullptr) return NullArg("out");
  auto r = brcomp::ComputeGrrProbs(eps, t);
  if (!r.ok()) return FromStatus(r.status());
  out->p = r->p;
  out->q = r->q;
  out->one_minus_p = r->one_minus_p;
  out->one_minus_q = r->one_minus_q;
  return BRCOMP_OK;
}

brcomp_status brcomp_br_witness(const double* px, const double* px_prime,
                                size_t n, double eps, int* found, double* t) {
  if ((px == nullptr || px_prime == nullptr) && n > 0) return NullArg("probs");
  if (found == nullptr || t == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::BrWitness({Vec(px, n), Vec(px_prime, n)}, eps);
    if (!r.ok()) return FromStatus(r.status());
    *found = r->has_value();
    *t = r->value_or(0.0);
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_hockey_stick(const double* px, const double* px_prime,
                                  size_t n, double eps_g, double* out) {
  if ((px == nullptr || px_prime == nullptr) && n > 0) return NullArg("probs");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::HockeyStick({Vec(px, n), Vec(px_prime, n)}, eps_g);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_quality_table_parse(const char* json,
                                         brcomp_quality_table** out) {
  if (json == nullptr) return NullArg("json");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::ParseQualityScoreTable(json);
    if (!r.ok()) return FromStatus(r.status());
    *out = new brcomp_quality_table{std::move(*r)};
    return BRCOMP_OK;
  });
}

void brcomp_quality_table_free(brcomp_quality_table* t) { delete t; }

brcomp_status brcomp_quality_range(const brcomp_quality_table* t,
                                   double* out) {
  if (t == nullptr) return NullArg("table");
  if (out == nullptr) return NullArg("out");
  auto r = brcomp::QualityRange(t->t);
  if (!r.ok()) return FromStatus(r.status());
  *out = *r;
  return BRCOMP_OK;
}

brcomp_status brcomp_quality_sensitivity(const brcomp_quality_table* t,
                                         double* out) {
  if (t == nullptr) return NullArg("table");
  if (out == nullptr) return NullArg("out");
  auto r = brcomp::QualitySensitivity(t->t);
  if (!r.ok()) return FromStatus(r.status());
  *out = *r;
  return BRCOMP_OK;
}

brcomp_status brcomp_exp_mech_probs(const brcomp_quality_table* t, double eps,
                                    int dataset, brcomp_normalizer normalizer,
                                    double* out, size_t cap, size_t* n,
                                    int* degenerate) {
  if (t == nullptr) return NullArg("table");
  if (n == nullptr) return NullArg("n");
  if (out == nullptr && cap > 0) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::ExpMechProbs(t->t, eps, dataset,
                                  normalizer == BRCOMP_NORMALIZER_RANGE
                                      ? brcomp::Normalizer::kRange
                                      : brcomp::Normalizer::kSensitivity);
    if (!r.ok()) return FromStatus(r.status());
    *n = r->probs.size();
    for (size_t i = 0; i < r->probs.size() && i < cap; ++i) {
      out[i] = r->probs[i];
    }
    if (degenerate != nullptr) *degenerate = r->degenerate;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_counting_query_probs(const uint8_t* bits, size_t rows,
                                          int d, double eps, double* out) {
  if (bits == nullptr && rows > 0) return NullArg("bits");
  if (out == nullptr) return NullArg("out");
  if (d < 1) return Fail(BRCOMP_E_DOMAIN, "d must be >= 1");
  return Guard([&] {
    auto r = brcomp::CountingQueryProbs(ToBits(bits, rows, d), d, eps);
    if (!r.ok()) return FromStatus(r.status());
    std::copy(r->begin(), r->end(), out);
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_cq_t_value(const uint8_t* x, size_t x_rows,
                                const uint8_t* x_prime, size_t x_prime_rows,
                                int d, double eps, double* out) {
  if ((x == nullptr && x_rows > 0) || (x_prime == nullptr && x_prime_rows > 0))
    return NullArg("bits");
  if (out == nullptr) return NullArg("out");
  if (d < 1) return Fail(BRCOMP_E_DOMAIN, "d must be >= 1");
  return Guard([&] {
    auto r = brcomp::CqTValue(ToBits(x, x_rows, d),
                              ToBits(x_prime, x_prime_rows, d), d, eps);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_delta_hom_fixed_t(double eps, int64_t k, double t,
                                       double eps_g, double* out) {
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::DeltaHomFixedT({eps, k, eps_g}, t);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_delta_het_fixed_t(const double* eps, const double* t,
                                       size_t k, double eps_g, double* out) {
  if ((eps == nullptr || t == nullptr) && k > 0) return NullArg("eps/t");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::DeltaHetFixedT(Vec(eps, k), Vec(t, k), eps_g);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_delta_opt_nonadaptive(double eps, int64_t k, double eps_g,
                                           brcomp_nonadaptive* out) {
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::DeltaOptNonadaptiveHom({eps, k, eps_g});
    if (!r.ok()) return FromStatus(r.status());
    out->delta = r->delta;
    out->t = r->t;
    out->ell = r->ell;
    out->constant_region = r->constant_region;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_f_ell(double eps, int64_t k, double eps_g, int64_t ell,
                           double t, double* out) {
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::FEll({eps, k, eps_g}, ell, t);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_df_ell_dt(double eps, int64_t k, double eps_g,
                               int64_t ell, double t, double* out) {
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::DFEllDt({eps, k, eps_g}, ell, t);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_dp_optcomp_hom(double eps_dp, int64_t k, double eps_g,
                                    double* out) {
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::DpOptCompHom(eps_dp, k, eps_g);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_dp_optcomp_het(const double* eps_dp, size_t k,
                                    double eps_g, double* out) {
  if (eps_dp == nullptr && k > 0) return NullArg("eps");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::DpOptCompHet(Vec(eps_dp, k), eps_g);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_strategy_create(int depth, const double* t, size_t n,
                                     brcomp_strategy** out) {
  if (t == nullptr && n > 0) return NullArg("t");
  if (out == nullptr) return NullArg("out");
  if (depth < 0 || depth > 62 || n != (size_t{1} << depth) - 1) {
    return Fail(BRCOMP_E_DOMAIN, "strategy needs 2^depth - 1 thresholds");
  }
  return Guard([&] {
    *out = new brcomp_strategy{{depth, Vec(t, n)}};
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_strategy_constant(const double* t_per_level, int depth,
                                       brcomp_strategy** out) {
  if (t_per_level == nullptr && depth > 0) return NullArg("t_per_level");
  if (out == nullptr) return NullArg("out");
  if (depth < 0 || depth > brcomp::kMaxDepthCap) {
    return Fail(BRCOMP_E_CAP, "depth exceeds cap");
  }
  return Guard([&] {
    *out = new brcomp_strategy{
        brcomp::ConstantStrategy(Vec(t_per_level, depth))};
    return BRCOMP_OK;
  });
}

int brcomp_strategy_depth(const brcomp_strategy* s) {
  return s == nullptr ? 0 : s->s.depth;
}

size_t brcomp_strategy_size(const brcomp_strategy* s) {
  return s == nullptr ? 0 : s->s.t.size();
}

const double* brcomp_strategy_thresholds(const brcomp_strategy* s) {
  return s == nullptr ? nullptr : s->s.t.data();
}

void brcomp_strategy_free(brcomp_strategy* s) { delete s; }

brcomp_status brcomp_strategy_value(const brcomp_strategy* s,
                                    const double* eps, size_t k, double eps_g,
                                    double* out) {
  if (s == nullptr) return NullArg("strategy");
  if (eps == nullptr && k > 0) return NullArg("eps");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::StrategyValue(s->s, Vec(eps, k), eps_g);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_adaptive_lb(const double* eps, size_t k, double eps_g,
                                 const brcomp_options* opts, double* out,
                                 brcomp_strategy** strategy) {
  if (eps == nullptr && k > 0) return NullArg("eps");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r =
        brcomp::DeltaAdaptiveLb(Vec(eps, k), eps_g, ToOptions(opts).adaptive);
    if (!r.ok()) return FromStatus(r.status());
    *out = r->delta;
    if (strategy != nullptr) {
      *strategy = new brcomp_strategy{std::move(r->strategy)};
    }
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_adaptive_edge_high(double eps, int64_t k, double eps_g,
                                        double* out) {
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::AdaptiveEdgeHigh(eps, k, eps_g);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_adaptive_edge_low(double eps, int64_t k, double eps_g,
                                       double* out) {
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::AdaptiveEdgeLow(eps, k, eps_g);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_gap_certificate(double eps, int64_t k, double eps_g,
                                     const brcomp_options* opts,
                                     brcomp_gap* out,
                                     brcomp_strategy** strategy) {
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::ComputeGapCertificate(eps, k, eps_g,
                                           ToOptions(opts).adaptive);
    if (!r.ok()) return FromStatus(r.status());
    out->delta_nonadaptive = r->delta_nonadaptive;
    out->t_nonadaptive = r->t_nonadaptive;
    out->delta_adaptive_lb = r->delta_adaptive_lb;
    out->gap = r->gap;
    out->tolerance = r->tolerance;
    out->strict = r->strict;
    if (strategy != nullptr) {
      *strategy = new brcomp_strategy{std::move(r->strategy)};
    }
    return BRCOMP_OK;
  });
}

double brcomp_max_kl(double eps) { return brcomp::MaxKl(eps); }

double brcomp_h_eps(double eps, double lambda) {
  return brcomp::HEps(eps, lambda);
}

brcomp_status brcomp_u_function(brcomp_u_kind kind, double eps, double lambda,
                                double* out) {
  if (out == nullptr) return NullArg("out");
  if (!ValidKind(kind)) return Fail(BRCOMP_E_DOMAIN, "unknown U kind");
  if (!(eps >= 0.0) || !(lambda >= 0.0)) {
    return Fail(BRCOMP_E_DOMAIN, "eps and lambda must be nonnegative");
  }
  *out = brcomp::UFunction(ToKind(kind), eps, lambda);
  return BRCOMP_OK;
}

brcomp_status brcomp_bound_delta(brcomp_u_kind kind, const double* eps,
                                 size_t k, double eps_g, double lambda_max,
                                 brcomp_bound* out) {
  if (eps == nullptr && k > 0) return NullArg("eps");
  if (out == nullptr) return NullArg("out");
  if (!ValidKind(kind)) return Fail(BRCOMP_E_DOMAIN, "unknown U kind");
  return Guard([&] {
    brcomp::LambdaSearch search;
    search.lambda_max = lambda_max;
    auto r = brcomp::GenericDeltaFromU(ToKind(kind), Vec(eps, k), eps_g,
                                       search);
    if (!r.ok()) return FromStatus(r.status());
    CopyBound(*r, out);
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_bound_epsilon(brcomp_u_kind kind, const double* eps,
                                   size_t k, double delta_g, double lambda_max,
                                   brcomp_bound* out) {
  if (eps == nullptr && k > 0) return NullArg("eps");
  if (out == nullptr) return NullArg("out");
  if (!ValidKind(kind)) return Fail(BRCOMP_E_DOMAIN, "unknown U kind");
  return Guard([&] {
    brcomp::LambdaSearch search;
    search.lambda_max = lambda_max;
    auto r = brcomp::GenericEpsilonFromU(ToKind(kind), Vec(eps, k), delta_g,
                                         search);
    if (!r.ok()) return FromStatus(r.status());
    CopyBound(*r, out);
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_optkl_epsilon(const double* eps, size_t k, double delta_g,
                                   double* out) {
  if (eps == nullptr && k > 0) return NullArg("eps");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::OptKlEpsilon(Vec(eps, k), delta_g);
    if (!r.ok()) return FromStatus(r.status());
    *out = *r;
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_brute_force_nonadaptive(const double* eps, size_t k,
                                             double eps_g, int grid_points,
                                             brcomp_brute_force* out) {
  if (eps == nullptr && k > 0) return NullArg("eps");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::BruteForceNonadaptive(Vec(eps, k), eps_g, grid_points);
    if (!r.ok()) return FromStatus(r.status());
    CopyBrute(*r, out);
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_brute_force_edge(double eps, int k, double eps_g,
                                      int high, int grid_points,
                                      brcomp_brute_force* out) {
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::BruteForceEdge(eps, k, eps_g, high != 0, grid_points);
    if (!r.ok()) return FromStatus(r.status());
    CopyBrute(*r, out);
    return BRCOMP_OK;
  });
}

brcomp_status brcomp_simulate(const brcomp_strategy* s, const double* eps,
                              size_t k, double eps_g, int64_t n, uint64_t seed,
                              int threads, brcomp_sim_report* out) {
  if (s == nullptr) return NullArg("strategy");
  if (eps == nullptr && k > 0) return NullArg("eps");
  if (out == nullptr) return NullArg("out");
  return Guard([&] {
    auto r = brcomp::SimulateAdaptiveGame(s->s, Vec(eps, k), eps_g, n, seed,
                                          threads);
    if (!r.ok()) return FromStatus(r.status());
    out->delta_hat = r->delta_hat;
    out->n_samples = r->n_samples;
    out->seed = r->seed;
    out->half_width_95 = r->half_width_95;
    out->p_tail = r->p_tail;
    out->q_tail = r->q_tail;
    return BRCOMP_OK;
  });
}

}  // extern "C"
