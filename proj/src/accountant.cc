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

#include "brcomp/accountant.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "brcomp/nonadaptive.h"
#include "brcomp/oracle.h"
#include "numeric.h"

namespace brcomp {
namespace {

struct MethodInfo {
  Method method;
  const char* name;
};

constexpr MethodInfo kMethods[] = {
    {Method::kBasic, "basic"},
    {Method::kDpOptComp, "dp-optcomp"},
    {Method::kDpOptCompHalf, "dp-optcomp-half"},
    {Method::kBrOptComp, "br-optcomp"},
    {Method::kAdaptiveLb, "adaptive-lb"},
    {Method::kDr19, "dr19"},
    {Method::kDrv10, "drv10"},
    {Method::kOptKl, "optkl"},
    {Method::kMgf, "mgf"},
    {Method::kEdgeHigh, "edge-high"},
    {Method::kEdgeLow, "edge-low"},
};

constexpr int kHetBruteForceGrid = 400;
constexpr double kLogFloor = -745.0;

struct Composition {
  std::vector<double> eps;  // Positive entries only.
  double total = 0.0;
  bool homogeneous = true;

  int64_t k() const { return static_cast<int64_t>(eps.size()); }
};

absl::StatusOr<Composition> Prepare(const std::vector<double>& eps_list) {
  Composition c;
  for (double e : eps_list) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      return absl::InvalidArgumentError(
          absl::StrCat("eps entries must be nonnegative and finite, got ", e));
    }
    if (e > 0.0) c.eps.push_back(e);
  }
  for (double e : c.eps) c.homogeneous = c.homogeneous && e == c.eps[0];
  if (c.homogeneous && !c.eps.empty()) {
    c.total = c.eps[0] * static_cast<double>(c.eps.size());
  } else {
    double comp = 0.0;
    for (double e : c.eps) {
      const double y = e - comp;
      const double t = c.total + y;
      comp = (t - c.total) - y;
      c.total = t;
    }
  }
  return c;
}

std::optional<UFunctionKind> UKind(Method m) {
  switch (m) {
    case Method::kDr19:
      return UFunctionKind::kDr19;
    case Method::kDrv10:
      return UFunctionKind::kImprovedDrv10;
    case Method::kOptKl:
      return UFunctionKind::kKlImprovedDr19;
    case Method::kMgf:
      return UFunctionKind::kGeneralMgf;
    default:
      return std::nullopt;
  }
}

std::string BoundMeta(const BoundResult& b) {
  std::string meta = absl::StrFormat("lambda=%.6g", b.lambda);
  if (b.at_lambda_ceiling) absl::StrAppend(&meta, ";lambda_at_ceiling");
  if (b.capped) absl::StrAppend(&meta, ";capped");
  return meta;
}

absl::Status RequireHomogeneous(const Composition& c, Method m) {
  if (c.homogeneous) return absl::OkStatus();
  return absl::UnimplementedError(absl::StrCat(
      MethodName(m), " requires identical eps values; heterogeneous optimal "
                     "composition of bounded-range mechanisms is an open "
                     "problem"));
}

absl::StatusOr<AccountantValue> DeltaImpl(Method m, const Composition& c,
                                          double eps_g,
                                          const AccountantOptions& opts) {
  AccountantValue out;
  if (c.k() == 0) {
    out.value = std::max(-std::expm1(eps_g), 0.0);
    out.meta = "empty composition";
    return out;
  }
  const double e0 = c.eps[0];
  const int64_t k = c.k();
  switch (m) {
    case Method::kBasic:
      out.value = eps_g >= c.total ? 0.0 : 1.0;
      out.meta = eps_g >= c.total ? "basic" : "basic;vacuous";
      return out;
    case Method::kDpOptComp:
    case Method::kDpOptCompHalf: {
      const double f = m == Method::kDpOptComp ? 1.0 : 0.5;
      if (c.homogeneous) {
        absl::StatusOr<double> d = DpOptCompHom(f * e0, k, eps_g);
        if (!d.ok()) return d.status();
        out.value = *d;
        out.meta = "exact";
        return out;
      }
      std::vector<double> scaled = c.eps;
      for (double& e : scaled) e *= f;
      absl::StatusOr<double> d = DpOptCompHet(scaled, eps_g);
      if (!d.ok()) return d.status();
      out.value = *d;
      out.meta = "exact;subset-sum";
      return out;
    }
    case Method::kBrOptComp: {
      if (c.homogeneous) {
        const NonadaptiveResult r =
            DeltaOptNonadaptiveHomUnchecked(e0, k, eps_g);
        out.value = r.delta;
        out.meta = absl::StrFormat("exact;t=%.12g", r.t);
        if (r.ties.size() > 1) absl::StrAppend(&out.meta, ";ties");
        return out;
      }
      if (k <= kMaxBruteForceK) {
        absl::StatusOr<BruteForceResult> r =
            BruteForceNonadaptive(c.eps, eps_g, kHetBruteForceGrid);
        if (!r.ok()) return r.status();
        out.value = r->delta;
        out.meta = "grid-search";
        return out;
      }
      return absl::UnimplementedError(
          "br-optcomp for heterogeneous eps is limited to k <= 3; efficient "
          "heterogeneous optimal composition of bounded-range mechanisms is "
          "an open problem");
    }
    case Method::kAdaptiveLb: {
      absl::StatusOr<AdaptiveResult> r =
          DeltaAdaptiveLb(c.eps, eps_g, opts.adaptive);
      if (!r.ok()) return r.status();
      out.value = r->delta;
      out.meta = absl::StrFormat("lower-bound;t_grid=%d;refine_iters=%d;%s",
                                 opts.adaptive.t_grid,
                                 opts.adaptive.refine_iters,
                                 r->lattice ? "lattice" : "recursion");
      return out;
    }
    case Method::kEdgeHigh:
    case Method::kEdgeLow: {
      if (absl::Status s = RequireHomogeneous(c, m); !s.ok()) return s;
      absl::StatusOr<double> d = m == Method::kEdgeHigh
                                     ? AdaptiveEdgeHigh(e0, k, eps_g)
                                     : AdaptiveEdgeLow(e0, k, eps_g);
      if (!d.ok()) return d.status();
      out.value = *d;
      out.meta = "closed-form";
      return out;
    }
    default:
      break;
  }
  absl::StatusOr<BoundResult> b =
      GenericDeltaFromU(*UKind(m), c.eps, eps_g, opts.lambda);
  if (!b.ok()) return b.status();
  out.value = b->value;
  out.meta = BoundMeta(*b);
  return out;
}

// Solves delta(eps_g) = delta_g for a nonincreasing delta on [lo, hi].
absl::StatusOr<double> Invert(
    const std::function<absl::StatusOr<double>(double)>& delta, double lo,
    double hi, double delta_g) {
  absl::Status err = absl::OkStatus();
  const double target = std::log(delta_g);
  auto f = [&](double x) {
    absl::StatusOr<double> d = delta(x);
    if (!d.ok()) {
      err = d.status();
      return 0.0;
    }
    return std::max(std::log(*d), kLogFloor) - target;
  };
  double x;
  try {
    x = internal::SolveBracketed(f, lo, hi, 0.0);
  } catch (const std::exception& e) {
    return absl::InternalError(absl::StrCat("root finding failed: ", e.what()));
  }
  if (!err.ok()) return err;
  return x;
}

absl::StatusOr<AccountantValue> EpsilonImpl(Method m, const Composition& c,
                                            double delta_g,
                                            const AccountantOptions& opts) {
  AccountantValue out;
  if (c.k() == 0) {
    out.value = 0.0;
    out.meta = "empty composition";
    return out;
  }
  const double e0 = c.eps[0];
  const int64_t k = c.k();
  switch (m) {
    case Method::kBasic:
      out.value = c.total;
      out.meta = "basic";
      return out;
    case Method::kOptKl: {
      absl::StatusOr<double> v = OptKlEpsilon(c.eps, delta_g);
      if (!v.ok()) return v.status();
      out.value = *v;
      out.meta = *v >= c.total ? "closed-form;capped" : "closed-form";
      return out;
    }
    case Method::kDr19:
    case Method::kDrv10:
    case Method::kMgf: {
      absl::StatusOr<BoundResult> b =
          GenericEpsilonFromU(*UKind(m), c.eps, delta_g, opts.lambda);
      if (!b.ok()) return b.status();
      out.value = b->value;
      out.meta = BoundMeta(*b);
      return out;
    }
    default:
      break;
  }
  auto delta = [&](double eps_g) -> absl::StatusOr<double> {
    absl::StatusOr<AccountantValue> v = DeltaImpl(m, c, eps_g, opts);
    if (!v.ok()) return v.status();
    return v->value;
  };
  double lo = -c.total;
  double hi = c.total;
  if (m == Method::kDpOptCompHalf) {
    lo *= 0.5;
    hi *= 0.5;
  }
  if (m == Method::kEdgeHigh) {
    if (absl::Status s = RequireHomogeneous(c, m); !s.ok()) return s;
    lo = static_cast<double>(k - 1) * e0;
    absl::StatusOr<double> top = delta(lo);
    if (!top.ok()) return top.status();
    if (delta_g > *top) {
      return absl::FailedPreconditionError(absl::StrFormat(
          "delta_g=%.12g unreachable in the edge-high region; the largest "
          "value there is %.12g at eps_g=%.12g",
          delta_g, *top, lo));
    }
  }
  if (m == Method::kEdgeLow) {
    if (absl::Status s = RequireHomogeneous(c, m); !s.ok()) return s;
    hi = -static_cast<double>(k - 1) * e0;
    absl::StatusOr<double> bottom = delta(hi);
    if (!bottom.ok()) return bottom.status();
    if (delta_g < *bottom) {
      return absl::FailedPreconditionError(absl::StrFormat(
          "delta_g=%.12g unreachable in the edge-low region; the smallest "
          "value there is %.12g at eps_g=%.12g",
          delta_g, *bottom, hi));
    }
  }
  // Below -sum eps every method equals 1 - e^{eps_g}.
  if (m != Method::kEdgeHigh && delta_g >= -std::expm1(lo)) {
    out.value = std::log1p(-delta_g);
    out.meta = "constant-region";
    return out;
  }
  absl::StatusOr<double> x = Invert(delta, lo, hi, delta_g);
  if (!x.ok()) return x.status();
  out.value = *x;
  absl::StatusOr<AccountantValue> at = DeltaImpl(m, c, *x, opts);
  if (!at.ok()) return at.status();
  out.meta = absl::StrCat("inverted;", at->meta);
  return out;
}

}  // namespace

std::optional<Method> MethodFromName(const std::string& name) {
  for (const auto& info : kMethods) {
    if (name == info.name) return info.method;
  }
  return std::nullopt;
}

const char* MethodName(Method m) {
  for (const auto& info : kMethods) {
    if (info.method == m) return info.name;
  }
  return "unknown";
}

std::vector<Method> AllMethods() {
  std::vector<Method> out;
  for (const auto& info : kMethods) out.push_back(info.method);
  return out;
}

int DefaultThreads() {
  if (const char* env = std::getenv("BRCOMP_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

absl::StatusOr<AccountantValue> ComputeDelta(Method m,
                                             const std::vector<double>& eps,
                                             double eps_g,
                                             const AccountantOptions& opts) {
  if (std::isnan(eps_g)) return absl::InvalidArgumentError("eps_g is NaN");
  absl::StatusOr<Composition> c = Prepare(eps);
  if (!c.ok()) return c.status();
  return DeltaImpl(m, *c, eps_g, opts);
}

absl::StatusOr<AccountantValue> ComputeEpsilon(Method m,
                                               const std::vector<double>& eps,
                                               double delta_g,
                                               const AccountantOptions& opts) {
  if (!(delta_g > 0.0 && delta_g < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta_g must lie in (0, 1), got ", delta_g));
  }
  absl::StatusOr<Composition> c = Prepare(eps);
  if (!c.ok()) return c.status();
  return EpsilonImpl(m, *c, delta_g, opts);
}

absl::StatusOr<std::vector<CurveRow>> ComputeCurve(
    double eps, int64_t k_max, double delta_g,
    const std::vector<Method>& methods, const AccountantOptions& opts) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError("eps must be positive and finite");
  }
  if (k_max < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("k_max must be at least 1, got ", k_max));
  }
  if (k_max > kMaxCurveK) {
    return absl::ResourceExhaustedError(
        absl::StrCat("k_max=", k_max, " exceeds the cap ", kMaxCurveK));
  }
  if (!(delta_g > 0.0 && delta_g < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta_g must lie in (0, 1), got ", delta_g));
  }
  std::vector<Method> sorted = methods;
  std::sort(sorted.begin(), sorted.end(), [](Method a, Method b) {
    return std::strcmp(MethodName(a), MethodName(b)) < 0;
  });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Method m : sorted) {
    if (m == Method::kAdaptiveLb && k_max > opts.adaptive.depth_cap) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "adaptive-lb curve needs k_max <= depth cap ",
          opts.adaptive.depth_cap));
    }
  }
  std::vector<CurveRow> rows;
  for (Method m : sorted) {
    for (int64_t k = 1; k <= k_max; ++k) {
      CurveRow r;
      r.k = k;
      r.method = m;
      r.eps = eps;
      r.delta_g = delta_g;
      rows.push_back(r);
    }
  }
  std::vector<absl::Status> errors(rows.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= rows.size()) return;
      CurveRow& r = rows[i];
      absl::StatusOr<AccountantValue> v = ComputeEpsilon(
          r.method, std::vector<double>(static_cast<size_t>(r.k), eps),
          delta_g, opts);
      if (!v.ok()) {
        errors[i] = v.status();
        continue;
      }
      r.eps_g = v->value;
      r.solver_meta = v->meta;
    }
  };
  const int nt = std::max(
      1, std::min<int>(opts.threads > 0 ? opts.threads : DefaultThreads(),
                       static_cast<int>(rows.size())));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nt; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].ok()) {
      return absl::Status(
          errors[i].code(),
          absl::StrCat(MethodName(rows[i].method), " at k=", rows[i].k, ": ",
                       errors[i].message()));
    }
  }
  return rows;
}

absl::StatusOr<int64_t> MaxQueries(Method m, double eps, double eps_g_budget,
                                   double delta_g, int64_t k_limit,
                                   const AccountantOptions& opts) {
  if (!(eps > 0.0)) return absl::InvalidArgumentError("eps must be positive");
  if (!(delta_g > 0.0 && delta_g < 1.0)) {
    return absl::InvalidArgumentError("delta_g must lie in (0, 1)");
  }
  if (k_limit < 1) return absl::InvalidArgumentError("k_limit must be >= 1");
  // eps_g(k) <= budget  <=>  delta(k, budget) <= delta_g, since delta is
  // nonincreasing in eps_g.
  auto fits = [&](int64_t k) -> absl::StatusOr<bool> {
    const std::vector<double> list(static_cast<size_t>(k), eps);
    absl::StatusOr<AccountantValue> v = ComputeDelta(m, list, eps_g_budget, opts);
    if (!v.ok()) return v.status();
    return v->value <= delta_g;
  };
  absl::StatusOr<bool> first = fits(1);
  if (!first.ok()) return first.status();
  if (!*first) return 0;
  int64_t good = 1;
  int64_t bad = -1;
  while (bad < 0) {
    const int64_t next = std::min(good * 2, k_limit);
    if (next == good) return good;
    absl::StatusOr<bool> ok = fits(next);
    if (!ok.ok()) return ok.status();
    if (*ok) {
      good = next;
    } else {
      bad = next;
    }
  }
  while (bad - good > 1) {
    const int64_t mid = good + (bad - good) / 2;
    absl::StatusOr<bool> ok = fits(mid);
    if (!ok.ok()) return ok.status();
    if (*ok) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return good;
}

}  // namespace brcomp
