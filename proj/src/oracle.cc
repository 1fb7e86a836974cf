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

#include "brcomp/oracle.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <thread>

#include "absl/status/status.h"
#include "boost/multiprecision/cpp_bin_float.hpp"
#include "absl/strings/str_cat.h"
#include "numeric.h"

namespace brcomp {
namespace {

using internal::KahanSum;

// Direct probability-space GRR, kept separate from the log-space code paths
// it is used to check.
struct PlainGrr {
  double p;
  double q;
};

PlainGrr PlainProbs(double eps, double t) {
  const double d = 1.0 - std::exp(-eps);
  return {(std::exp(-t) - std::exp(-eps)) / d, (1.0 - std::exp(t - eps)) / d};
}

using Objective = std::function<double(const std::vector<double>&)>;

// Grid search over prod [0, bounds_i] with `grid` points per axis followed by
// a pattern search over all 3^k - 1 neighbor directions.
BruteForceResult GridSearch(const std::vector<double>& bounds,
                            const Objective& f, int grid, bool symmetric) {
  const int k = static_cast<int>(bounds.size());
  BruteForceResult res;
  std::vector<double> t(k, 0.0);
  std::vector<int> idx(k, 0);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_t(k, 0.0);
  auto coord = [&](int d, int i) { return bounds[d] * i / (grid - 1); };
  // Odometer over the grid; with `symmetric`, only nondecreasing index
  // tuples are visited.
  while (true) {
    for (int d = 0; d < k; ++d) t[d] = coord(d, idx[d]);
    const double v = f(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
    int d = k - 1;
    while (d >= 0 && idx[d] == grid - 1) --d;
    if (d < 0) break;
    ++idx[d];
    for (int e = d + 1; e < k; ++e) idx[e] = symmetric ? idx[d] : 0;
  }
  res.grid_delta = best;

  // Lipschitz estimate from coordinate differences around the grid argmax.
  double lip = 0.0;
  const double h0 = bounds[0] / (grid - 1);
  for (int d = 0; d < k; ++d) {
    const double hd = bounds[d] / (grid - 1);
    std::vector<double> a = best_t;
    std::vector<double> b = best_t;
    a[d] = std::max(0.0, best_t[d] - hd);
    b[d] = std::min(bounds[d], best_t[d] + hd);
    if (b[d] > a[d]) lip += std::pow((f(b) - f(a)) / (b[d] - a[d]), 2);
  }
  res.resolution_bound = std::sqrt(lip) * h0 * std::sqrt(k) * 0.5;

  std::vector<std::vector<int>> dirs;
  const int ndirs = static_cast<int>(std::pow(3, k));
  for (int c = 0; c < ndirs; ++c) {
    std::vector<int> dir(k);
    int x = c;
    bool zero = true;
    for (int d = 0; d < k; ++d) {
      dir[d] = x % 3 - 1;
      x /= 3;
      zero = zero && dir[d] == 0;
    }
    if (!zero) dirs.push_back(dir);
  }
  double step = 1.0 / (grid - 1);  // Fraction of each bound.
  std::vector<double> cur = best_t;
  std::vector<double> trial(k);
  while (step > 1e-13) {
    bool moved = false;
    for (const auto& dir : dirs) {
      for (int d = 0; d < k; ++d) {
        trial[d] = std::clamp(cur[d] + dir[d] * step * bounds[d], 0.0,
                              bounds[d]);
      }
      const double v = f(trial);
      if (v > best) {
        best = v;
        cur = trial;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  res.delta = best;
  res.argmax = cur;
  return res;
}

}  // namespace

absl::StatusOr<double> HockeyStick(const FiniteMechanismPair& pair,
                                   double eps_g) {
  if (absl::Status s = ValidatePair(pair); !s.ok()) return s;
  const double scale = std::exp(eps_g);
  KahanSum s;
  for (size_t y = 0; y < pair.probs_x.size(); ++y) {
    s.Add(std::max(pair.probs_x[y] - scale * pair.probs_x_prime[y], 0.0));
  }
  return std::clamp(s.value(), 0.0, 1.0);
}

absl::StatusOr<BruteForceResult> BruteForceNonadaptive(
    const std::vector<double>& eps_list, double eps_g, int grid_points) {
  const int k = static_cast<int>(eps_list.size());
  if (k < 1 || k > kMaxBruteForceK) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "brute force supports 1 <= k <= ", kMaxBruteForceK, ", got ", k));
  }
  if (grid_points < 2) return absl::InvalidArgumentError("grid_points < 2");
  for (double e : eps_list) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      return absl::InvalidArgumentError("eps entries must be positive");
    }
  }
  const double scale = std::exp(eps_g);
  Objective f = [&](const std::vector<double>& t) {
    std::array<PlainGrr, kMaxBruteForceK> g;
    for (int i = 0; i < k; ++i) g[i] = PlainProbs(eps_list[i], t[i]);
    double sum = 0.0;
    for (int mask = 0; mask < (1 << k); ++mask) {
      double pp = 1.0;
      double qq = 1.0;
      for (int i = 0; i < k; ++i) {
        const bool one = (mask >> i) & 1;
        pp *= one ? 1.0 - g[i].q : g[i].q;
        qq *= one ? 1.0 - g[i].p : g[i].p;
      }
      sum += std::max(pp - scale * qq, 0.0);
    }
    return sum;
  };
  const bool symmetric =
      std::all_of(eps_list.begin(), eps_list.end(),
                  [&](double e) { return e == eps_list[0]; });
  return GridSearch(eps_list, f, grid_points, symmetric);
}

absl::StatusOr<BruteForceResult> BruteForceEdge(double eps, int k,
                                                double eps_g, bool high,
                                                int grid_points) {
  if (k < 1 || k > kMaxBruteForceK) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "brute force supports 1 <= k <= ", kMaxBruteForceK, ", got ", k));
  }
  if (!(eps > 0.0)) return absl::InvalidArgumentError("eps must be positive");
  if (grid_points < 2) return absl::InvalidArgumentError("grid_points < 2");
  Objective f = [&](const std::vector<double>& t) {
    double prod = 1.0;
    double sum_t = 0.0;
    for (int i = 0; i < k; ++i) {
      const PlainGrr g = PlainProbs(eps, t[i]);
      prod *= high ? g.q : 1.0 - g.q;
      sum_t += t[i];
    }
    if (high) return prod * std::max(1.0 - std::exp(eps_g - sum_t), 0.0);
    return 1.0 - std::exp(eps_g) +
           prod * (std::exp(eps_g + k * eps - sum_t) - 1.0);
  };
  return GridSearch(std::vector<double>(k, eps), f, grid_points, true);
}

absl::StatusOr<SimulationReport> SimulateAdaptiveGame(
    const AdversaryStrategy& strategy, const std::vector<double>& eps_list,
    double eps_g, int64_t n, uint64_t seed, int threads) {
  if (absl::Status s = ValidateStrategy(strategy, eps_list); !s.ok()) return s;
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (std::isnan(eps_g)) return absl::InvalidArgumentError("eps_g is NaN");
  const size_t nodes = strategy.t.size();
  std::vector<double> q(nodes), p(nodes), up(nodes), down(nodes);
  int d = 0;
  for (size_t node = 0; node < nodes; ++node) {
    if ((size_t{2} << d) <= node + 1) ++d;
    const PlainGrr g = PlainProbs(eps_list[d], strategy.t[node]);
    q[node] = g.q;
    p[node] = g.p;
    up[node] = strategy.t[node];
    down[node] = strategy.t[node] - eps_list[d];
  }
  const int depth = strategy.depth;
  std::array<int64_t, kSimulationShards> count_p{};
  std::array<int64_t, kSimulationShards> count_q{};
  auto run_shard = [&](int shard) {
    const int64_t ns = n / kSimulationShards + (shard < n % kSimulationShards);
    std::seed_seq seq{static_cast<uint32_t>(seed),
                      static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(shard)};
    std::mt19937_64 rng(seq);
    auto play = [&](const std::vector<double>& prob0) {
      int64_t hits = 0;
      for (int64_t i = 0; i < ns; ++i) {
        size_t node = 0;
        double loss = 0.0;
        for (int level = 0; level < depth; ++level) {
          const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
          if (u < prob0[node]) {
            loss += up[node];
            node = 2 * node + 1;
          } else {
            loss += down[node];
            node = 2 * node + 2;
          }
        }
        if (loss > eps_g) ++hits;
      }
      return hits;
    };
    count_p[shard] = play(q);
    count_q[shard] = play(p);
  };
  int nt = threads > 0 ? threads
                       : static_cast<int>(std::thread::hardware_concurrency());
  nt = std::clamp(nt, 1, kSimulationShards);
  if (nt == 1) {
    for (int s = 0; s < kSimulationShards; ++s) run_shard(s);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nt; ++w) {
      pool.emplace_back([&, w] {
        for (int s = w; s < kSimulationShards; s += nt) run_shard(s);
      });
    }
    for (auto& th : pool) th.join();
  }
  int64_t cp = 0;
  int64_t cq = 0;
  for (int s = 0; s < kSimulationShards; ++s) {
    cp += count_p[s];
    cq += count_q[s];
  }
  SimulationReport rep;
  rep.n_samples = n;
  rep.seed = seed;
  const double nd = static_cast<double>(n);
  rep.p_tail = cp / nd;
  rep.q_tail = cq / nd;
  const double scale = std::exp(eps_g);
  rep.delta_hat = rep.p_tail - scale * rep.q_tail;
  const double v = rep.p_tail * (1.0 - rep.p_tail) +
                   scale * scale * rep.q_tail * (1.0 - rep.q_tail);
  rep.half_width_95 = 1.96 * std::sqrt(v / nd);
  return rep;
}

absl::StatusOr<FEllReference> FEllHighPrecision(double eps, int64_t k,
                                                double eps_g, int64_t ell,
                                                double t) {
  using Real = boost::multiprecision::cpp_bin_float_100;
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    return absl::InvalidArgumentError("eps must be positive and finite");
  }
  if (k < 1 || k > 1000) return absl::InvalidArgumentError("need 1 <= k <= 1000");
  if (ell < 0 || ell > k) return absl::InvalidArgumentError("need 0 <= ell <= k");
  if (!(t > 0.0 && t < eps)) return absl::InvalidArgumentError("need 0 < t < eps");
  const Real e(eps);
  const Real scale = exp(Real(eps_g));
  auto f = [&](const Real& x) {
    const Real d = 1 - exp(-e);
    const Real p = (exp(-x) - exp(-e)) / d;
    const Real q = (1 - exp(x - e)) / d;
    Real sum = 0;
    Real c = 1;
    for (int64_t i = 0; i <= ell; ++i) {
      if (i > 0) c = c * (k - i + 1) / i;
      sum += c * (pow(q, k - i) * pow(1 - q, i) -
                  scale * pow(p, k - i) * pow(1 - p, i));
    }
    return sum;
  };
  const Real x(t);
  const Real h = Real(eps) * Real("1e-45");
  FEllReference out;
  out.value = static_cast<double>(f(x));
  // F_k = 1 - e^{eps_g} for every t.
  out.derivative =
      ell == k ? 0.0 : static_cast<double>((f(x + h) - f(x - h)) / (2 * h));
  return out;
}

double FiniteDiffCheck(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       const std::vector<double>& points, double scale,
                       double rel_step, double floor) {
  const double h = rel_step * scale;
  double worst = 0.0;
  for (double x : points) {
    const double fd = (f(x + h) - f(x - h)) / (2.0 * h);
    const double an = df(x);
    const double den = std::max({std::fabs(an), std::fabs(fd), floor});
    worst = std::max(worst, std::fabs(fd - an) / den);
  }
  return worst;
}

}  // namespace brcomp
