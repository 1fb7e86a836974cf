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

#ifndef BRCOMP_SRC_NUMERIC_H_
#define BRCOMP_SRC_NUMERIC_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "boost/math/tools/minima.hpp"
#include "boost/math/tools/roots.hpp"

namespace brcomp::internal {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(e^x - 1) for x > 0.
inline double LogExpm1(double x) {
  if (x > 30.0) return x + std::log1p(-std::exp(-x));
  return std::log(std::expm1(x));
}

// log(1 - e^x) for x < 0.
inline double Log1mExp(double x) {
  if (x > -0.6931471805599453) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

inline double LogChoose(int64_t n, int64_t k) {
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

// n * log_x with the convention 0 * log(0) = 0.
inline double PowLog(int64_t n, double log_x) {
  return n == 0 ? 0.0 : static_cast<double>(n) * log_x;
}

class KahanSum {
 public:
  void Add(double x) {
    double y = x - c_;
    double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

// Maximizes f on [lo, hi]; returns (argmax, max).
template <typename F>
std::pair<double, double> MaximizeBrent(F f, double lo, double hi,
                                        int max_iters = 200) {
  if (!(hi > lo)) return {lo, f(lo)};
  boost::uintmax_t iters = static_cast<boost::uintmax_t>(max_iters);
  auto r = boost::math::tools::brent_find_minima(
      [&f](double x) { return -f(x); }, lo, hi,
      std::numeric_limits<double>::digits / 2, iters);
  return {r.first, -r.second};
}

// Root of a function that is positive at lo and negative at hi (or the
// reverse), to an absolute tolerance in x.
template <typename F>
double SolveBracketed(F f, double lo, double hi, double x_tol,
                      int max_iters = 300) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  boost::uintmax_t iters = static_cast<boost::uintmax_t>(max_iters);
  auto tol = [x_tol](double a, double b) {
    const double w = std::fabs(b - a);
    return w <= x_tol ||
           w <= 4.0 * std::numeric_limits<double>::epsilon() *
                    std::max(std::fabs(a), std::fabs(b));
  };
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace brcomp::internal

#endif  // BRCOMP_SRC_NUMERIC_H_
