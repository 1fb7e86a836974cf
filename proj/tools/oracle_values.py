# Copyright 2026 The brcomp Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent high-precision reference values frozen into the unit tests.

Everything here works in 50-digit arithmetic straight from the output
distributions (explicit outcome enumeration, dense search plus golden
section), sharing no code with the C++ library.
"""

import itertools

import mpmath as mp

mp.mp.dps = 50


def grr(eps, t):
  eps, t = mp.mpf(eps), mp.mpf(t)
  q = (1 - mp.exp(t - eps)) / (1 - mp.exp(-eps))
  p = (mp.exp(-t) - mp.exp(-eps)) / (1 - mp.exp(-eps))
  return p, q


def hockey_fixed_t(eps_list, t_list, eps_g):
  """Sum over all 2^k outcome vectors of (P - e^eps_g Q)_+."""
  probs = [grr(e, t) for e, t in zip(eps_list, t_list)]
  scale = mp.exp(eps_g)
  total = mp.mpf(0)
  for bits in itertools.product((0, 1), repeat=len(eps_list)):
    pp, qq = mp.mpf(1), mp.mpf(1)
    for b, (p, q) in zip(bits, probs):
      pp *= (1 - q) if b else q
      qq *= (1 - p) if b else p
    total += max(pp - scale * qq, 0)
  return total


def hockey_binomial(eps, k, t, eps_g):
  p, q = grr(eps, t)
  scale = mp.exp(eps_g)
  total = mp.mpf(0)
  for i in range(k + 1):
    c = mp.binomial(k, i)
    total += max(c * q**(k - i) * (1 - q)**i -
                 scale * c * p**(k - i) * (1 - p)**i, 0)
  return total


def maximize(f, lo, hi, n=4000):
  lo, hi = mp.mpf(lo), mp.mpf(hi)
  xs = [lo + (hi - lo) * i / n for i in range(n + 1)]
  vals = [f(x) for x in xs]
  j = max(range(len(xs)), key=lambda i: vals[i])
  a = xs[max(j - 1, 0)]
  b = xs[min(j + 1, n)]
  g = (mp.sqrt(5) - 1) / 2
  for _ in range(200):
    c = b - g * (b - a)
    d = a + g * (b - a)
    if f(c) >= f(d):
      b = d
    else:
      a = c
  x = (a + b) / 2
  return max(f(x), vals[j])


def opt_nonadaptive(eps, k, eps_g):
  return maximize(lambda t: hockey_binomial(eps, k, t, eps_g), 0, eps)


def rr_optcomp(eps_dp, k, eps_g):
  """Composition of k randomized-response mechanisms."""
  e = mp.mpf(eps_dp)
  a = mp.exp(e) / (1 + mp.exp(e))
  scale = mp.exp(eps_g)
  total = mp.mpf(0)
  for i in range(k + 1):
    c = mp.binomial(k, i)
    total += max(c * a**(k - i) * (1 - a)**i -
                 scale * c * (1 - a)**(k - i) * a**i, 0)
  return total


def maxkl(eps):
  eps = mp.mpf(eps)
  x = eps / mp.expm1(eps)
  return x - 1 - mp.log(x)


def h_eps(eps, lam):
  eps, lam = mp.mpf(eps), mp.mpf(lam)

  def g(t):
    p, _ = grr(eps, t)
    return lam * (eps - t) + mp.log(1 + p * mp.expm1(-lam * eps))

  return max(maximize(g, 0, eps), 0)


def edge_high(eps, k, eps_g):
  def f(s):
    _, q = grr(eps, s / k)
    return q**k * max(1 - mp.exp(eps_g - s), 0)

  return maximize(f, 0, k * eps)


def edge_low(eps, k, eps_g):
  def f(s):
    _, q = grr(eps, s / k)
    return 1 - mp.exp(eps_g) + (1 - q)**k * (mp.exp(eps_g + k * eps - s) - 1)

  return maximize(f, 0, k * eps)


def f_ell(eps, k, eps_g, ell, t):
  p, q = grr(eps, t)
  scale = mp.exp(eps_g)
  total = mp.mpf(0)
  for i in range(ell + 1):
    c = mp.binomial(k, i)
    total += c * q**(k - i) * (1 - q)**i - scale * c * p**(k - i) * (1 - p)**i
  return total


def main():
  rows = [
      ("grr_p(1,0.5)", grr(1, 0.5)[0]),
      ("grr_q(1,0.5)", grr(1, 0.5)[1]),
      ("fixed_t(1,k=1,t=0.5,g=0)", hockey_fixed_t([1], [0.5], 0)),
      ("fixed_t(1,k=2,t=0.5,g=0)", hockey_fixed_t([1] * 2, [0.5] * 2, 0)),
      ("fixed_t(0.3,k=5,t=0.1,g=0.2)",
       hockey_fixed_t([0.3] * 5, [0.1] * 5, 0.2)),
      ("fixed_t(1,k=40,t=0.4,g=2)", hockey_binomial(1, 40, mp.mpf("0.4"), 2)),
      ("het_fixed_t([0.5,1,2],[0.1,0.6,1.5],0.3)",
       hockey_fixed_t([0.5, 1, 2], [0.1, 0.6, 1.5], 0.3)),
      ("opt(1,k=2,g=0)", opt_nonadaptive(1, 2, 0)),
      ("opt(1,k=3,g=0.5)", opt_nonadaptive(1, 3, 0.5)),
      ("opt(0.1,k=10,g=0.2)", opt_nonadaptive(0.1, 10, 0.2)),
      ("opt(1,k=4,g=0.5)", opt_nonadaptive(1, 4, 0.5)),
      ("rr(0.5,k=3,g=0.5)", rr_optcomp(0.5, 3, 0.5)),
      ("rr(0.1,k=20,g=0.4)", rr_optcomp(0.1, 20, 0.4)),
      ("maxkl(1)", maxkl(1)),
      ("maxkl(0.01)", maxkl(mp.mpf("0.01"))),
      ("maxkl(1e-7)", maxkl(mp.mpf("1e-7"))),
      ("h(1,2)", h_eps(1, 2)),
      ("h(0.1,30)", h_eps(mp.mpf("0.1"), 30)),
      ("edge_high(1,3,2.5)", edge_high(1, 3, 2.5)),
      ("edge_low(1,3,-2.5)", edge_low(1, 3, -2.5)),
      ("f_ell(1,k=6,g=0.5,ell=2,t=0.4)", f_ell(1, 6, 0.5, 2, mp.mpf("0.4"))),
  ]
  for name, v in rows:
    print(f"{name:45s} {mp.nstr(v, 17)}")


if __name__ == "__main__":
  main()
