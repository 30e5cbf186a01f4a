// Copyright 2026 The statsel Authors
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

// Test-only oracles, independent of the library implementations:
//  - exact rational arithmetic evaluation of textbook formulas
//  - exhaustive enumeration for the exact rank tests

#ifndef STATSEL_TESTS_ORACLES_HPP
#define STATSEL_TESTS_ORACLES_HPP

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace oracle {

using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return static_cast<double>(r); }

inline Rat rat_mean(const std::vector<Rat>& v) {
  Rat s = 0;
  for (const auto& x : v) s += x;
  return s / static_cast<int>(v.size());
}

// One-way ANOVA F in exact arithmetic; returns {F, df1, df2}.
struct RatAnova {
  Rat f;
  int df1;
  int df2;
};

inline RatAnova one_way_anova_rational(const std::vector<std::vector<Rat>>& groups) {
  int n = 0;
  Rat grand = 0;
  for (const auto& g : groups) {
    n += static_cast<int>(g.size());
    for (const auto& v : g) grand += v;
  }
  grand /= n;
  Rat between = 0, within = 0;
  for (const auto& g : groups) {
    const Rat m = rat_mean(g);
    between += static_cast<int>(g.size()) * (m - grand) * (m - grand);
    for (const auto& v : g) within += (v - m) * (v - m);
  }
  const int k = static_cast<int>(groups.size());
  return {(between / (k - 1)) / (within / (n - k)), k - 1, n - k};
}

// Levene's W in exact arithmetic (mean centers). Input values must be exact.
inline Rat levene_rational(const std::vector<std::vector<Rat>>& groups) {
  std::vector<std::vector<Rat>> dev(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const Rat c = rat_mean(groups[g]);
    for (const auto& v : groups[g]) {
      Rat d = v - c;
      if (d < 0) d = -d;
      dev[g].push_back(d);
    }
  }
  return one_way_anova_rational(dev).f;
}

// Average ranks in exact arithmetic.
inline std::vector<Rat> ranks_rational(const std::vector<Rat>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<Rat> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const Rat avg = Rat(static_cast<int>(i + j) ) / 2 + 1;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

// Pearson r^2 (exact) of two rational vectors; sign returned separately to
// avoid square roots. r = sign * sqrt(r2).
struct RatCorr {
  Rat r_squared;
  int sign;  // -1, 0, 1
};

inline RatCorr pearson_rational(const std::vector<Rat>& x,
                                const std::vector<Rat>& y) {
  const Rat mx = rat_mean(x), my = rat_mean(y);
  Rat sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  RatCorr out;
  out.r_squared = (sxy * sxy) / (sxx * syy);
  out.sign = sxy == 0 ? 0 : (sxy > 0 ? 1 : -1);
  return out;
}

// Kruskal-Wallis H with tie correction, exact arithmetic.
inline Rat kruskal_rational(const std::vector<std::vector<Rat>>& groups) {
  std::vector<Rat> pooled;
  for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
  const int n = static_cast<int>(pooled.size());
  const auto ranks = ranks_rational(pooled);
  Rat h = 0;
  std::size_t pos = 0;
  for (const auto& g : groups) {
    Rat rsum = 0;
    for (std::size_t i = 0; i < g.size(); ++i) rsum += ranks[pos + i];
    pos += g.size();
    h += rsum * rsum / static_cast<int>(g.size());
  }
  h = Rat(12) / (Rat(n) * (n + 1)) * h - 3 * (n + 1);
  // tie correction: 1 - sum(t^3 - t) / (n^3 - n)
  std::vector<Rat> sorted = pooled;
  std::sort(sorted.begin(), sorted.end());
  Rat tie = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const int t = static_cast<int>(j - i + 1);
    if (t > 1) tie += Rat(t) * t * t - t;
    i = j + 1;
  }
  return h / (1 - tie / (Rat(n) * n * n - n));
}

// Friedman Q with within-row average ranks (no tie divisor), exact.
inline Rat friedman_rational(const std::vector<std::vector<Rat>>& matrix) {
  const int n = static_cast<int>(matrix.size());
  const int k = static_cast<int>(matrix.front().size());
  std::vector<Rat> colsum(k, 0);
  for (const auto& row : matrix) {
    const auto r = ranks_rational(row);
    for (int j = 0; j < k; ++j) colsum[j] += r[j];
  }
  Rat s = 0;
  for (const auto& c : colsum) s += c * c;
  return Rat(12) / (Rat(n) * k * (k + 1)) * s - 3 * n * (k + 1);
}

// Chi-square statistic, exact.
inline Rat chi_square_rational(const std::vector<std::vector<int>>& obs) {
  const std::size_t r = obs.size(), c = obs.front().size();
  std::vector<Rat> rs(r, 0), cs(c, 0);
  Rat total = 0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      rs[i] += obs[i][j];
      cs[j] += obs[i][j];
      total += obs[i][j];
    }
  }
  Rat chi2 = 0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const Rat e = rs[i] * cs[j] / total;
      const Rat d = obs[i][j] - e;
      chi2 += d * d / e;
    }
  }
  return chi2;
}

// Exhaustive Mann-Whitney over all C(n1+n2, n1) labelings (tie-free data).
// Returns {p_greater, p_less, p_two_sided} for the observed samples.
struct ExactTails {
  double greater;
  double less;
  double two_sided;
};

inline double mwu_u_of(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double u = 0;
  for (double x : a) {
    for (double y : b) {
      if (x > y) u += 1.0;
      else if (x == y) u += 0.5;
    }
  }
  return u;
}

inline ExactTails mann_whitney_enumerate(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(pooled.begin(), pooled.end());
  const std::size_t n = pooled.size(), n1 = a.size();
  const double u_obs = mwu_u_of(a, b);

  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + n1, true);
  std::sort(mask.begin(), mask.end());  // lexicographically first combination

  long long total = 0, at_least = 0, at_most = 0;
  do {
    std::vector<double> xa, xb;
    for (std::size_t i = 0; i < n; ++i) {
      (mask[i] ? xa : xb).push_back(pooled[i]);
    }
    const double u = mwu_u_of(xa, xb);
    ++total;
    if (u >= u_obs - 1e-9) ++at_least;
    if (u <= u_obs + 1e-9) ++at_most;
  } while (std::next_permutation(mask.begin(), mask.end()));

  ExactTails t;
  t.greater = static_cast<double>(at_least) / total;
  t.less = static_cast<double>(at_most) / total;
  t.two_sided = std::min(1.0, 2.0 * std::min(t.greater, t.less));
  return t;
}

// Exhaustive Wilcoxon signed-rank over all 2^n sign patterns (distinct |d|).
inline ExactTails wilcoxon_enumerate(const std::vector<double>& diffs) {
  std::vector<double> abs_d;
  for (double d : diffs) {
    if (d != 0.0) abs_d.push_back(std::fabs(d));
  }
  const std::size_t n = abs_d.size();
  // integer ranks of |d|
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return abs_d[x] < abs_d[y]; });
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<double>(i + 1);

  double w_obs = 0;
  std::size_t di = 0;
  for (double d : diffs) {
    if (d == 0.0) continue;
    if (d > 0) w_obs += rank[di];
    ++di;
  }

  long long total = 0, at_least = 0, at_most = 0;
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    double w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (bits & (std::size_t{1} << i)) w += rank[i];
    }
    ++total;
    if (w >= w_obs - 1e-9) ++at_least;
    if (w <= w_obs + 1e-9) ++at_most;
  }
  ExactTails t;
  t.greater = static_cast<double>(at_least) / total;
  t.less = static_cast<double>(at_most) / total;
  t.two_sided = std::min(1.0, 2.0 * std::min(t.greater, t.less));
  return t;
}

}  // namespace oracle

#endif  // STATSEL_TESTS_ORACLES_HPP
