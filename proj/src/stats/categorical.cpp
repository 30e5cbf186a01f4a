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

#include <algorithm>
#include <cmath>

#include "common/error.hpp"
#include "stats/dist.hpp"
#include "stats/tests.hpp"

namespace statsel::stats {

TestOutcome chi_square_test(const std::vector<std::vector<double>>& observed) {
  const std::size_t r = observed.size();
  if (r < 2) throw Error(Errc::insufficient_data, "need at least 2 rows");
  const std::size_t c = observed.front().size();
  if (c < 2) throw Error(Errc::insufficient_data, "need at least 2 columns");

  std::vector<double> row_sum(r, 0.0), col_sum(c, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    if (observed[i].size() != c) {
      throw Error(Errc::internal, "ragged contingency table");
    }
    for (std::size_t j = 0; j < c; ++j) {
      if (observed[i][j] < 0) {
        throw Error(Errc::domain_error, "negative cell count");
      }
      row_sum[i] += observed[i][j];
      col_sum[j] += observed[i][j];
      total += observed[i][j];
    }
  }
  for (double s : row_sum) {
    if (s == 0.0) throw Error(Errc::zero_margin, "zero row margin");
  }
  for (double s : col_sum) {
    if (s == 0.0) throw Error(Errc::zero_margin, "zero column margin");
  }

  double chi2 = 0.0;
  bool small_expected = false;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double expected = row_sum[i] * col_sum[j] / total;
      small_expected = small_expected || expected < 5.0;
      const double d = observed[i][j] - expected;
      chi2 += d * d / expected;
    }
  }

  const double dof = static_cast<double>((r - 1) * (c - 1));
  TestOutcome out;
  out.statistic_name = "chi2";
  out.statistic = chi2;
  out.dof = {dof};
  out.p_value = chi_square_sf(chi2, dof);
  out.sample_sizes = {static_cast<std::size_t>(total)};
  const double min_dim = static_cast<double>(std::min(r, c) - 1);
  out.effect = EffectSize{"cramers_v", std::sqrt(chi2 / (total * min_dim))};
  if (small_expected) {
    out.notes.push_back("warning: expected count below 5 in at least one cell");
  }
  return out;
}

TestOutcome fisher_exact(const std::array<std::array<long long, 2>, 2>& table,
                         Tail tail) {
  const long long a = table[0][0], b = table[0][1];
  const long long c = table[1][0], d = table[1][1];
  if (a < 0 || b < 0 || c < 0 || d < 0) {
    throw Error(Errc::domain_error, "negative cell count");
  }
  const long long r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
  const long long n = r1 + r2;
  if (r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0) {
    throw Error(Errc::zero_margin, "zero margin in 2x2 table");
  }

  // Hypergeometric log pmf of the top-left cell.
  auto log_pmf = [&](long long k) {
    auto lc = [](long long nn, long long kk) {
      return std::lgamma(static_cast<double>(nn + 1)) -
             std::lgamma(static_cast<double>(kk + 1)) -
             std::lgamma(static_cast<double>(nn - kk + 1));
    };
    return lc(r1, k) + lc(r2, c1 - k) - lc(n, c1);
  };

  const long long k_lo = std::max(0LL, c1 - r2);
  const long long k_hi = std::min(r1, c1);
  const double lp_obs = log_pmf(a);

  double p = 0.0;
  switch (tail) {
    case Tail::greater:
      for (long long k = a; k <= k_hi; ++k) p += std::exp(log_pmf(k));
      break;
    case Tail::less:
      for (long long k = k_lo; k <= a; ++k) p += std::exp(log_pmf(k));
      break;
    case Tail::two_sided:
      // Sum every table no more probable than the observed one, with a small
      // relative slack for floating-point ties.
      for (long long k = k_lo; k <= k_hi; ++k) {
        const double lp = log_pmf(k);
        if (lp <= lp_obs + 1e-7) p += std::exp(lp);
      }
      break;
  }

  TestOutcome out;
  out.statistic_name = "OR";
  out.statistic = (b * c != 0)
                      ? (static_cast<double>(a) * d) / (static_cast<double>(b) * c)
                      : std::numeric_limits<double>::infinity();
  out.tail = tail;
  out.p_value = std::min(1.0, p);
  out.sample_sizes = {static_cast<std::size_t>(n)};
  out.effect = EffectSize{"odds_ratio", out.statistic};
  out.notes.push_back("hypergeometric enumeration");
  return out;
}

}  // namespace statsel::stats
