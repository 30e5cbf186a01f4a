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
#include <numeric>

#include "common/error.hpp"
#include "stats/dist.hpp"
#include "stats/ranks.hpp"
#include "stats/tests.hpp"

namespace statsel::stats {

namespace {

// Distribution of the rank sum of an n1-subset of ranks {1..total}:
// counts[j][s] = number of j-subsets summing to s. Exact doubles: the entry
// total C(20,10) = 184756 is far below 2^53.
std::vector<std::vector<double>> subset_rank_sum_counts(std::size_t total,
                                                        std::size_t pick) {
  const std::size_t max_sum = total * (total + 1) / 2;
  std::vector<std::vector<double>> counts(
      pick + 1, std::vector<double>(max_sum + 1, 0.0));
  counts[0][0] = 1.0;
  for (std::size_t r = 1; r <= total; ++r) {
    for (std::size_t j = std::min(pick, r); j >= 1; --j) {
      for (std::size_t s = max_sum; s >= r; --s) {
        if (counts[j - 1][s - r] != 0.0) counts[j][s] += counts[j - 1][s - r];
      }
    }
  }
  return counts;
}

// Distribution of W+ over all sign assignments to ranks {1..n}:
// counts[s] = number of subsets of {1..n} summing to s (2^n total).
std::vector<double> signed_rank_sum_counts(std::size_t n) {
  const std::size_t max_sum = n * (n + 1) / 2;
  std::vector<double> counts(max_sum + 1, 0.0);
  counts[0] = 1.0;
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t s = max_sum; s >= r; --s) {
      if (counts[s - r] != 0.0) counts[s] += counts[s - r];
    }
  }
  return counts;
}

double two_sided_from_tails(double lower, double upper) {
  return std::min(1.0, 2.0 * std::min(lower, upper));
}

}  // namespace

TestOutcome mann_whitney_u(std::span<const double> a, std::span<const double> b,
                           Tail tail, const RankTestConfig& cfg) {
  const std::size_t n1 = a.size(), n2 = b.size();
  if (n1 == 0 || n2 == 0) {
    throw Error(Errc::insufficient_data, "Mann-Whitney needs nonempty groups");
  }
  const std::size_t n = n1 + n2;

  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const Ranked ranked = average_ranks(pooled);

  double r1 = 0.0;
  for (std::size_t i = 0; i < n1; ++i) r1 += ranked.ranks[i];
  const double u1 = r1 - static_cast<double>(n1) * (n1 + 1) / 2.0;

  TestOutcome out;
  out.statistic_name = "U";
  out.statistic = u1;
  out.tail = tail;
  out.sample_sizes = {n1, n2};

  const double nn = static_cast<double>(n1) * static_cast<double>(n2);
  const double mu = nn / 2.0;
  const double tie_term =
      ranked.tie_cubic_sum() / (static_cast<double>(n) * (n - 1));
  const double var = nn / 12.0 * (static_cast<double>(n + 1) - tie_term);
  const double sd = std::sqrt(var);
  if (sd == 0.0) {
    throw Error(Errc::degenerate_sample, "all pooled values identical");
  }

  // z used for the effect size; also the p-value when out of exact range.
  double z;
  switch (tail) {
    case Tail::greater: z = (u1 - mu - 0.5) / sd; break;
    case Tail::less: z = (u1 - mu + 0.5) / sd; break;
    default: z = (std::fabs(u1 - mu) - 0.5) / sd; break;
  }

  const bool exact = !ranked.has_ties && n <= cfg.mann_whitney_exact_max_total;
  if (exact) {
    const auto counts = subset_rank_sum_counts(n, n1);
    const double offset = static_cast<double>(n1) * (n1 + 1) / 2.0;
    double total = 0.0, at_most = 0.0, at_least = 0.0;
    for (std::size_t s = 0; s < counts[n1].size(); ++s) {
      const double c = counts[n1][s];
      if (c == 0.0) continue;
      const double u = static_cast<double>(s) - offset;
      total += c;
      if (u <= u1 + 1e-9) at_most += c;
      if (u >= u1 - 1e-9) at_least += c;
    }
    const double p_low = at_most / total, p_high = at_least / total;
    switch (tail) {
      case Tail::greater: out.p_value = p_high; break;
      case Tail::less: out.p_value = p_low; break;
      default: out.p_value = two_sided_from_tails(p_low, p_high); break;
    }
    out.notes.push_back("exact enumeration");
  } else {
    switch (tail) {
      case Tail::greater: out.p_value = normal_sf(z); break;
      case Tail::less: out.p_value = normal_cdf(z); break;
      default: out.p_value = std::min(1.0, 2.0 * normal_sf(z)); break;
    }
    out.notes.push_back("normal approximation with continuity correction");
    if (ranked.has_ties) out.notes.push_back("tie-corrected variance");
  }

  out.effect = EffectSize{"r", std::fabs(z) / std::sqrt(static_cast<double>(n))};
  return out;
}

TestOutcome wilcoxon_signed_rank_diffs(std::span<const double> diffs, Tail tail,
                                       const RankTestConfig& cfg) {
  std::vector<double> nonzero;
  nonzero.reserve(diffs.size());
  for (double d : diffs) {
    if (d != 0.0) nonzero.push_back(d);
  }
  const std::size_t dropped = diffs.size() - nonzero.size();
  const std::size_t n = nonzero.size();
  if (n == 0) {
    throw Error(Errc::all_zero_differences, "every pair difference is zero");
  }

  std::vector<double> abs_d(n);
  for (std::size_t i = 0; i < n; ++i) abs_d[i] = std::fabs(nonzero[i]);
  const Ranked ranked = average_ranks(abs_d);

  double w_plus = 0.0, w_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (nonzero[i] > 0) w_plus += ranked.ranks[i];
    else w_minus += ranked.ranks[i];
  }

  TestOutcome out;
  out.statistic_name = "W";
  out.statistic = std::min(w_plus, w_minus);
  out.tail = tail;
  out.sample_sizes = {n};
  if (dropped > 0) {
    out.notes.push_back(std::to_string(dropped) + " zero difference(s) dropped");
  }

  const double nd = static_cast<double>(n);
  const double mu = nd * (nd + 1) / 4.0;
  const double var = nd * (nd + 1) * (2 * nd + 1) / 24.0 -
                     ranked.tie_cubic_sum() / 48.0;
  const double sd = std::sqrt(var);
  // continuity-corrected z per tail; the plain z feeds the effect size
  const double z = sd > 0.0 ? (w_plus - mu) / sd : 0.0;
  double z_tail = 0.0;
  if (sd > 0.0) {
    switch (tail) {
      case Tail::greater: z_tail = (w_plus - mu - 0.5) / sd; break;
      case Tail::less: z_tail = (w_plus - mu + 0.5) / sd; break;
      default: z_tail = (std::fabs(w_plus - mu) - 0.5) / sd; break;
    }
  }

  const bool exact = !ranked.has_ties && n <= cfg.wilcoxon_exact_max_n;
  if (exact) {
    const auto counts = signed_rank_sum_counts(n);
    const double total = std::pow(2.0, static_cast<double>(n));
    double at_most = 0.0, at_least = 0.0;
    for (std::size_t s = 0; s < counts.size(); ++s) {
      if (counts[s] == 0.0) continue;
      if (static_cast<double>(s) <= w_plus + 1e-9) at_most += counts[s];
      if (static_cast<double>(s) >= w_plus - 1e-9) at_least += counts[s];
    }
    const double p_low = at_most / total, p_high = at_least / total;
    switch (tail) {
      case Tail::greater: out.p_value = p_high; break;
      case Tail::less: out.p_value = p_low; break;
      default: out.p_value = two_sided_from_tails(p_low, p_high); break;
    }
    out.notes.push_back("exact enumeration");
  } else {
    if (sd == 0.0) {
      throw Error(Errc::degenerate_sample, "signed-rank variance is zero");
    }
    switch (tail) {
      case Tail::greater: out.p_value = normal_sf(z_tail); break;
      case Tail::less: out.p_value = normal_cdf(z_tail); break;
      default: out.p_value = std::min(1.0, 2.0 * normal_sf(z_tail)); break;
    }
    out.notes.push_back("normal approximation with continuity correction");
    if (ranked.has_ties) out.notes.push_back("tie-corrected variance");
  }

  out.effect = EffectSize{"r", std::fabs(z) / std::sqrt(nd)};
  return out;
}

TestOutcome wilcoxon_signed_rank(std::span<const double> a,
                                 std::span<const double> b, Tail tail,
                                 const RankTestConfig& cfg) {
  if (a.size() != b.size()) {
    throw Error(Errc::internal, "signed-rank test requires paired samples");
  }
  std::vector<double> diffs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diffs[i] = a[i] - b[i];
  return wilcoxon_signed_rank_diffs(diffs, tail, cfg);
}

TestOutcome kruskal_wallis(const std::vector<std::vector<double>>& groups) {
  const std::size_t k = groups.size();
  if (k < 2) throw Error(Errc::insufficient_data, "need at least 2 groups");
  std::size_t n = 0;
  for (std::size_t g = 0; g < k; ++g) {
    if (groups[g].empty()) {
      throw Error(Errc::empty_group, "group " + std::to_string(g) + " is empty");
    }
    n += groups[g].size();
  }
  if (n < 3) throw Error(Errc::insufficient_data, "need at least 3 observations");

  std::vector<double> pooled;
  pooled.reserve(n);
  for (const auto& g : groups) pooled.insert(pooled.end(), g.begin(), g.end());
  const Ranked ranked = average_ranks(pooled);

  const double nd = static_cast<double>(n);
  double h = 0.0;
  std::size_t pos = 0;
  TestOutcome out;
  for (const auto& g : groups) {
    double rsum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rsum += ranked.ranks[pos + i];
    pos += g.size();
    h += rsum * rsum / static_cast<double>(g.size());
    out.sample_sizes.push_back(g.size());
  }
  h = 12.0 / (nd * (nd + 1)) * h - 3.0 * (nd + 1);

  const double correction = 1.0 - ranked.tie_cubic_sum() / (nd * nd * nd - nd);
  if (correction <= 0.0) {
    throw Error(Errc::degenerate_sample, "all values tied across groups");
  }
  h /= correction;

  out.statistic_name = "H";
  out.statistic = h;
  out.dof = {static_cast<double>(k - 1)};
  out.p_value = chi_square_sf(h, static_cast<double>(k - 1));
  out.effect = EffectSize{"epsilon_sq", h / (nd - 1.0)};
  if (ranked.has_ties) out.notes.push_back("tie-corrected");
  return out;
}

TestOutcome friedman(const std::vector<std::vector<double>>& matrix) {
  const std::size_t n = matrix.size();
  if (n < 2) throw Error(Errc::insufficient_data, "need at least 2 units");
  const std::size_t k = matrix.front().size();
  if (k < 2) throw Error(Errc::insufficient_data, "need at least 2 conditions");
  for (const auto& row : matrix) {
    if (row.size() != k) {
      throw Error(Errc::no_complete_units, "incomplete unit-by-condition matrix");
    }
  }

  // Rank within each unit, then the classic column-rank-sum statistic.
  std::vector<double> col_rank_sum(k, 0.0);
  bool any_ties = false;
  for (const auto& row : matrix) {
    const Ranked r = average_ranks(row);
    any_ties = any_ties || r.has_ties;
    for (std::size_t j = 0; j < k; ++j) col_rank_sum[j] += r.ranks[j];
  }
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  double sum_r2 = 0.0;
  for (double r : col_rank_sum) sum_r2 += r * r;
  const double q = 12.0 / (nd * kd * (kd + 1)) * sum_r2 - 3.0 * nd * (kd + 1);

  TestOutcome out;
  out.statistic_name = "Q";
  out.statistic = q;
  out.dof = {kd - 1.0};
  out.p_value = chi_square_sf(q, kd - 1.0);
  out.sample_sizes = {n};
  out.effect = EffectSize{"kendalls_w", q / (nd * (kd - 1.0))};
  if (any_ties) out.notes.push_back("average ranks for ties");
  return out;
}

}  // namespace statsel::stats
