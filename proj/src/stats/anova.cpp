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
#include "stats/describe.hpp"
#include "stats/dist.hpp"
#include "stats/tests.hpp"

namespace statsel::stats {

namespace {

// Residual sum of squares of y on the given design matrix (column major),
// via Householder QR. Columns may be rank deficient (dummy coding with an
// intercept); near-zero pivots are skipped, which drops redundant columns.
double least_squares_rss(std::vector<std::vector<double>> cols,
                         std::vector<double> y) {
  const std::size_t n = y.size();
  const std::size_t p = cols.size();
  std::size_t rank = 0;
  for (std::size_t j = 0; j < p; ++j) {
    auto& c = cols[j];
    // Project out previous reflectors... handled implicitly: we apply each
    // accepted reflector to all later columns and to y as we go.
    double norm2 = 0.0;
    for (std::size_t i = rank; i < n; ++i) norm2 += c[i] * c[i];
    const double norm = std::sqrt(norm2);
    if (norm < 1e-10) continue;  // redundant column

    // Householder vector v stored in c[rank..n).
    const double alpha = c[rank] >= 0 ? -norm : norm;
    c[rank] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = rank; i < n; ++i) vnorm2 += c[i] * c[i];
    if (vnorm2 < 1e-300) continue;

    auto apply = [&](std::vector<double>& target) {
      double dot = 0.0;
      for (std::size_t i = rank; i < n; ++i) dot += c[i] * target[i];
      const double scale = 2.0 * dot / vnorm2;
      for (std::size_t i = rank; i < n; ++i) target[i] -= scale * c[i];
    };
    for (std::size_t jj = j + 1; jj < p; ++jj) apply(cols[jj]);
    apply(y);
    ++rank;
  }
  double rss = 0.0;
  for (std::size_t i = rank; i < n; ++i) rss += y[i] * y[i];
  return rss;
}

// Dummy columns (one per level, full coding) for a factor.
void append_factor_columns(std::vector<std::vector<double>>& cols,
                           std::span<const int> codes, int levels,
                           std::size_t n) {
  for (int l = 0; l < levels; ++l) {
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (codes[i] == l) c[i] = 1.0;
    }
    cols.push_back(std::move(c));
  }
}

void append_interaction_columns(std::vector<std::vector<double>>& cols,
                                std::span<const int> a, int al,
                                std::span<const int> b, int bl,
                                std::size_t n) {
  for (int i = 0; i < al; ++i) {
    for (int j = 0; j < bl; ++j) {
      std::vector<double> c(n, 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        if (a[r] == i && b[r] == j) c[r] = 1.0;
      }
      cols.push_back(std::move(c));
    }
  }
}

}  // namespace

TestOutcome one_way_anova(const std::vector<std::vector<double>>& groups) {
  const std::size_t k = groups.size();
  if (k < 2) throw Error(Errc::insufficient_data, "need at least 2 groups");
  std::size_t n = 0;
  double grand_sum = 0.0;
  for (std::size_t g = 0; g < k; ++g) {
    if (groups[g].size() < 2) {
      throw Error(Errc::insufficient_data,
                  "each group needs at least 2 observations");
    }
    n += groups[g].size();
    for (double v : groups[g]) grand_sum += v;
  }
  const double grand = grand_sum / static_cast<double>(n);

  double ss_between = 0.0, ss_within = 0.0;
  TestOutcome out;
  for (const auto& g : groups) {
    const double m = mean(g);
    ss_between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    ss_within += sum_sq_dev(g, m);
    out.sample_sizes.push_back(g.size());
  }

  const double df1 = static_cast<double>(k - 1);
  const double df2 = static_cast<double>(n - k);
  out.statistic_name = "F";
  out.dof = {df1, df2};
  out.tail = Tail::two_sided;

  if (ss_within == 0.0) {
    if (ss_between == 0.0) {
      out.statistic = 0.0;
      out.p_value = 1.0;
      out.effect = EffectSize{"eta_sq", 0.0};
      out.notes.push_back("all values identical");
      return out;
    }
    throw Error(Errc::degenerate_sample, "zero within-group variance");
  }
  out.statistic = (ss_between / df1) / (ss_within / df2);
  out.p_value = f_sf(out.statistic, df1, df2);
  out.effect = EffectSize{"eta_sq", ss_between / (ss_between + ss_within)};
  return out;
}

TestOutcome rm_one_way_anova(const std::vector<std::vector<double>>& matrix) {
  const std::size_t n = matrix.size();
  if (n < 2) throw Error(Errc::no_complete_units, "need at least 2 units");
  const std::size_t k = matrix.front().size();
  if (k < 2) throw Error(Errc::insufficient_data, "need at least 2 conditions");
  for (const auto& row : matrix) {
    if (row.size() != k) {
      throw Error(Errc::no_complete_units, "incomplete unit-by-condition matrix");
    }
  }

  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  double grand = 0.0;
  for (const auto& row : matrix)
    for (double v : row) grand += v;
  grand /= nd * kd;

  double ss_total = 0.0, ss_subjects = 0.0, ss_cond = 0.0;
  for (const auto& row : matrix) {
    const double rm = mean(row);
    ss_subjects += kd * (rm - grand) * (rm - grand);
    for (double v : row) ss_total += (v - grand) * (v - grand);
  }
  for (std::size_t j = 0; j < k; ++j) {
    double cm = 0.0;
    for (const auto& row : matrix) cm += row[j];
    cm /= nd;
    ss_cond += nd * (cm - grand) * (cm - grand);
  }
  const double ss_error = ss_total - ss_subjects - ss_cond;

  const double df1 = kd - 1.0;
  const double df2 = (nd - 1.0) * (kd - 1.0);
  TestOutcome out;
  out.statistic_name = "F";
  out.dof = {df1, df2};
  out.sample_sizes = {n};

  if (ss_error <= 0.0) {
    if (ss_cond == 0.0) {
      out.statistic = 0.0;
      out.p_value = 1.0;
      out.effect = EffectSize{"partial_eta_sq", 0.0};
      return out;
    }
    throw Error(Errc::degenerate_sample, "zero within-subject error variance");
  }
  out.statistic = (ss_cond / df1) / (ss_error / df2);
  out.p_value = f_sf(out.statistic, df1, df2);
  out.effect = EffectSize{"partial_eta_sq", ss_cond / (ss_cond + ss_error)};
  return out;
}

std::vector<AnovaEffect> factorial_anova(std::span<const double> y,
                                         std::span<const int> factor_a,
                                         int a_levels,
                                         std::span<const int> factor_b,
                                         int b_levels) {
  const std::size_t n = y.size();
  if (factor_a.size() != n || factor_b.size() != n) {
    throw Error(Errc::internal, "factor codes must match outcome length");
  }
  if (a_levels < 2 || b_levels < 2) {
    throw Error(Errc::insufficient_data, "each factor needs at least 2 levels");
  }
  std::vector<std::vector<int>> cell_count(a_levels, std::vector<int>(b_levels, 0));
  for (std::size_t i = 0; i < n; ++i) cell_count[factor_a[i]][factor_b[i]]++;
  for (int i = 0; i < a_levels; ++i) {
    for (int j = 0; j < b_levels; ++j) {
      if (cell_count[i][j] == 0) {
        throw Error(Errc::empty_cell, "empty design cell (" + std::to_string(i) +
                                          "," + std::to_string(j) + ")");
      }
    }
  }

  std::vector<double> yv(y.begin(), y.end());
  auto rss_for = [&](bool with_a, bool with_b, bool with_ab) {
    std::vector<std::vector<double>> cols;
    cols.emplace_back(n, 1.0);  // intercept
    if (with_a) append_factor_columns(cols, factor_a, a_levels, n);
    if (with_b) append_factor_columns(cols, factor_b, b_levels, n);
    if (with_ab)
      append_interaction_columns(cols, factor_a, a_levels, factor_b, b_levels, n);
    return least_squares_rss(std::move(cols), yv);
  };

  // Sums of squares below this are rounding residue, not signal.
  const double ym = mean(yv);
  double sum_sq = 0.0;
  for (double v : yv) sum_sq += v * v;
  const double noise_floor =
      1e-12 * sum_sq_dev(yv, ym) + 1e-24 * sum_sq + 1e-300;
  auto clamp = [&](double ss) { return ss <= noise_floor ? 0.0 : ss; };

  // Type II: each main effect adjusted for the other, interaction last.
  const double rss_a = rss_for(true, false, false);
  const double rss_b = rss_for(false, true, false);
  const double rss_ab = rss_for(true, true, false);
  const double rss_full = rss_for(true, true, true);

  const double ss_a = clamp(std::max(0.0, rss_b - rss_ab));
  const double ss_b = clamp(std::max(0.0, rss_a - rss_ab));
  const double ss_int = clamp(std::max(0.0, rss_ab - rss_full));
  const double ss_err = clamp(rss_full);

  const double df_a = a_levels - 1.0;
  const double df_b = b_levels - 1.0;
  const double df_int = df_a * df_b;
  const double df_err =
      static_cast<double>(n) - static_cast<double>(a_levels) * b_levels;
  if (df_err <= 0.0) {
    throw Error(Errc::insufficient_data, "no residual degrees of freedom");
  }
  const double ms_err = ss_err / df_err;

  auto make = [&](std::string name, double ss, double df) {
    AnovaEffect e;
    e.name = std::move(name);
    e.ss = ss;
    e.df = df;
    if (ms_err == 0.0) {
      e.f = ss == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      e.p = ss == 0.0 ? 1.0 : 0.0;
    } else {
      e.f = (ss / df) / ms_err;
      e.p = f_sf(e.f, df, df_err);
    }
    e.partial_eta_sq = (ss + ss_err) > 0.0 ? ss / (ss + ss_err) : 0.0;
    return e;
  };

  std::vector<AnovaEffect> effects;
  effects.push_back(make("A", ss_a, df_a));
  effects.push_back(make("B", ss_b, df_b));
  effects.push_back(make("A:B", ss_int, df_int));
  AnovaEffect resid;
  resid.name = "residual";
  resid.ss = ss_err;
  resid.df = df_err;
  resid.f = std::numeric_limits<double>::quiet_NaN();
  resid.p = std::numeric_limits<double>::quiet_NaN();
  resid.partial_eta_sq = std::numeric_limits<double>::quiet_NaN();
  effects.push_back(resid);
  return effects;
}

std::vector<AnovaEffect> factorial_anova(std::span<const double> y,
                                         std::span<const int> factor_a,
                                         int a_levels) {
  const std::size_t n = y.size();
  if (factor_a.size() != n) {
    throw Error(Errc::internal, "factor codes must match outcome length");
  }
  if (a_levels < 2) {
    throw Error(Errc::insufficient_data, "factor needs at least 2 levels");
  }
  std::vector<double> yv(y.begin(), y.end());
  std::vector<std::vector<double>> base;
  base.emplace_back(n, 1.0);
  const double rss0 = least_squares_rss(base, yv);

  std::vector<std::vector<double>> with_a;
  with_a.emplace_back(n, 1.0);
  append_factor_columns(with_a, factor_a, a_levels, n);
  double rss1 = least_squares_rss(std::move(with_a), yv);

  const double ym = mean(yv);
  double sum_sq = 0.0;
  for (double v : yv) sum_sq += v * v;
  const double noise_floor =
      1e-12 * sum_sq_dev(yv, ym) + 1e-24 * sum_sq + 1e-300;
  if (rss1 <= noise_floor) rss1 = 0.0;
  double ss_a = std::max(0.0, rss0 - rss1);
  if (ss_a <= noise_floor) ss_a = 0.0;
  const double df_a = a_levels - 1.0;
  const double df_err = static_cast<double>(n) - a_levels;
  if (df_err <= 0.0) {
    throw Error(Errc::insufficient_data, "no residual degrees of freedom");
  }
  const double ms_err = rss1 / df_err;

  AnovaEffect e;
  e.name = "A";
  e.ss = ss_a;
  e.df = df_a;
  if (ms_err == 0.0) {
    e.f = ss_a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    e.p = ss_a == 0.0 ? 1.0 : 0.0;
  } else {
    e.f = (ss_a / df_a) / ms_err;
    e.p = f_sf(e.f, df_a, df_err);
  }
  e.partial_eta_sq = (ss_a + rss1) > 0.0 ? ss_a / (ss_a + rss1) : 0.0;

  AnovaEffect resid;
  resid.name = "residual";
  resid.ss = rss1;
  resid.df = df_err;
  resid.f = std::numeric_limits<double>::quiet_NaN();
  resid.p = std::numeric_limits<double>::quiet_NaN();
  resid.partial_eta_sq = std::numeric_limits<double>::quiet_NaN();
  return {e, resid};
}

}  // namespace statsel::stats
