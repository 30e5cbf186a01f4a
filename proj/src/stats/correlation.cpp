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
#include "stats/describe.hpp"
#include "stats/dist.hpp"
#include "stats/ranks.hpp"
#include "stats/tests.hpp"

namespace statsel::stats {

namespace {

double t_tail_p(double t, double dof, Tail tail) {
  switch (tail) {
    case Tail::greater: return student_t_sf(t, dof);
    case Tail::less: return student_t_cdf(t, dof);
    case Tail::two_sided: break;
  }
  return std::min(1.0, 2.0 * student_t_sf(std::fabs(t), dof));
}

double z_tail_p(double z, Tail tail) {
  switch (tail) {
    case Tail::greater: return normal_sf(z);
    case Tail::less: return normal_cdf(z);
    case Tail::two_sided: break;
  }
  return std::min(1.0, 2.0 * normal_sf(std::fabs(z)));
}

// r and the t transform shared by Pearson and Spearman.
TestOutcome r_based(const char* stat_name, const char* effect_name,
                    std::span<const double> x, std::span<const double> y,
                    Tail tail) {
  const std::size_t n = x.size();
  const double mx = mean(x), my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(Errc::degenerate_sample, "correlation requires nonzero variance");
  }
  double r = sxy / std::sqrt(sxx * syy);
  r = std::clamp(r, -1.0, 1.0);

  TestOutcome out;
  out.statistic_name = stat_name;
  out.statistic = r;
  out.tail = tail;
  out.sample_sizes = {n};
  const double dof = static_cast<double>(n - 2);
  out.dof = {dof};
  if (std::fabs(r) == 1.0) {
    out.p_value = (tail == Tail::two_sided) ? 0.0
                  : ((tail == Tail::greater) == (r > 0) ? 0.0 : 1.0);
  } else {
    const double t = r * std::sqrt(dof / (1.0 - r * r));
    out.p_value = t_tail_p(t, dof, tail);
  }
  out.effect = EffectSize{effect_name, r};
  return out;
}

}  // namespace

TestOutcome pearson_r(std::span<const double> x, std::span<const double> y,
                      Tail tail, double ci_level) {
  if (x.size() != y.size()) {
    throw Error(Errc::internal, "correlation requires paired samples");
  }
  if (x.size() < 3) {
    throw Error(Errc::insufficient_data, "correlation needs at least 3 pairs");
  }
  TestOutcome out = r_based("r", "r", x, y, tail);
  // Fisher z interval.
  const double r = out.statistic;
  const std::size_t n = x.size();
  if (n > 3 && std::fabs(r) < 1.0) {
    const double z = 0.5 * std::log((1.0 + r) / (1.0 - r));
    const double se = 1.0 / std::sqrt(static_cast<double>(n - 3));
    const double zc = normal_quantile(0.5 + ci_level / 2.0);
    out.ci = ConfidenceInterval{ci_level, std::tanh(z - zc * se),
                                std::tanh(z + zc * se)};
  }
  return out;
}

TestOutcome spearman_rho(std::span<const double> x, std::span<const double> y,
                         Tail tail) {
  if (x.size() != y.size()) {
    throw Error(Errc::internal, "correlation requires paired samples");
  }
  if (x.size() < 3) {
    throw Error(Errc::insufficient_data, "correlation needs at least 3 pairs");
  }
  const Ranked rx = average_ranks(x);
  const Ranked ry = average_ranks(y);
  TestOutcome out = r_based("rho", "rho", rx.ranks, ry.ranks, tail);
  if (rx.has_ties || ry.has_ties) out.notes.push_back("average ranks for ties");
  return out;
}

TestOutcome kendall_tau(std::span<const double> x, std::span<const double> y,
                        Tail tail) {
  if (x.size() != y.size()) {
    throw Error(Errc::internal, "correlation requires paired samples");
  }
  const std::size_t n = x.size();
  if (n < 3) {
    throw Error(Errc::insufficient_data, "correlation needs at least 3 pairs");
  }

  // Pair scan is O(n^2); fine for the sample sizes this library targets.
  long long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      const double prod = dx * dy;
      if (prod > 0) ++concordant;
      else if (prod < 0) ++discordant;
    }
  }
  const double s = static_cast<double>(concordant - discordant);

  const Ranked rx = average_ranks(x);
  const Ranked ry = average_ranks(y);
  auto tie_sums = [](const Ranked& r) {
    double t1 = 0, t2 = 0, t3 = 0;  // sum t(t-1), t(t-1)(t-2), t(t-1)(2t+5)
    for (std::size_t t : r.tie_groups) {
      const double td = static_cast<double>(t);
      t1 += td * (td - 1);
      t2 += td * (td - 1) * (td - 2);
      t3 += td * (td - 1) * (2 * td + 5);
    }
    return std::array<double, 3>{t1, t2, t3};
  };
  const auto [xt1, xt2, xt3] = tie_sums(rx);
  const auto [yt1, yt2, yt3] = tie_sums(ry);

  const double nd = static_cast<double>(n);
  const double n0 = nd * (nd - 1) / 2.0;
  const double denom = std::sqrt((n0 - xt1 / 2.0) * (n0 - yt1 / 2.0));
  if (denom == 0.0) {
    throw Error(Errc::degenerate_sample, "all values tied in one variable");
  }
  const double tau = s / denom;

  // Tie-corrected variance of S (tau-b normal approximation).
  const double var_s = (nd * (nd - 1) * (2 * nd + 5) - xt3 - yt3) / 18.0 +
                       xt2 * yt2 / (9.0 * nd * (nd - 1) * (nd - 2)) +
                       xt1 * yt1 / (2.0 * nd * (nd - 1));
  const double z = var_s > 0.0 ? s / std::sqrt(var_s) : 0.0;

  TestOutcome out;
  out.statistic_name = "tau";
  out.statistic = tau;
  out.tail = tail;
  out.sample_sizes = {n};
  out.p_value = z_tail_p(z, tail);
  out.effect = EffectSize{"tau", tau};
  out.notes.push_back("normal approximation");
  return out;
}

}  // namespace statsel::stats
