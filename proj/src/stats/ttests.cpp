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

}  // namespace

TestOutcome independent_t(std::span<const double> a, std::span<const double> b,
                          bool pooled_variance, Tail tail, double ci_level) {
  const std::size_t n1 = a.size(), n2 = b.size();
  if (n1 < 2 || n2 < 2) {
    throw Error(Errc::insufficient_data,
                "independent t-test needs at least 2 observations per group");
  }
  const double m1 = mean(a), m2 = mean(b);
  const double v1 = variance(a), v2 = variance(b);
  const double diff = m1 - m2;

  TestOutcome out;
  out.statistic_name = "t";
  out.tail = tail;
  out.sample_sizes = {n1, n2};

  double se = 0.0, dof = 0.0;
  const double sp2 = ((n1 - 1) * v1 + (n2 - 1) * v2) /
                     static_cast<double>(n1 + n2 - 2);
  if (pooled_variance) {
    se = std::sqrt(sp2 * (1.0 / n1 + 1.0 / n2));
    dof = static_cast<double>(n1 + n2 - 2);
  } else {
    const double w1 = v1 / n1, w2 = v2 / n2;
    se = std::sqrt(w1 + w2);
    dof = (w1 + w2) * (w1 + w2) /
          (w1 * w1 / (n1 - 1) + w2 * w2 / (n2 - 1));
  }

  if (se == 0.0) {
    // Both groups constant. Equal means: no evidence against the null.
    // Unequal means: the difference is exact, p -> 0 by convention.
    out.dof = {dof};
    if (diff == 0.0) {
      out.statistic = 0.0;
      out.p_value = 1.0;
    } else {
      out.statistic = diff > 0 ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
      out.p_value = (tail == Tail::two_sided) ? 0.0
                    : (tail == Tail::greater) == (diff > 0) ? 0.0 : 1.0;
    }
    out.notes.push_back("zero variance in both groups");
    out.effect = EffectSize{"cohens_d", diff == 0.0 ? 0.0 : INFINITY};
    return out;
  }

  out.statistic = diff / se;
  out.dof = {dof};
  out.p_value = t_tail_p(out.statistic, dof, tail);

  const double sp = std::sqrt(sp2);
  out.effect = EffectSize{"cohens_d", sp > 0.0 ? diff / sp : 0.0};

  const double tcrit = student_t_quantile(0.5 + ci_level / 2.0, dof);
  out.ci = ConfidenceInterval{ci_level, diff - tcrit * se, diff + tcrit * se};
  return out;
}

TestOutcome paired_t(std::span<const double> a, std::span<const double> b,
                     Tail tail, double ci_level) {
  if (a.size() != b.size()) {
    throw Error(Errc::internal, "paired t-test requires equal-length samples");
  }
  std::vector<double> diffs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diffs[i] = a[i] - b[i];

  const std::size_t n = diffs.size();
  if (n < 2) {
    throw Error(Errc::insufficient_data,
                "paired t-test needs at least 2 complete pairs");
  }
  const double md = mean(diffs);
  const double vd = variance(diffs);
  const double dof = static_cast<double>(n - 1);

  TestOutcome out;
  out.statistic_name = "t";
  out.tail = tail;
  out.sample_sizes = {n};
  out.dof = {dof};

  if (vd == 0.0) {
    if (md == 0.0) {
      out.statistic = 0.0;
      out.p_value = 1.0;
      out.effect = EffectSize{"cohens_d", 0.0};
      out.notes.push_back("all differences zero");
      return out;
    }
    throw Error(Errc::degenerate_sample, "all pair differences are identical");
  }

  const double se = std::sqrt(vd / n);
  out.statistic = md / se;
  out.p_value = t_tail_p(out.statistic, dof, tail);
  out.effect = EffectSize{"cohens_d", md / std::sqrt(vd)};
  const double tcrit = student_t_quantile(0.5 + ci_level / 2.0, dof);
  out.ci = ConfidenceInterval{ci_level, md - tcrit * se, md + tcrit * se};
  return out;
}

}  // namespace statsel::stats
