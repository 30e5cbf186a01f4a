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
#include <limits>
#include <vector>

#include "common/error.hpp"
#include "properties/checks.hpp"
#include "stats/dist.hpp"

namespace statsel::props {

namespace {

double center_of(const std::vector<double>& g, LeveneCenter center) {
  if (center == LeveneCenter::mean) {
    double s = 0.0;
    for (double v : g) s += v;
    return s / static_cast<double>(g.size());
  }
  std::vector<double> sorted = g;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return (n % 2 == 1) ? sorted[n / 2]
                      : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

}  // namespace

CheckResult levene_test(const std::vector<std::vector<double>>& groups,
                        LeveneCenter center) {
  const std::size_t k = groups.size();
  if (k < 2) throw Error(Errc::insufficient_data, "Levene needs >= 2 groups");
  std::size_t n = 0;
  for (std::size_t g = 0; g < k; ++g) {
    if (groups[g].empty()) {
      throw Error(Errc::empty_group, "group " + std::to_string(g) + " is empty");
    }
    if (groups[g].size() < 2) {
      throw Error(Errc::insufficient_data,
                  "Levene needs >= 2 observations per group");
    }
    n += groups[g].size();
  }

  // One-way ANOVA F on absolute deviations from the group centers.
  std::vector<std::vector<double>> dev(k);
  double grand = 0.0;
  for (std::size_t g = 0; g < k; ++g) {
    const double c = center_of(groups[g], center);
    dev[g].reserve(groups[g].size());
    for (double v : groups[g]) {
      dev[g].push_back(std::fabs(v - c));
      grand += dev[g].back();
    }
  }
  grand /= static_cast<double>(n);

  double between = 0.0, within = 0.0;
  for (const auto& g : dev) {
    double m = 0.0;
    for (double v : g) m += v;
    m /= static_cast<double>(g.size());
    between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    for (double v : g) within += (v - m) * (v - m);
  }

  const double df1 = static_cast<double>(k - 1);
  const double df2 = static_cast<double>(n - k);
  if (within == 0.0) {
    // Deviations are constant within every group: either the spreads agree
    // exactly (identical groups) or they differ with certainty.
    if (between == 0.0) return {0.0, 1.0};
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  const double w = (between / df1) / (within / df2);
  return {w, stats::f_sf(w, df1, df2)};
}

}  // namespace statsel::props
