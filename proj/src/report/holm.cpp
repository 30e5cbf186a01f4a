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
#include <numeric>

#include "common/error.hpp"
#include "report/report.hpp"

namespace statsel::report {

std::vector<double> holm_adjust(const std::vector<double>& p_values) {
  const std::size_t m = p_values.size();
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(Errc::domain_error, "p-values must lie in [0, 1]");
    }
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p_values[a] < p_values[b];
  });

  // adjusted_(i) = max_{j<=i} min(1, (m-j) * p_(j)), scanning sorted order.
  std::vector<double> adjusted(m);
  double running_max = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double scaled =
        std::min(1.0, static_cast<double>(m - i) * p_values[order[i]]);
    running_max = std::max(running_max, scaled);
    adjusted[order[i]] = running_max;
  }
  return adjusted;
}

void rank_by_power(std::vector<ExecutedTest>& results) {
  std::stable_sort(results.begin(), results.end(),
                   [](const ExecutedTest& a, const ExecutedTest& b) {
                     if (a.family != b.family) {
                       return static_cast<int>(a.family) < static_cast<int>(b.family);
                     }
                     if (a.power_rank != b.power_rank) {
                       return a.power_rank < b.power_rank;
                     }
                     return a.id < b.id;
                   });
}

}  // namespace statsel::report
