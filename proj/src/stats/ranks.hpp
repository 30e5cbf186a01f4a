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

#ifndef STATSEL_STATS_RANKS_HPP
#define STATSEL_STATS_RANKS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace statsel::stats {

struct Ranked {
  std::vector<double> ranks;            // 1-based, average ranks for ties
  std::vector<std::size_t> tie_groups;  // sizes of tie runs with >= 2 members
  bool has_ties = false;

  // Sum over tie groups of t^3 - t; the usual variance correction term.
  double tie_cubic_sum() const {
    double s = 0.0;
    for (std::size_t t : tie_groups) {
      const double td = static_cast<double>(t);
      s += td * td * td - td;
    }
    return s;
  }
};

// Midranks of `values` (1..n with ties averaged), order matching the input.
Ranked average_ranks(std::span<const double> values);

}  // namespace statsel::stats

#endif  // STATSEL_STATS_RANKS_HPP
