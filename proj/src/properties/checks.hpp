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

#ifndef STATSEL_PROPERTIES_CHECKS_HPP
#define STATSEL_PROPERTIES_CHECKS_HPP

#include <span>
#include <vector>

namespace statsel::props {

struct CheckResult {
  double statistic;
  double p_value;
};

// Shapiro-Wilk W and its significance level (AS R94 approximation),
// 3 <= n <= 5000. Throws insufficient_data / degenerate_sample.
CheckResult shapiro_wilk(std::span<const double> sample);

enum class LeveneCenter { mean, median };

// Levene's homogeneity-of-variance test: one-way ANOVA F on absolute
// deviations from the group center. The classic test centers on the mean;
// median centering is the robust variant.
CheckResult levene_test(const std::vector<std::vector<double>>& groups,
                        LeveneCenter center = LeveneCenter::mean);

}  // namespace statsel::props

#endif  // STATSEL_PROPERTIES_CHECKS_HPP
