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

#ifndef STATSEL_STATS_TESTS_HPP
#define STATSEL_STATS_TESTS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace statsel::stats {

// Direction of the alternative. `greater` means "first sample / first column
// / positive association", matching how the runner orders group samples.
enum class Tail { two_sided, greater, less };

struct ConfidenceInterval {
  double level;
  double lo;
  double hi;
};

struct EffectSize {
  std::string name;
  double value;
};

// One executed test. `dof` is empty, {nu} or {d1, d2}; fractional dof are
// fine (Welch). `notes` records method choices a reader needs to interpret
// the number (exact vs. approximation, dropped observations, conventions).
struct TestOutcome {
  std::string statistic_name;
  double statistic = 0.0;
  std::vector<double> dof;
  double p_value = 1.0;
  Tail tail = Tail::two_sided;
  std::optional<EffectSize> effect;
  std::optional<ConfidenceInterval> ci;
  std::vector<std::size_t> sample_sizes;
  std::vector<std::string> notes;
};

// Exactness cutoffs for the rank tests. Defaults keep full enumeration well
// under a million states; raise them if you can afford more.
struct RankTestConfig {
  std::size_t mann_whitney_exact_max_total = 20;  // n1 + n2
  std::size_t wilcoxon_exact_max_n = 15;          // nonzero differences
};

// -- correlation family ------------------------------------------------------

TestOutcome pearson_r(std::span<const double> x, std::span<const double> y,
                      Tail tail, double ci_level = 0.95);
TestOutcome spearman_rho(std::span<const double> x, std::span<const double> y,
                         Tail tail);
TestOutcome kendall_tau(std::span<const double> x, std::span<const double> y,
                        Tail tail);

// -- mean comparison ---------------------------------------------------------

// pooled_variance=true is the classic two-sample t; false is Welch.
TestOutcome independent_t(std::span<const double> a, std::span<const double> b,
                          bool pooled_variance, Tail tail,
                          double ci_level = 0.95);
TestOutcome paired_t(std::span<const double> a, std::span<const double> b,
                     Tail tail, double ci_level = 0.95);

TestOutcome mann_whitney_u(std::span<const double> a, std::span<const double> b,
                           Tail tail, const RankTestConfig& cfg = {});
TestOutcome wilcoxon_signed_rank(std::span<const double> a,
                                 std::span<const double> b, Tail tail,
                                 const RankTestConfig& cfg = {});
TestOutcome wilcoxon_signed_rank_diffs(std::span<const double> diffs, Tail tail,
                                       const RankTestConfig& cfg = {});

// -- k-group comparison ------------------------------------------------------

TestOutcome one_way_anova(const std::vector<std::vector<double>>& groups);

// Rows are units, columns are conditions; the matrix must be complete.
TestOutcome rm_one_way_anova(const std::vector<std::vector<double>>& matrix);

TestOutcome kruskal_wallis(const std::vector<std::vector<double>>& groups);
TestOutcome friedman(const std::vector<std::vector<double>>& matrix);

// Crossed between-subjects design, Type II sums of squares (reduces to the
// unique decomposition when balanced). Factor codes are 0-based levels.
struct AnovaEffect {
  std::string name;
  double ss;
  double df;
  double f;
  double p;
  double partial_eta_sq;
};
std::vector<AnovaEffect> factorial_anova(std::span<const double> y,
                                         std::span<const int> factor_a,
                                         int a_levels,
                                         std::span<const int> factor_b,
                                         int b_levels);
// One-factor degenerate form; equals one_way_anova on the same grouping.
std::vector<AnovaEffect> factorial_anova(std::span<const double> y,
                                         std::span<const int> factor_a,
                                         int a_levels);

// -- proportions -------------------------------------------------------------

TestOutcome chi_square_test(const std::vector<std::vector<double>>& observed);
TestOutcome fisher_exact(const std::array<std::array<long long, 2>, 2>& table,
                         Tail tail);

// -- resampling --------------------------------------------------------------

struct BootstrapGroup {
  std::string label;
  double mean;
  ConfidenceInterval ci;
};

struct BootstrapOutcome {
  std::vector<BootstrapGroup> groups;
  std::optional<ConfidenceInterval> difference;  // first minus second group
  bool significant = false;                      // difference CI excludes 0
  double level;
  std::size_t resamples;
  std::uint64_t seed;
};

BootstrapOutcome bootstrap_ci(const std::vector<std::string>& labels,
                              const std::vector<std::vector<double>>& groups,
                              double level, std::size_t resamples,
                              std::uint64_t seed);

}  // namespace statsel::stats

#endif  // STATSEL_STATS_TESTS_HPP
