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

#include "engine.hpp"

#include <algorithm>
#include <array>

#include "common/error.hpp"

namespace statsel {

namespace {

using spec::GroupComparison;
using spec::LinearRelationship;
using stats::Tail;

struct HypothesisContext {
  solver::HypothesisShape shape;
  std::map<std::string, std::string> roles;  // @outcome/@factor -> variable
  std::string outcome;
  std::string factor;
  Tail tail = Tail::two_sided;
  // Two-group comparisons run on [left, right] in this order.
  std::optional<std::pair<std::string, std::string>> category_pair;
};

HypothesisContext resolve_hypothesis(const spec::ValidatedSpec& vs) {
  HypothesisContext ctx;
  if (const auto* cmp = std::get_if<GroupComparison>(&vs.spec.hypothesis.form)) {
    ctx.shape = solver::HypothesisShape::group_comparison;
    ctx.outcome = cmp->dependent;
    ctx.factor = cmp->independent;
    ctx.tail = cmp->relation == spec::Relation::greater ? Tail::greater
               : cmp->relation == spec::Relation::less  ? Tail::less
                                                        : Tail::two_sided;
    ctx.category_pair = {{cmp->left, cmp->right}};
  } else {
    const auto& rel = std::get<LinearRelationship>(vs.spec.hypothesis.form);
    ctx.shape = solver::HypothesisShape::linear_relationship;
    // The design decides orientation: outcome = the dependent variable.
    const auto& dependent = vs.spec.design.dependent;
    const bool first_dep = std::find(dependent.begin(), dependent.end(),
                                     rel.first) != dependent.end();
    ctx.outcome = first_dep ? rel.first : rel.second;
    ctx.factor = first_dep ? rel.second : rel.first;
    ctx.tail = rel.sign == spec::Sign::positive   ? Tail::greater
               : rel.sign == spec::Sign::negative ? Tail::less
                                                  : Tail::two_sided;
  }
  ctx.roles[props::kRoleOutcome] = ctx.outcome;
  ctx.roles[props::kRoleFactor] = ctx.factor;
  return ctx;
}

// Two-group ordering per the hypothesis: [left category, right category].
std::pair<std::vector<double>, std::vector<double>> ordered_pair_groups(
    const data::SampleGroups& groups, const HypothesisContext& ctx) {
  if (!ctx.category_pair) {
    if (groups.samples.size() != 2) {
      throw Error(Errc::internal, "expected exactly two groups");
    }
    return {groups.samples[0], groups.samples[1]};
  }
  const auto index_of = [&](const std::string& label) {
    const auto it = std::find(groups.labels.begin(), groups.labels.end(), label);
    if (it == groups.labels.end()) {
      throw Error(Errc::unknown_category, label);
    }
    return static_cast<std::size_t>(std::distance(groups.labels.begin(), it));
  };
  return {groups.samples[index_of(ctx.category_pair->first)],
          groups.samples[index_of(ctx.category_pair->second)]};
}

std::pair<std::vector<double>, std::vector<double>> ordered_pair_columns(
    const data::PairedSamples& pairs, const HypothesisContext& ctx) {
  std::size_t li = 0, ri = 1;
  if (ctx.category_pair) {
    const auto index_of = [&](const std::string& label) {
      const auto it =
          std::find(pairs.conditions.begin(), pairs.conditions.end(), label);
      if (it == pairs.conditions.end()) {
        throw Error(Errc::unknown_category, label);
      }
      return static_cast<std::size_t>(
          std::distance(pairs.conditions.begin(), it));
    };
    li = index_of(ctx.category_pair->first);
    ri = index_of(ctx.category_pair->second);
  }
  std::vector<double> left, right;
  left.reserve(pairs.values.size());
  right.reserve(pairs.values.size());
  for (const auto& row : pairs.values) {
    left.push_back(row[li]);
    right.push_back(row[ri]);
  }
  return {std::move(left), std::move(right)};
}

// The t family and correlations report the two-tailed probability; the
// statistic's sign carries the direction. Rank tests honor the hypothesis
// direction in the tail itself.
void note_direction(stats::TestOutcome& out, const HypothesisContext& ctx,
                    bool observed_positive) {
  if (ctx.tail == Tail::two_sided) return;
  const bool hypothesized_positive = ctx.tail == Tail::greater;
  out.notes.push_back(std::string("two-sided p; observed direction ") +
                      (observed_positive == hypothesized_positive
                           ? "matches the hypothesis"
                           : "opposes the hypothesis"));
}

std::string claim_text(const spec::AssumptionClaim& c) {
  std::string s = c.property == spec::ClaimKind::normality
                      ? "normality of " + c.variable
                      : "equal variance of " + c.variable;
  if (c.group_by) s += " by " + *c.group_by;
  if (!c.truth) s = "NOT " + s;
  return s;
}

}  // namespace

report::AnalysisReport run_analysis(const spec::ValidatedSpec& vs,
                                    const data::Dataset& ds,
                                    const RunOptions& options) {
  const HypothesisContext ctx = resolve_hypothesis(vs);
  const std::uint64_t seed = options.seed.value_or(kDefaultSeed);

  report::AnalysisReport rep;
  rep.version = kVersion;
  rep.seed = seed;
  rep.resamples = options.resamples;
  rep.alpha = vs.spec.assumptions.alpha;
  rep.hypothesis = spec::hypothesis_text(vs.spec.hypothesis);
  rep.sidedness = ctx.tail == Tail::two_sided ? "two-sided" : "one-sided";
  for (const auto& c : vs.spec.assumptions.claims) {
    rep.assumption_echo.push_back(claim_text(c));
  }
  for (const auto& w : vs.warnings) rep.notes.push_back(w);

  props::Evaluator evaluator(vs, ds, options.levene_center);
  rep.selection = solver::select_tests(solver::knowledge_base(), ctx.shape,
                                       ctx.roles, evaluator);
  rep.fallback = rep.selection.fallback;

  // Shared samples, built lazily and reused across tests.
  std::optional<data::SampleGroups> groups;
  const auto get_groups = [&]() -> const data::SampleGroups& {
    if (!groups) {
      groups = data::group_samples(ds, ctx.outcome, ctx.factor);
      if (groups->dropped_nulls > 0) {
        rep.notes.push_back(std::to_string(groups->dropped_nulls) +
                            " row(s) with missing values dropped from the "
                            "grouped analysis");
      }
    }
    return *groups;
  };
  std::optional<data::PairedSamples> pairs;
  const auto get_pairs = [&]() -> const data::PairedSamples& {
    if (!pairs) {
      pairs = data::pair_samples(ds, ctx.outcome, ctx.factor);
      if (pairs->excluded_units > 0) {
        rep.notes.push_back(std::to_string(pairs->excluded_units) +
                            " unit(s) without a complete set of conditions "
                            "excluded from within-subjects analyses");
      }
    }
    return *pairs;
  };

  const stats::RankTestConfig rank_cfg;

  for (const solver::TestRequirement* test : rep.selection.to_execute()) {
    report::ExecutedTest executed;
    executed.id = test->id;
    executed.name = test->display_name;
    executed.family = test->family;
    executed.power_rank = test->power_rank;
    try {
      if (test->id == "students_t" || test->id == "welch_t") {
        const auto [a, b] = ordered_pair_groups(get_groups(), ctx);
        executed.outcome = stats::independent_t(
            a, b, test->id == "students_t", Tail::two_sided, options.ci_level);
        note_direction(executed.outcome, ctx, executed.outcome.statistic > 0);
      } else if (test->id == "mann_whitney") {
        const auto [a, b] = ordered_pair_groups(get_groups(), ctx);
        executed.outcome = stats::mann_whitney_u(a, b, ctx.tail, rank_cfg);
      } else if (test->id == "paired_t") {
        const auto [a, b] = ordered_pair_columns(get_pairs(), ctx);
        executed.outcome = stats::paired_t(a, b, Tail::two_sided,
                                           options.ci_level);
        note_direction(executed.outcome, ctx, executed.outcome.statistic > 0);
      } else if (test->id == "wilcoxon_signed_rank") {
        const auto [a, b] = ordered_pair_columns(get_pairs(), ctx);
        executed.outcome = stats::wilcoxon_signed_rank(a, b, ctx.tail, rank_cfg);
      } else if (test->id == "f_test") {
        executed.outcome = stats::one_way_anova(get_groups().samples);
      } else if (test->id == "kruskal_wallis") {
        executed.outcome = stats::kruskal_wallis(get_groups().samples);
      } else if (test->id == "rm_one_way_anova") {
        executed.outcome = stats::rm_one_way_anova(get_pairs().values);
      } else if (test->id == "friedman") {
        executed.outcome = stats::friedman(get_pairs().values);
      } else if (test->id == "factorial_anova" || test->id == "two_way_anova") {
        // One hypothesis factor: the factorial routine degenerates to the
        // one-way decomposition, fitted by regression.
        const auto& g = get_groups();
        std::vector<double> y;
        std::vector<int> codes;
        for (std::size_t gi = 0; gi < g.samples.size(); ++gi) {
          for (double v : g.samples[gi]) {
            y.push_back(v);
            codes.push_back(static_cast<int>(gi));
          }
        }
        const auto effects = stats::factorial_anova(
            y, codes, static_cast<int>(g.samples.size()));
        const auto& main = effects.front();
        executed.outcome.statistic_name = "F";
        executed.outcome.statistic = main.f;
        executed.outcome.dof = {main.df, effects.back().df};
        executed.outcome.p_value = main.p;
        executed.outcome.effect =
            stats::EffectSize{"partial_eta_sq", main.partial_eta_sq};
        for (const auto& s : g.samples) {
          executed.outcome.sample_sizes.push_back(s.size());
        }
      } else if (test->id == "chi_square") {
        executed.outcome = stats::chi_square_test(
            data::contingency_table(ds, ctx.outcome, ctx.factor));
      } else if (test->id == "fisher_exact") {
        const auto table = data::contingency_table(ds, ctx.outcome, ctx.factor);
        if (table.size() != 2 || table[0].size() != 2) {
          throw Error(Errc::not_two_by_two,
                      "Fisher's exact needs a 2x2 table");
        }
        std::array<std::array<long long, 2>, 2> t2{};
        for (int i = 0; i < 2; ++i) {
          for (int j = 0; j < 2; ++j) {
            t2[i][j] = static_cast<long long>(table[i][j]);
          }
        }
        executed.outcome = stats::fisher_exact(t2, Tail::two_sided);
      } else if (test->id == "bootstrap") {
        const auto* fdecl = vs.spec.find_variable(ctx.factor);
        stats::BootstrapOutcome boot;
        if (fdecl != nullptr && spec::is_categorical(fdecl->dtype)) {
          const auto& g = get_groups();
          boot = stats::bootstrap_ci(g.labels, g.samples, options.ci_level,
                                     options.resamples, seed);
        } else {
          const auto cols = data::paired_columns(ds, ctx.outcome, ctx.factor);
          boot = stats::bootstrap_ci({ctx.outcome, ctx.factor},
                                     {cols.first, cols.second},
                                     options.ci_level, options.resamples, seed);
        }
        executed.has_p = false;
        executed.outcome.statistic_name = "mean";
        executed.outcome.statistic = boot.groups.front().mean;
        executed.outcome.notes.push_back("percentile bootstrap");
        rep.bootstrap = std::move(boot);
      } else if (test->id == "pearson_r" || test->id == "pointbiserial" ||
                 test->id == "spearman_rho" || test->id == "kendall_tau") {
        const auto cols = data::paired_columns(ds, ctx.outcome, ctx.factor);
        if (cols.dropped_nulls > 0) {
          rep.notes.push_back(std::to_string(cols.dropped_nulls) +
                              " incomplete row(s) dropped from the "
                              "correlation analysis");
        }
        if (test->id == "spearman_rho") {
          executed.outcome =
              stats::spearman_rho(cols.first, cols.second, Tail::two_sided);
        } else if (test->id == "kendall_tau") {
          executed.outcome =
              stats::kendall_tau(cols.first, cols.second, Tail::two_sided);
        } else {
          executed.outcome = stats::pearson_r(cols.first, cols.second,
                                              Tail::two_sided, options.ci_level);
        }
        note_direction(executed.outcome, ctx, executed.outcome.statistic > 0);
      } else {
        throw Error(Errc::internal, "no runner for test " + test->id);
      }
      rep.results.push_back(std::move(executed));
    } catch (const Error& e) {
      rep.notes.push_back("test " + test->id +
                          " was selected but could not run: " + e.formatted());
    }
  }

  // Holm across every executed p-value in this run.
  std::vector<double> raw;
  for (const auto& res : rep.results) {
    if (res.has_p) raw.push_back(res.outcome.p_value);
  }
  const auto adjusted = report::holm_adjust(raw);
  std::size_t pi = 0;
  for (auto& res : rep.results) {
    if (res.has_p) res.p_adjusted = adjusted[pi++];
  }

  report::rank_by_power(rep.results);
  rep.conflicts = props::reconcile_assumptions(evaluator.snapshot());
  return rep;
}

}  // namespace statsel
