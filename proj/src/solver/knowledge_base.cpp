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

// The test knowledge base. Each entry states the precondition conjunction
// under which the test applies; a test is applicable if and only if every
// atom holds. Atoms are ordered by footnote code so the first failing atom
// reported to users follows the conventional reading order (counts, scale,
// normality, variance, dependence, groups).

#include <json.hpp>

#include "solver/solver.hpp"

namespace statsel::solver {

namespace {

using props::AtomKind;
using props::DTypeClass;
using props::PropertyId;

constexpr const char* kOut = props::kRoleOutcome;
constexpr const char* kFac = props::kRoleFactor;

PropertyId vars_eq(int n) {
  PropertyId p;
  p.kind = AtomKind::variable_count;
  p.count = n;
  p.variables = {kOut, kFac};
  return p;
}

PropertyId vars_ge(int n) {
  PropertyId p = vars_eq(n);
  p.at_least = true;
  return p;
}

PropertyId dtype(const char* role, DTypeClass c) {
  PropertyId p;
  p.kind = AtomKind::dtype;
  p.dclass = c;
  p.variables = {role};
  return p;
}

PropertyId normality_by_group() {
  PropertyId p;
  p.kind = AtomKind::normality;
  p.grouped = true;
  p.variables = {kOut, kFac};
  return p;
}

PropertyId normality_marginal(const char* role) {
  PropertyId p;
  p.kind = AtomKind::normality;
  p.grouped = false;
  p.variables = {role};
  return p;
}

PropertyId equal_variance() {
  PropertyId p;
  p.kind = AtomKind::equal_variance;
  p.variables = {kOut, kFac};
  return p;
}

PropertyId observations(bool dependent) {
  PropertyId p;
  p.kind = AtomKind::independence;
  p.require_dependent = dependent;
  p.variables = {kFac};
  return p;
}

PropertyId groups_eq(int n, const char* role = kFac) {
  PropertyId p;
  p.kind = AtomKind::group_count;
  p.count = n;
  p.variables = {role};
  return p;
}

PropertyId groups_ge(int n, const char* role = kFac) {
  PropertyId p = groups_eq(n, role);
  p.at_least = true;
  return p;
}

std::vector<TestRequirement> build() {
  std::vector<TestRequirement> kb;
  auto add = [&](std::string id, std::string name, Family family, int rank,
                 std::vector<PropertyId> atoms, bool cmp, bool rel) {
    TestRequirement t;
    t.id = std::move(id);
    t.display_name = std::move(name);
    t.family = family;
    t.power_rank = rank;
    t.conjunction = std::move(atoms);
    t.for_comparison = cmp;
    t.for_relationship = rel;
    kb.push_back(std::move(t));
  };

  // Bivariate mean comparison.
  add("students_t", "Student's t-test", Family::parametric, 10,
      {vars_eq(2), dtype(kOut, DTypeClass::continuous),
       dtype(kFac, DTypeClass::categorical), normality_by_group(),
       equal_variance(), observations(false), groups_eq(2)},
      true, false);
  add("paired_t", "Paired t-test", Family::parametric, 11,
      {vars_eq(2), dtype(kOut, DTypeClass::continuous),
       dtype(kFac, DTypeClass::categorical), normality_by_group(),
       observations(true), groups_eq(2)},
      true, false);

  // Multivariate mean comparison.
  add("f_test", "F-test (one-way ANOVA)", Family::parametric, 20,
      {vars_eq(2), dtype(kOut, DTypeClass::continuous),
       dtype(kFac, DTypeClass::categorical), normality_by_group(),
       equal_variance(), observations(false), groups_ge(2)},
      true, false);
  add("rm_one_way_anova", "Repeated measures one-way ANOVA",
      Family::parametric, 21,
      {vars_eq(2), dtype(kOut, DTypeClass::continuous),
       dtype(kFac, DTypeClass::categorical), normality_by_group(),
       equal_variance(), observations(true), groups_ge(2)},
      true, false);
  add("two_way_anova", "Two-way ANOVA", Family::parametric, 22,
      {vars_ge(2), dtype(kOut, DTypeClass::continuous),
       dtype(kFac, DTypeClass::categorical), normality_by_group(),
       equal_variance(), observations(false), groups_ge(2)},
      true, false);
  add("factorial_anova", "Factorial ANOVA", Family::parametric, 23,
      {vars_ge(2), dtype(kOut, DTypeClass::continuous),
       dtype(kFac, DTypeClass::categorical), normality_by_group(),
       equal_variance(), observations(false), groups_ge(2)},
      true, false);

  // Correlation.
  add("pearson_r", "Pearson's r", Family::parametric, 30,
      {vars_eq(2), dtype(kOut, DTypeClass::continuous),
       dtype(kFac, DTypeClass::continuous), normality_marginal(kOut),
       normality_marginal(kFac)},
      false, true);
  add("pointbiserial", "Pointbiserial (Pearson's r)", Family::parametric, 31,
      {vars_eq(2), dtype(kOut, DTypeClass::continuous),
       dtype(kFac, DTypeClass::dichotomous), normality_by_group()},
      false, true);

  // Nonparametric alternatives.
  add("welch_t", "Welch's t-test", Family::nonparametric, 40,
      {vars_eq(2), dtype(kOut, DTypeClass::continuous),
       dtype(kFac, DTypeClass::categorical), normality_by_group(),
       observations(false), groups_eq(2)},
      true, false);
  add("mann_whitney", "Mann-Whitney U", Family::nonparametric, 41,
      {vars_eq(2), dtype(kOut, DTypeClass::ordinal),
       dtype(kFac, DTypeClass::categorical), observations(false), groups_eq(2)},
      true, false);
  add("wilcoxon_signed_rank", "Wilcoxon signed rank", Family::nonparametric, 42,
      {vars_eq(2), dtype(kOut, DTypeClass::ordinal),
       dtype(kFac, DTypeClass::categorical), observations(true), groups_eq(2)},
      true, false);
  add("kruskal_wallis", "Kruskal-Wallis", Family::nonparametric, 43,
      {vars_eq(2), dtype(kOut, DTypeClass::ordinal),
       dtype(kFac, DTypeClass::categorical), observations(false), groups_ge(2)},
      true, false);
  add("friedman", "Friedman", Family::nonparametric, 44,
      {vars_eq(2), dtype(kOut, DTypeClass::ordinal),
       dtype(kFac, DTypeClass::categorical), observations(true), groups_ge(2)},
      true, false);
  add("spearman_rho", "Spearman's rho", Family::nonparametric, 45,
      {vars_eq(2), dtype(kOut, DTypeClass::ordinal),
       dtype(kFac, DTypeClass::ordinal)},
      false, true);
  add("kendall_tau", "Kendall's tau", Family::nonparametric, 46,
      {vars_eq(2), dtype(kOut, DTypeClass::ordinal),
       dtype(kFac, DTypeClass::ordinal)},
      false, true);

  // Proportions; considered for either hypothesis shape (they apply when
  // both variables are categorical).
  add("chi_square", "Chi-square", Family::proportion, 50,
      {vars_eq(2), dtype(kOut, DTypeClass::categorical),
       dtype(kFac, DTypeClass::categorical), groups_ge(2, kOut),
       groups_ge(2, kFac)},
      true, true);
  add("fisher_exact", "Fisher's exact", Family::proportion, 51,
      {vars_eq(2), dtype(kOut, DTypeClass::dichotomous),
       dtype(kFac, DTypeClass::dichotomous), groups_eq(2, kOut),
       groups_eq(2, kFac)},
      true, true);

  // Always-applicable fallback: the empty conjunction.
  add("bootstrap", "Bootstrap", Family::resampling, 90, {}, true, true);
  return kb;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::parametric: return "parametric";
    case Family::nonparametric: return "nonparametric";
    case Family::proportion: return "proportion";
    case Family::resampling: return "resampling";
  }
  return "?";
}

const std::vector<TestRequirement>& knowledge_base() {
  static const std::vector<TestRequirement> kb = build();
  return kb;
}

std::string knowledge_base_json() {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& t : knowledge_base()) {
    nlohmann::ordered_json j;
    j["id"] = t.id;
    j["name"] = t.display_name;
    j["family"] = family_name(t.family);
    j["power_rank"] = t.power_rank;
    j["applies_to"] = nlohmann::ordered_json::array();
    if (t.for_comparison) j["applies_to"].push_back("group_comparison");
    if (t.for_relationship) j["applies_to"].push_back("linear_relationship");
    j["preconditions"] = nlohmann::ordered_json::array();
    for (const auto& atom : t.conjunction) {
      nlohmann::ordered_json a;
      a["atom"] = atom.key();
      a["code"] = atom.footnote_code();
      a["description"] = atom.describe();
      j["preconditions"].push_back(std::move(a));
    }
    doc.push_back(std::move(j));
  }
  return doc.dump(2);
}

std::vector<const TestRequirement*> SelectionOutcome::to_execute() const {
  std::vector<const TestRequirement*> out;
  for (const auto& d : valid) {
    if (fallback || d.test->id != "bootstrap") out.push_back(d.test);
  }
  return out;
}

}  // namespace statsel::solver
