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

#include "common/error.hpp"
#include "speclang/ast.hpp"

namespace statsel::spec {

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

const VariableDecl& require_declared(const AnalysisSpec& spec,
                                     const std::string& name,
                                     const char* where) {
  const auto* decl = spec.find_variable(name);
  if (decl == nullptr) {
    throw Error(Errc::unknown_variable,
                std::string(where) + " references undeclared variable '" + name +
                    "'");
  }
  return *decl;
}

}  // namespace

ValidatedSpec validate_spec(AnalysisSpec spec) {
  // Type invariants.
  for (const auto& v : spec.variables) {
    if (is_categorical(v.dtype)) {
      if (v.categories.empty()) {
        throw Error(Errc::invalid_spec,
                    "variable '" + v.name + "' needs categories");
      }
      if (v.range) {
        throw Error(Errc::invalid_spec,
                    "variable '" + v.name + "' cannot carry a numeric range");
      }
      for (std::size_t i = 0; i < v.categories.size(); ++i) {
        for (std::size_t j = i + 1; j < v.categories.size(); ++j) {
          if (v.categories[i] == v.categories[j]) {
            throw Error(Errc::invalid_spec,
                        "duplicate category '" + v.categories[i] + "' in '" +
                            v.name + "'");
          }
        }
      }
    } else {
      if (!v.categories.empty()) {
        throw Error(Errc::invalid_spec,
                    "numeric variable '" + v.name + "' cannot list categories");
      }
      if (v.range && v.range->first > v.range->second) {
        throw Error(Errc::invalid_spec,
                    "range of '" + v.name + "' has lower bound above upper");
      }
    }
  }
  for (std::size_t i = 0; i < spec.variables.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.variables.size(); ++j) {
      if (spec.variables[i].name == spec.variables[j].name) {
        throw Error(Errc::duplicate_variable, spec.variables[i].name);
      }
    }
  }

  if (!(spec.assumptions.alpha > 0.0 && spec.assumptions.alpha < 1.0)) {
    throw Error(Errc::invalid_alpha,
                "alpha must lie strictly between 0 and 1");
  }

  // Design cross-references.
  const auto& design = spec.design;
  if (design.independent.empty()) {
    throw Error(Errc::invalid_spec, "design names no independent variable");
  }
  if (design.dependent.empty()) {
    throw Error(Errc::invalid_spec, "design names no dependent variable");
  }
  for (const auto& name : design.independent) {
    require_declared(spec, name, "design");
  }
  for (const auto& name : design.dependent) {
    require_declared(spec, name, "design");
    if (contains(design.independent, name)) {
      throw Error(Errc::role_conflict,
                  "variable '" + name + "' is both independent and dependent");
    }
  }
  for (const auto& name : design.within_subjects) {
    if (!contains(design.independent, name)) {
      throw Error(Errc::invalid_spec,
                  "within-subjects variable '" + name +
                      "' is not an independent variable");
    }
  }
  if (!design.within_subjects.empty() && !design.key) {
    throw Error(Errc::within_without_key,
                "within-subjects measurements need a relational key");
  }

  // Assumption claims.
  for (const auto& claim : spec.assumptions.claims) {
    require_declared(spec, claim.variable, "assumptions");
    if (claim.group_by) {
      const auto& g = require_declared(spec, *claim.group_by, "assumptions");
      if (!is_categorical(g.dtype)) {
        throw Error(Errc::invalid_spec,
                    "assumption grouping variable '" + *claim.group_by +
                        "' must be nominal or ordinal");
      }
    }
  }

  // Hypothesis roles.
  if (auto* cmp = std::get_if<GroupComparison>(&spec.hypothesis.form)) {
    const auto& ind = require_declared(spec, cmp->independent, "hypothesis");
    if (!contains(design.independent, cmp->independent)) {
      throw Error(Errc::role_conflict,
                  "hypothesis groups by '" + cmp->independent +
                      "', which the design does not list as independent");
    }
    for (const auto& cat : {cmp->left, cmp->right}) {
      if (!contains(ind.categories, cat)) {
        throw Error(Errc::unknown_category,
                    "variable '" + cmp->independent + "' has no category '" +
                        cat + "'");
      }
    }
    if (cmp->left == cmp->right) {
      throw Error(Errc::invalid_spec,
                  "comparison needs two distinct categories");
    }
    if (cmp->dependent.empty()) {
      if (design.dependent.size() != 1) {
        throw Error(Errc::invalid_spec,
                    "comparison hypothesis needs exactly one dependent "
                    "variable in the design");
      }
      cmp->dependent = design.dependent.front();
    }
    const auto& dep = require_declared(spec, cmp->dependent, "hypothesis");
    if (!contains(design.dependent, cmp->dependent)) {
      throw Error(Errc::role_conflict,
                  "hypothesis outcome '" + cmp->dependent +
                      "' is not a dependent variable");
    }
    if (cmp->relation != Relation::not_equal && dep.dtype == DType::nominal) {
      throw Error(Errc::unsupported_form,
                  "ordered comparison of a nominal outcome; use != instead");
    }
  } else {
    const auto& rel = std::get<LinearRelationship>(spec.hypothesis.form);
    require_declared(spec, rel.first, "hypothesis");
    require_declared(spec, rel.second, "hypothesis");
    const bool first_dep = contains(design.dependent, rel.first);
    const bool second_dep = contains(design.dependent, rel.second);
    const bool first_ind = contains(design.independent, rel.first);
    const bool second_ind = contains(design.independent, rel.second);
    if (!((first_dep && second_ind) || (second_dep && first_ind))) {
      throw Error(Errc::role_conflict,
                  "a relationship hypothesis needs one dependent and one "
                  "independent variable");
    }
  }

  ValidatedSpec out;
  out.spec = std::move(spec);
  for (const auto& v : out.spec.variables) {
    if (contains(out.spec.design.independent, v.name)) {
      out.roles[v.name] = Role::contributor;
    } else if (contains(out.spec.design.dependent, v.name)) {
      out.roles[v.name] = Role::outcome;
    } else {
      out.roles[v.name] = Role::covariate;
      out.warnings.push_back("variable '" + v.name +
                             "' has no design role; treated as a covariate and "
                             "ignored");
    }
  }
  return out;
}

}  // namespace statsel::spec
