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

#include "properties/properties.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace statsel::props {

namespace {

const char* dclass_name(DTypeClass c) {
  switch (c) {
    case DTypeClass::continuous: return "continuous";
    case DTypeClass::categorical: return "categorical";
    case DTypeClass::ordinal: return "ordinal";
    case DTypeClass::dichotomous: return "dichotomous";
  }
  return "?";
}

bool matches_class(const spec::VariableDecl& decl, DTypeClass c) {
  switch (c) {
    case DTypeClass::continuous:
      return spec::is_continuous(decl.dtype);
    case DTypeClass::categorical:
      return spec::is_categorical(decl.dtype);
    case DTypeClass::ordinal:
      // anything orderable
      return decl.dtype != spec::DType::nominal;
    case DTypeClass::dichotomous:
      return spec::is_categorical(decl.dtype) && decl.categories.size() == 2;
  }
  return false;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::assumed: return "assumed";
    case Provenance::computed: return "computed";
    case Provenance::structural: return "structural";
  }
  return "?";
}

std::string PropertyId::key() const {
  std::string k;
  switch (kind) {
    case AtomKind::variable_count: k = "variable_count"; break;
    case AtomKind::dtype: k = "dtype"; break;
    case AtomKind::normality: k = "normality"; break;
    case AtomKind::equal_variance: k = "equal_variance"; break;
    case AtomKind::independence: k = "independence"; break;
    case AtomKind::group_count: k = "group_count"; break;
  }
  if (kind == AtomKind::variable_count || kind == AtomKind::group_count) {
    k += at_least ? ">=" : "==";
    k += std::to_string(count);
  }
  if (kind == AtomKind::dtype) {
    k += ':';
    k += dclass_name(dclass);
  }
  if (kind == AtomKind::normality) k += grouped ? ":by-group" : ":marginal";
  if (kind == AtomKind::independence) {
    k += require_dependent ? ":dependent" : ":independent";
  }
  k += '(';
  k += join(variables, ",");
  k += ')';
  return k;
}

std::string PropertyId::describe() const {
  switch (kind) {
    case AtomKind::variable_count:
      return (at_least ? "at least " : "exactly ") + std::to_string(count) +
             " variables";
    case AtomKind::dtype:
      return variables.empty()
                 ? std::string(dclass_name(dclass)) + " data"
                 : variables[0] + " is " + dclass_name(dclass);
    case AtomKind::normality:
      if (grouped && variables.size() == 2) {
        return "normality of " + variables[0] + " within " + variables[1] +
               " groups";
      }
      return "normality of " + join(variables, ", ");
    case AtomKind::equal_variance:
      return "equal variance of " + variables[0] +
             (variables.size() > 1 ? " across " + variables[1] + " groups" : "");
    case AtomKind::independence:
      return require_dependent ? "dependent (repeated) observations"
                               : "independent observations";
    case AtomKind::group_count:
      return (at_least ? "at least " : "exactly ") + std::to_string(count) +
             " groups" + (variables.empty() ? "" : " of " + variables[0]);
  }
  return "?";
}

int PropertyId::footnote_code() const {
  switch (kind) {
    case AtomKind::variable_count:
      if (at_least) return 3;
      return count == 1 ? 1 : 2;
    case AtomKind::dtype: return 4;
    case AtomKind::normality: return 5;
    case AtomKind::equal_variance: return 6;
    case AtomKind::independence: return 7;
    case AtomKind::group_count: return at_least ? 9 : 8;
  }
  return 0;
}

PropertyId bind(const PropertyId& templ,
                const std::map<std::string, std::string>& roles) {
  PropertyId out = templ;
  for (auto& v : out.variables) {
    const auto it = roles.find(v);
    if (it != roles.end()) v = it->second;
  }
  return out;
}

Evaluator::Evaluator(const spec::ValidatedSpec& vs, const data::Dataset& ds,
                     LeveneCenter levene_center)
    : vs_(vs), ds_(ds), levene_center_(levene_center) {}

PropertyValue Evaluator::evaluate(const PropertyId& id) {
  // One lock around lookup and compute keeps each check single-run even
  // under concurrent callers.
  const std::string key = id.key();
  std::lock_guard lock(mu_);
  const auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  PropertyValue value = compute(id);
  return cache_.emplace(key, std::move(value)).first->second;
}

std::map<std::string, PropertyValue> Evaluator::snapshot() const {
  std::lock_guard lock(mu_);
  return cache_;
}

std::optional<bool> Evaluator::claimed_truth(const PropertyId& id) const {
  const auto& claims = vs_.spec.assumptions.claims;
  std::optional<bool> result;
  for (const auto& c : claims) {
    if (id.kind == AtomKind::normality && c.property == spec::ClaimKind::normality) {
      if (c.variable != id.variables.at(0)) continue;
      if (id.grouped && id.variables.size() == 2) {
        // Exact per-group claim, or a marginal claim covering every grouping.
        if (!c.group_by || *c.group_by == id.variables[1]) result = c.truth;
      } else {
        if (!c.group_by) result = c.truth;
      }
    } else if (id.kind == AtomKind::equal_variance &&
               c.property == spec::ClaimKind::equal_variance) {
      if (c.variable == id.variables.at(0) && c.group_by &&
          id.variables.size() == 2 && *c.group_by == id.variables[1]) {
        result = c.truth;
      }
    }
  }
  return result;
}

PropertyValue Evaluator::compute(const PropertyId& id) {
  PropertyValue v;
  switch (id.kind) {
    case AtomKind::variable_count: {
      const int n = static_cast<int>(id.variables.size());
      v.truth = id.at_least ? n >= id.count : n == id.count;
      v.provenance = Provenance::structural;
      return v;
    }
    case AtomKind::dtype: {
      const auto* decl = vs_.spec.find_variable(id.variables.at(0));
      v.truth = decl != nullptr && matches_class(*decl, id.dclass);
      v.provenance = Provenance::structural;
      return v;
    }
    case AtomKind::independence: {
      const auto& within = vs_.spec.design.within_subjects;
      const bool is_within =
          !id.variables.empty() &&
          std::find(within.begin(), within.end(), id.variables[0]) != within.end();
      v.truth = is_within == id.require_dependent;
      v.provenance = Provenance::structural;
      return v;
    }
    case AtomKind::group_count: {
      const auto* decl = vs_.spec.find_variable(id.variables.at(0));
      if (decl == nullptr || !spec::is_categorical(decl->dtype)) {
        v.truth = false;
      } else {
        const int k = static_cast<int>(decl->categories.size());
        v.truth = id.at_least ? k >= id.count : k == id.count;
      }
      v.provenance = Provenance::structural;
      return v;
    }
    case AtomKind::normality:
    case AtomKind::equal_variance:
      return data_property(id);
  }
  throw Error(Errc::internal, "unhandled atom kind");
}

PropertyValue Evaluator::data_property(const PropertyId& id) {
  PropertyValue v;
  const double alpha = vs_.spec.assumptions.alpha;

  // Only a continuous variable can be normally distributed; this holds
  // regardless of assumptions or data.
  if (id.kind == AtomKind::normality) {
    const auto* decl = vs_.spec.find_variable(id.variables.at(0));
    if (decl == nullptr || !spec::is_continuous(decl->dtype)) {
      v.truth = false;
      v.provenance = Provenance::structural;
      v.note = "non-continuous variable cannot be normal";
      return v;
    }
  }

  const auto claimed = claimed_truth(id);

  // Run the verifying check; a claim survives check failure.
  std::optional<CheckResult> check;
  std::string check_error;
  try {
    if (id.kind == AtomKind::normality) {
      if (id.grouped && id.variables.size() == 2) {
        const auto groups =
            data::group_samples(ds_, id.variables[0], id.variables[1]);
        CheckResult worst{1.0, 1.0};
        for (const auto& g : groups.samples) {
          ++checks_run_;
          const auto r = shapiro_wilk(g);
          if (r.p_value < worst.p_value) worst = r;
        }
        check = worst;  // all groups must pass; keep the strongest evidence
      } else {
        std::vector<double> sample;
        for (std::size_t r = 0; r < ds_.row_count(); ++r) {
          if (const auto val = ds_.coded(id.variables[0], r)) {
            sample.push_back(*val);
          }
        }
        ++checks_run_;
        check = shapiro_wilk(sample);
      }
    } else {
      const auto groups =
          data::group_samples(ds_, id.variables.at(0), id.variables.at(1));
      ++checks_run_;
      check = levene_test(groups.samples, levene_center_);
    }
  } catch (const Error& e) {
    check_error = e.formatted();
  }

  if (claimed.has_value()) {
    v.truth = *claimed;
    v.provenance = Provenance::assumed;
    v.evidence = check;
    if (check && (check->p_value > alpha) != *claimed) {
      v.conflict = true;
      v.note = "assumed " + std::string(*claimed ? "true" : "false") +
               " but the computed check disagrees (p = " +
               std::to_string(check->p_value) + ")";
    }
    return v;
  }

  if (!check) {
    throw Error(Errc::insufficient_data,
                id.describe() + " could not be checked: " + check_error);
  }
  v.truth = check->p_value > alpha;
  v.provenance = Provenance::computed;
  v.evidence = check;
  return v;
}

std::vector<AssumptionConflict> reconcile_assumptions(
    const std::map<std::string, PropertyValue>& cache) {
  std::vector<AssumptionConflict> out;
  for (const auto& [key, value] : cache) {
    if (value.provenance == Provenance::assumed && value.conflict &&
        value.evidence) {
      AssumptionConflict c;
      c.property = key;
      c.assumed_truth = value.truth;
      c.evidence = *value.evidence;
      c.message = value.note;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace statsel::props
