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

#ifndef STATSEL_PROPERTIES_PROPERTIES_HPP
#define STATSEL_PROPERTIES_PROPERTIES_HPP

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dataset/dataset.hpp"
#include "properties/checks.hpp"
#include "speclang/ast.hpp"

namespace statsel::props {

// The precondition atoms a test requirement can mention. The vocabulary is
// closed over what the knowledge base needs.
enum class AtomKind {
  variable_count,   // number of analysis variables (=n or >=n)
  dtype,            // a variable's scale matches the test's requirement
  normality,        // Shapiro-Wilk at level alpha (or an assumption)
  equal_variance,   // Levene at level alpha (or an assumption)
  independence,     // observations independent vs. repeated per unit
  group_count,      // number of factor categories (=n or >=n)
};

// Scale classes for the dtype atom. `ordinal` admits anything orderable
// (ordinal, interval, ratio); `continuous` means interval or ratio;
// `dichotomous` means categorical with exactly two categories.
enum class DTypeClass { continuous, categorical, ordinal, dichotomous };

// Role placeholders used by knowledge-base templates; bind() resolves them
// to concrete variable names before evaluation.
inline constexpr const char* kRoleOutcome = "@outcome";
inline constexpr const char* kRoleFactor = "@factor";

struct PropertyId {
  AtomKind kind;
  int count = 0;            // variable_count / group_count target
  bool at_least = false;    // "=n" vs ">=n"
  DTypeClass dclass = DTypeClass::continuous;
  bool grouped = false;     // normality: within factor levels vs marginal
  bool require_dependent = false;  // independence: within-subjects expected
  std::vector<std::string> variables;  // role placeholders or resolved names

  std::string key() const;       // canonical cache key
  std::string describe() const;  // short human-readable label
  // Paper-style footnote code (1..9) for report rendering.
  int footnote_code() const;
};

PropertyId bind(const PropertyId& templ,
                const std::map<std::string, std::string>& roles);

enum class Provenance { assumed, computed, structural };

const char* provenance_name(Provenance p);

struct PropertyValue {
  bool truth = false;
  Provenance provenance = Provenance::structural;
  // Statistic evidence for computed checks; also filled for assumed values
  // when the verifying check could run.
  std::optional<CheckResult> evidence;
  // Set when an assumed value disagrees with the verifying check.
  bool conflict = false;
  std::string note;
};

// Anything that can answer atoms; the solver depends only on this.
class PropertyOracle {
 public:
  virtual ~PropertyOracle() = default;
  virtual PropertyValue evaluate(const PropertyId& id) = 0;
};

// The real evaluator: structural atoms from declarations and design,
// statistical atoms via Shapiro-Wilk / Levene at level alpha, user
// assumptions taking precedence (verified, with a conflict note, when the
// data allows). Results are memoized; each underlying check runs once.
class Evaluator final : public PropertyOracle {
 public:
  Evaluator(const spec::ValidatedSpec& vs, const data::Dataset& ds,
            LeveneCenter levene_center = LeveneCenter::mean);

  PropertyValue evaluate(const PropertyId& id) override;

  std::map<std::string, PropertyValue> snapshot() const;
  std::size_t checks_run() const { return checks_run_; }

 private:
  PropertyValue compute(const PropertyId& id);
  PropertyValue data_property(const PropertyId& id);
  std::optional<bool> claimed_truth(const PropertyId& id) const;

  const spec::ValidatedSpec& vs_;
  const data::Dataset& ds_;
  LeveneCenter levene_center_;
  mutable std::mutex mu_;
  std::map<std::string, PropertyValue> cache_;
  std::size_t checks_run_ = 0;
};

struct AssumptionConflict {
  std::string property;   // describe() of the atom
  bool assumed_truth;
  CheckResult evidence;   // the disagreeing computed check
  std::string message;
};

// One warning per property whose assumed value contradicts a check that ran.
std::vector<AssumptionConflict> reconcile_assumptions(
    const std::map<std::string, PropertyValue>& cache);

}  // namespace statsel::props

#endif  // STATSEL_PROPERTIES_PROPERTIES_HPP
