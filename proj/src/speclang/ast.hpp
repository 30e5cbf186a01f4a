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

#ifndef STATSEL_SPECLANG_AST_HPP
#define STATSEL_SPECLANG_AST_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace statsel::spec {

enum class DType { nominal, ordinal, interval, ratio };

const char* dtype_name(DType t);
std::optional<DType> dtype_from(std::string_view s);

inline bool is_continuous(DType t) {
  return t == DType::interval || t == DType::ratio;
}
inline bool is_categorical(DType t) {
  return t == DType::nominal || t == DType::ordinal;
}

struct VariableDecl {
  std::string name;
  DType dtype;
  std::vector<std::string> categories;          // nominal/ordinal only
  std::optional<std::pair<double, double>> range;  // interval/ratio only

  bool operator==(const VariableDecl&) const = default;
};

enum class StudyType { observational, experiment };

struct StudyDesignDecl {
  StudyType study_type = StudyType::observational;
  std::vector<std::string> independent;  // "contributor" in observational studies
  std::vector<std::string> dependent;    // "outcome"
  std::optional<std::string> key;
  std::vector<std::string> within_subjects;

  bool operator==(const StudyDesignDecl&) const = default;
};

enum class ClaimKind { normality, equal_variance };

struct AssumptionClaim {
  ClaimKind property;
  std::string variable;
  std::optional<std::string> group_by;  // "normal = X by G" vs "normal = X"
  bool truth = true;

  bool operator==(const AssumptionClaim&) const = default;
};

struct AssumptionSet {
  double alpha = 0.05;
  std::vector<AssumptionClaim> claims;

  bool operator==(const AssumptionSet&) const = default;
};

enum class Relation { greater, less, not_equal };
enum class Sign { positive, negative, nonzero };

struct GroupComparison {
  std::string dependent;
  std::string independent;
  std::string left;
  std::string right;
  Relation relation;

  bool operator==(const GroupComparison&) const = default;
};

struct LinearRelationship {
  std::string first;
  std::string second;
  Sign sign;

  bool operator==(const LinearRelationship&) const = default;
};

struct HypothesisDecl {
  std::variant<GroupComparison, LinearRelationship> form;

  bool is_comparison() const {
    return std::holds_alternative<GroupComparison>(form);
  }
  bool operator==(const HypothesisDecl&) const = default;
};

struct AnalysisSpec {
  std::string data_path;
  std::vector<VariableDecl> variables;
  StudyDesignDecl design;
  AssumptionSet assumptions;
  HypothesisDecl hypothesis;

  const VariableDecl* find_variable(std::string_view name) const;

  bool operator==(const AnalysisSpec&) const = default;
};

enum class Role { contributor, outcome, covariate };

const char* role_name(Role r);

// A spec whose cross-references all checked out, with resolved roles.
struct ValidatedSpec {
  AnalysisSpec spec;
  std::map<std::string, Role> roles;
  std::vector<std::string> warnings;  // e.g. declared-but-unused covariates

  const AnalysisSpec* operator->() const { return &spec; }
};

// -- parsing / validation / serialization -------------------------------------

// Text form (see the format reference in the repo docs).
AnalysisSpec parse_spec(std::string_view text);
// Equivalent JSON encoding.
AnalysisSpec parse_spec_json(std::string_view text);
// Dispatches on extension: ".json" selects the JSON reader.
AnalysisSpec parse_spec_file(const std::string& path);

// Parses a hypothesis expression ("G:a > G:b" or "x ~ +y") against the
// declared variables. The dependent variable of a comparison is resolved
// later, from the design, during validation.
HypothesisDecl parse_hypothesis(std::string_view expr,
                                const std::vector<VariableDecl>& variables);

ValidatedSpec validate_spec(AnalysisSpec spec);

std::string to_text(const AnalysisSpec& s);
std::string to_json(const AnalysisSpec& s);
std::string hypothesis_text(const HypothesisDecl& h);

}  // namespace statsel::spec

#endif  // STATSEL_SPECLANG_AST_HPP
