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

#ifndef STATSEL_SOLVER_SOLVER_HPP
#define STATSEL_SOLVER_SOLVER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "properties/properties.hpp"

namespace statsel::solver {

enum class Family { parametric, nonparametric, proportion, resampling };

const char* family_name(Family f);

enum class HypothesisShape { group_comparison, linear_relationship };

// A test and the precondition conjunction under which it is applicable.
// Atoms use role placeholders until bound to concrete variables.
struct TestRequirement {
  std::string id;
  std::string display_name;
  Family family;
  int power_rank;  // total order for result listing (lower = listed first)
  std::vector<props::PropertyId> conjunction;  // evaluated left to right
  bool for_comparison = false;
  bool for_relationship = false;
};

// The full rule set. Deterministic order (by power_rank).
const std::vector<TestRequirement>& knowledge_base();

// Machine-readable dump of every rule for audit/documentation.
std::string knowledge_base_json();

struct AtomEvidence {
  props::PropertyId id;
  props::PropertyValue value;
};

// Why a test was excluded.
enum class ExclusionKind { failed_atom, shape_mismatch, evaluation_error };

struct TestDecision {
  const TestRequirement* test;
  bool valid = false;
  std::vector<AtomEvidence> evidence;  // atoms evaluated, in order
  ExclusionKind exclusion = ExclusionKind::failed_atom;
  std::optional<std::string> failure;  // first failing atom / error message
};

struct SelectionOutcome {
  std::vector<TestDecision> valid;    // power-rank order
  std::vector<TestDecision> invalid;  // power-rank order
  bool fallback = false;  // nothing but the bootstrap survived

  // Valid tests the runner actually executes: everything but the bootstrap,
  // or just the bootstrap when it is the only survivor.
  std::vector<const TestRequirement*> to_execute() const;
};

// Lazily evaluates each requirement's conjunction left-to-right with
// short-circuiting; the oracle memoizes shared atoms across tests. Tests
// whose shape does not match the hypothesis are excluded up front.
// Evaluation errors invalidate the test, never the run.
SelectionOutcome select_tests(const std::vector<TestRequirement>& kb,
                              HypothesisShape shape,
                              const std::map<std::string, std::string>& roles,
                              props::PropertyOracle& oracle);

}  // namespace statsel::solver

#endif  // STATSEL_SOLVER_SOLVER_HPP
