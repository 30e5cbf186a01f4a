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
#include "solver/solver.hpp"

namespace statsel::solver {

SelectionOutcome select_tests(const std::vector<TestRequirement>& kb,
                              HypothesisShape shape,
                              const std::map<std::string, std::string>& roles,
                              props::PropertyOracle& oracle) {
  std::vector<const TestRequirement*> ordered;
  ordered.reserve(kb.size());
  for (const auto& t : kb) ordered.push_back(&t);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const TestRequirement* a, const TestRequirement* b) {
                     return a->power_rank < b->power_rank;
                   });

  SelectionOutcome out;
  for (const TestRequirement* test : ordered) {
    TestDecision decision;
    decision.test = test;

    const bool shape_ok = (shape == HypothesisShape::group_comparison)
                              ? test->for_comparison
                              : test->for_relationship;
    if (!shape_ok) {
      decision.exclusion = ExclusionKind::shape_mismatch;
      decision.failure = "hypothesis form does not match this test";
      out.invalid.push_back(std::move(decision));
      continue;
    }

    bool valid = true;
    for (const auto& atom_template : test->conjunction) {
      const props::PropertyId atom = props::bind(atom_template, roles);
      try {
        const props::PropertyValue value = oracle.evaluate(atom);
        decision.evidence.push_back({atom, value});
        if (!value.truth) {
          valid = false;
          decision.exclusion = ExclusionKind::failed_atom;
          decision.failure = atom.describe();
          break;  // short-circuit: later atoms are not computed
        }
      } catch (const Error& e) {
        valid = false;
        decision.exclusion = ExclusionKind::evaluation_error;
        decision.failure = atom.describe() + ": " + e.formatted();
        break;
      }
    }

    decision.valid = valid;
    if (valid) out.valid.push_back(std::move(decision));
    else out.invalid.push_back(std::move(decision));
  }

  out.fallback = std::none_of(out.valid.begin(), out.valid.end(),
                              [](const TestDecision& d) {
                                return d.test->id != "bootstrap";
                              });
  return out;
}

}  // namespace statsel::solver
