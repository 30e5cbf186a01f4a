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
#include <doctest.h>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "solver/solver.hpp"

using namespace statsel;
using namespace statsel::solver;

namespace {

// Oracle with a fixed truth assignment per atom key; counts evaluations.
class FixedOracle final : public props::PropertyOracle {
 public:
  explicit FixedOracle(std::map<std::string, bool> truths)
      : truths_(std::move(truths)) {}

  props::PropertyValue evaluate(const props::PropertyId& id) override {
    ++evaluations_;
    props::PropertyValue v;
    const auto it = truths_.find(id.key());
    v.truth = it != truths_.end() && it->second;
    v.provenance = props::Provenance::structural;
    return v;
  }

  int evaluations() const { return evaluations_; }

 private:
  std::map<std::string, bool> truths_;
  int evaluations_ = 0;
};

props::PropertyId abstract_atom(int index) {
  // distinct group_count atoms stand in for an abstract vocabulary
  props::PropertyId p;
  p.kind = props::AtomKind::group_count;
  p.count = index + 2;
  p.at_least = true;
  p.variables = {"x" + std::to_string(index)};
  return p;
}

const std::map<std::string, std::string> kNoRoles;

}  // namespace

TEST_CASE("knowledge base: shape and spot checks") {
  const auto& kb = knowledge_base();
  const auto find = [&](const std::string& id) -> const TestRequirement& {
    const auto it = std::find_if(kb.begin(), kb.end(),
                                 [&](const auto& t) { return t.id == id; });
    REQUIRE(it != kb.end());
    return *it;
  };

  // Student's t carries the full six-condition conjunction (codes 2,4,5,6,7,8)
  const auto& st = find("students_t");
  std::multiset<int> codes;
  for (const auto& a : st.conjunction) codes.insert(a.footnote_code());
  CHECK(codes == std::multiset<int>{2, 4, 4, 5, 6, 7, 8});

  // Welch drops equal variance
  const auto& welch = find("welch_t");
  std::multiset<int> wcodes;
  for (const auto& a : welch.conjunction) wcodes.insert(a.footnote_code());
  CHECK(wcodes == std::multiset<int>{2, 4, 4, 5, 7, 8});

  // Mann-Whitney needs only 2,4,7,8
  const auto& mw = find("mann_whitney");
  std::multiset<int> mcodes;
  for (const auto& a : mw.conjunction) mcodes.insert(a.footnote_code());
  CHECK(mcodes == std::multiset<int>{2, 4, 4, 7, 8});

  // Kendall/Spearman need only 2 and 4
  for (const char* id : {"kendall_tau", "spearman_rho"}) {
    std::multiset<int> c;
    for (const auto& a : find(id).conjunction) c.insert(a.footnote_code());
    CHECK(c == std::multiset<int>{2, 4, 4});
  }

  // the bootstrap has the empty conjunction
  CHECK(find("bootstrap").conjunction.empty());
  // every other test has a nonempty conjunction over the closed vocabulary
  for (const auto& t : kb) {
    if (t.id != "bootstrap") CHECK(!t.conjunction.empty());
  }
  // the factorial pair shares one implementation but is registered twice
  CHECK(find("factorial_anova").conjunction.size() ==
        find("two_way_anova").conjunction.size());

  CHECK(knowledge_base_json().find("students_t") != std::string::npos);
}

TEST_CASE("select_tests: conjunction semantics against brute force") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    // random rule subset over <= 12 abstract atoms
    const int atom_count = 4 + static_cast<int>(rng() % 9);  // 4..12
    std::vector<props::PropertyId> atoms;
    for (int i = 0; i < atom_count; ++i) atoms.push_back(abstract_atom(i));

    std::vector<TestRequirement> kb;
    const int rule_count = 3 + static_cast<int>(rng() % 8);
    for (int r = 0; r < rule_count; ++r) {
      TestRequirement t;
      t.id = "rule" + std::to_string(r);
      t.display_name = t.id;
      t.family = Family::parametric;
      t.power_rank = r;
      t.for_comparison = true;
      const int arity = static_cast<int>(rng() % (atom_count + 1));
      std::vector<int> pick(atom_count);
      std::iota(pick.begin(), pick.end(), 0);
      std::shuffle(pick.begin(), pick.end(), rng);
      for (int k = 0; k < arity; ++k) t.conjunction.push_back(atoms[pick[k]]);
      kb.push_back(std::move(t));
    }

    // full sweep over every truth assignment
    for (std::uint64_t mask = 0; mask < (1ULL << atom_count); ++mask) {
      std::map<std::string, bool> truths;
      for (int i = 0; i < atom_count; ++i) {
        truths[atoms[i].key()] = (mask >> i) & 1;
      }
      FixedOracle oracle(truths);
      const auto outcome = select_tests(kb, HypothesisShape::group_comparison,
                                        kNoRoles, oracle);

      std::set<std::string> got;
      for (const auto& d : outcome.valid) got.insert(d.test->id);

      std::set<std::string> want;
      for (const auto& t : kb) {
        bool all = true;
        for (const auto& a : t.conjunction) {
          if (!truths[a.key()]) {
            all = false;
            break;
          }
        }
        if (all) want.insert(t.id);
      }
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("select_tests: valid and invalid partition the knowledge base") {
  FixedOracle all_false({});
  const auto outcome = select_tests(knowledge_base(),
                                    HypothesisShape::group_comparison, kNoRoles,
                                    all_false);
  CHECK(outcome.valid.size() + outcome.invalid.size() == knowledge_base().size());
  // with every atom false, only the bootstrap's empty conjunction survives
  REQUIRE(outcome.valid.size() == 1);
  CHECK(outcome.valid[0].test->id == "bootstrap");
  CHECK(outcome.fallback);
  const auto exec = outcome.to_execute();
  REQUIRE(exec.size() == 1);
  CHECK(exec[0]->id == "bootstrap");
}

TEST_CASE("select_tests: short-circuit laziness and shared memoization") {
  // all atoms false: each test evaluates exactly its first atom, and shared
  // first atoms are served by the oracle's own memoization (here: counted).
  std::vector<TestRequirement> kb;
  for (int r = 0; r < 4; ++r) {
    TestRequirement t;
    t.id = "rule" + std::to_string(r);
    t.display_name = t.id;
    t.family = Family::parametric;
    t.power_rank = r;
    t.for_comparison = true;
    t.conjunction = {abstract_atom(0), abstract_atom(1), abstract_atom(2)};
    kb.push_back(std::move(t));
  }
  FixedOracle oracle({});
  select_tests(kb, HypothesisShape::group_comparison, kNoRoles, oracle);
  // 4 rules x 1 first atom; nothing past the first false atom is evaluated
  CHECK(oracle.evaluations() == 4);
}

TEST_CASE("select_tests: monotone in atom truth") {
  std::mt19937_64 rng(2024);
  const int atom_count = 8;
  std::vector<props::PropertyId> atoms;
  for (int i = 0; i < atom_count; ++i) atoms.push_back(abstract_atom(i));
  std::vector<TestRequirement> kb;
  for (int r = 0; r < 6; ++r) {
    TestRequirement t;
    t.id = "rule" + std::to_string(r);
    t.display_name = t.id;
    t.family = Family::parametric;
    t.power_rank = r;
    t.for_comparison = true;
    for (int i = 0; i < atom_count; ++i) {
      if (rng() % 2) t.conjunction.push_back(atoms[i]);
    }
    kb.push_back(std::move(t));
  }
  for (int rep = 0; rep < 200; ++rep) {
    std::map<std::string, bool> truths;
    for (const auto& a : atoms) truths[a.key()] = rng() % 2;
    FixedOracle base(truths);
    const auto before =
        select_tests(kb, HypothesisShape::group_comparison, kNoRoles, base);
    // flip one atom to true
    auto flipped = truths;
    flipped[atoms[rng() % atom_count].key()] = true;
    FixedOracle after_oracle(flipped);
    const auto after = select_tests(kb, HypothesisShape::group_comparison,
                                    kNoRoles, after_oracle);
    std::set<std::string> b, a;
    for (const auto& d : before.valid) b.insert(d.test->id);
    for (const auto& d : after.valid) a.insert(d.test->id);
    CHECK(std::includes(a.begin(), a.end(), b.begin(), b.end()));
  }
}

TEST_CASE("select_tests: shape filter and evidence completeness") {
  std::map<std::string, bool> all_true;
  for (const auto& t : knowledge_base()) {
    for (const auto& a : t.conjunction) all_true[a.key()] = true;
  }
  FixedOracle oracle(all_true);
  const auto outcome = select_tests(knowledge_base(),
                                    HypothesisShape::linear_relationship,
                                    kNoRoles, oracle);
  for (const auto& d : outcome.valid) {
    CHECK(d.test->for_relationship);
    // every valid test carries a value per atom
    CHECK(d.evidence.size() == d.test->conjunction.size());
  }
  for (const auto& d : outcome.invalid) {
    if (!d.test->for_relationship) {
      CHECK(d.exclusion == ExclusionKind::shape_mismatch);
    }
  }
}
