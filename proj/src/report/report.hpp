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

#ifndef STATSEL_REPORT_REPORT_HPP
#define STATSEL_REPORT_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "properties/properties.hpp"
#include "solver/solver.hpp"
#include "stats/tests.hpp"

namespace statsel::report {

// Step-down Holm adjustment; the returned list matches the input order.
std::vector<double> holm_adjust(const std::vector<double>& p_values);

struct ExecutedTest {
  std::string id;
  std::string name;
  solver::Family family;
  int power_rank = 0;
  stats::TestOutcome outcome;
  bool has_p = true;  // bootstrap carries intervals, not a p-value
  std::optional<double> p_adjusted;
};

// Stable order: family (parametric, nonparametric, proportion, resampling),
// then knowledge-base power rank, then the identifier.
void rank_by_power(std::vector<ExecutedTest>& results);

struct ExecutionFailure {
  std::string id;
  std::string name;
  std::string message;
};

struct AnalysisReport {
  std::string version;
  std::uint64_t seed = 0;
  std::size_t resamples = 0;
  double alpha = 0.05;
  std::string hypothesis;
  std::string sidedness;  // two-sided | one-sided (direction in hypothesis)
  std::vector<std::string> assumption_echo;
  solver::SelectionOutcome selection;
  std::vector<ExecutedTest> results;
  std::optional<stats::BootstrapOutcome> bootstrap;
  std::vector<props::AssumptionConflict> conflicts;
  std::vector<std::string> notes;  // missing-data counts, exclusions, warnings
  bool fallback = false;
};

std::string render_text(const AnalysisReport& r);
std::string render_json(const AnalysisReport& r);

}  // namespace statsel::report

#endif  // STATSEL_REPORT_REPORT_HPP
