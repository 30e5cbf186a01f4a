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

#ifndef STATSEL_ENGINE_HPP
#define STATSEL_ENGINE_HPP

#include <cstdint>
#include <optional>

#include "dataset/dataset.hpp"
#include "report/report.hpp"
#include "speclang/ast.hpp"

namespace statsel {

inline constexpr const char* kVersion = "0.1.0";
// Fixed default so identical inputs reproduce byte-identical reports.
inline constexpr std::uint64_t kDefaultSeed = 1729;

struct RunOptions {
  std::optional<std::uint64_t> seed;  // kDefaultSeed when unset
  bool strict = false;                // callers decide what strict means
  std::size_t resamples = 10000;
  double ci_level = 0.95;
  props::LeveneCenter levene_center = props::LeveneCenter::mean;
};

// Full pipeline on validated inputs: select applicable tests, execute them,
// correct for multiple comparisons, assemble the report.
report::AnalysisReport run_analysis(const spec::ValidatedSpec& vs,
                                    const data::Dataset& ds,
                                    const RunOptions& options = {});

}  // namespace statsel

#endif  // STATSEL_ENGINE_HPP
