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

#ifndef STATSEL_DATASET_DATASET_HPP
#define STATSEL_DATASET_DATASET_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "speclang/ast.hpp"

namespace statsel::data {

// One declared variable's cells. Numeric dtypes fill `numeric`; categorical
// dtypes fill `category` with indexes into the declaration's category list.
// nullopt is a missing value (empty cell or the literal NA).
struct Column {
  spec::DType dtype;
  std::vector<std::optional<double>> numeric;
  std::vector<std::optional<int>> category;
};

// The loaded long-format table: one in-memory copy, immutable after load.
// Only declared variables (and the relational key) are materialized.
class Dataset {
 public:
  static Dataset load_csv(const std::string& path, const spec::ValidatedSpec& vs);
  static Dataset from_csv_text(std::string_view text,
                               const spec::ValidatedSpec& vs);

  std::size_t row_count() const { return rows_; }
  const Column& column(const std::string& name) const;
  bool has_key() const { return !key_values_.empty(); }
  const std::vector<std::optional<std::string>>& key_values() const {
    return key_values_;
  }
  const spec::VariableDecl& decl(const std::string& name) const;

  // Numeric coding of a variable: value for interval/ratio, declared rank
  // (1..k) for ordinal, 0/1 for dichotomous nominal.
  std::optional<double> coded(const std::string& name, std::size_t row) const;

 private:
  std::size_t rows_ = 0;
  std::map<std::string, Column> columns_;
  std::map<std::string, spec::VariableDecl> decls_;
  std::vector<std::optional<std::string>> key_values_;
};

// Per-category outcome samples, in declared category order.
struct SampleGroups {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> samples;
  std::size_t dropped_nulls = 0;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& s : samples) n += s.size();
    return n;
  }
};

SampleGroups group_samples(const Dataset& ds, const std::string& outcome,
                           const std::string& factor);

// Complete-case units-by-conditions matrix for within-subjects analyses.
struct PairedSamples {
  std::vector<std::string> units;        // sorted by key
  std::vector<std::string> conditions;   // declared order
  std::vector<std::vector<double>> values;  // units x conditions
  std::size_t excluded_units = 0;
};

PairedSamples pair_samples(const Dataset& ds, const std::string& outcome,
                           const std::string& condition);

// Row-aligned numeric coding of two variables, rows with any null dropped.
struct PairedColumns {
  std::vector<double> first;
  std::vector<double> second;
  std::size_t dropped_nulls = 0;
};

PairedColumns paired_columns(const Dataset& ds, const std::string& a,
                             const std::string& b);

// r x c contingency table of two categorical variables (declared orders).
std::vector<std::vector<double>> contingency_table(const Dataset& ds,
                                                   const std::string& a,
                                                   const std::string& b);

}  // namespace statsel::data

#endif  // STATSEL_DATASET_DATASET_HPP
