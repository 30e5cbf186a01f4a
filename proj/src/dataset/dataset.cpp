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

#include "dataset/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace statsel::data {

namespace {

// RFC 4180-ish field splitting: quoted fields, doubled quotes, CRLF.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      // tolerate CRLF
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

bool is_null_cell(const std::string& s) { return s.empty() || s == "NA"; }

std::optional<double> parse_cell_number(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

const Column& Dataset::column(const std::string& name) const {
  const auto it = columns_.find(name);
  if (it == columns_.end()) {
    throw Error(Errc::missing_column, name);
  }
  return it->second;
}

const spec::VariableDecl& Dataset::decl(const std::string& name) const {
  const auto it = decls_.find(name);
  if (it == decls_.end()) {
    throw Error(Errc::unknown_variable, name);
  }
  return it->second;
}

std::optional<double> Dataset::coded(const std::string& name,
                                     std::size_t row) const {
  const auto& col = column(name);
  const auto& d = decl(name);
  if (spec::is_continuous(d.dtype)) return col.numeric[row];
  const auto cat = col.category[row];
  if (!cat) return std::nullopt;
  if (d.dtype == spec::DType::ordinal) return static_cast<double>(*cat + 1);
  if (d.categories.size() == 2) return static_cast<double>(*cat);
  throw Error(Errc::type_mismatch,
              "nominal variable '" + name + "' with " +
                  std::to_string(d.categories.size()) +
                  " categories has no numeric coding");
}

Dataset Dataset::from_csv_text(std::string_view text,
                               const spec::ValidatedSpec& vs) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::invalid_spec, "CSV is empty (no header row)");
  }
  const auto headers = split_csv_line(line);

  std::map<std::string, std::size_t> header_index;
  for (std::size_t i = 0; i < headers.size(); ++i) header_index[headers[i]] = i;

  Dataset ds;
  for (const auto& v : vs.spec.variables) {
    if (!header_index.contains(v.name)) {
      throw Error(Errc::missing_column, v.name);
    }
    ds.decls_[v.name] = v;
    ds.columns_[v.name].dtype = v.dtype;
  }
  const auto& key = vs.spec.design.key;
  if (key && !header_index.contains(*key)) {
    throw Error(Errc::missing_column, *key);
  }

  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++row;
    const auto fields = split_csv_line(line);
    if (fields.size() != headers.size()) {
      throw Error(Errc::type_mismatch,
                  "row " + std::to_string(row) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(headers.size()));
    }
    for (const auto& v : vs.spec.variables) {
      const std::string& cell = fields[header_index[v.name]];
      auto& col = ds.columns_[v.name];
      if (is_null_cell(cell)) {
        if (spec::is_continuous(v.dtype)) col.numeric.push_back(std::nullopt);
        else col.category.push_back(std::nullopt);
        continue;
      }
      if (spec::is_continuous(v.dtype)) {
        const auto num = parse_cell_number(cell);
        if (!num) {
          throw Error(Errc::type_mismatch,
                      "row " + std::to_string(row) + ", column " + v.name +
                          ": '" + cell + "' is not numeric");
        }
        if (v.range && (*num < v.range->first || *num > v.range->second)) {
          throw Error(Errc::range_violation,
                      "row " + std::to_string(row) + ", column " + v.name +
                          ": " + cell + " outside declared range");
        }
        col.numeric.push_back(num);
      } else {
        const auto it =
            std::find(v.categories.begin(), v.categories.end(), cell);
        if (it == v.categories.end()) {
          throw Error(Errc::category_violation,
                      "row " + std::to_string(row) + ", column " + v.name +
                          ": '" + cell + "' is not a declared category");
        }
        col.category.push_back(
            static_cast<int>(std::distance(v.categories.begin(), it)));
      }
    }
    if (key) {
      const std::string& cell = fields[header_index[*key]];
      ds.key_values_.push_back(is_null_cell(cell)
                                   ? std::optional<std::string>{}
                                   : std::optional<std::string>{cell});
    }
  }
  ds.rows_ = row;
  return ds;
}

Dataset Dataset::load_csv(const std::string& path,
                          const spec::ValidatedSpec& vs) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open data file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_csv_text(buf.str(), vs);
}

SampleGroups group_samples(const Dataset& ds, const std::string& outcome,
                           const std::string& factor) {
  const auto& fdecl = ds.decl(factor);
  if (!spec::is_categorical(fdecl.dtype)) {
    throw Error(Errc::type_mismatch,
                "grouping variable '" + factor + "' must be nominal or ordinal");
  }
  const auto& fcol = ds.column(factor);

  SampleGroups out;
  out.labels = fdecl.categories;
  out.samples.assign(fdecl.categories.size(), {});
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    const auto cat = fcol.category[r];
    const auto val = ds.coded(outcome, r);
    if (!cat || !val) {
      ++out.dropped_nulls;
      continue;
    }
    out.samples[static_cast<std::size_t>(*cat)].push_back(*val);
  }
  for (std::size_t g = 0; g < out.samples.size(); ++g) {
    if (out.samples[g].empty()) {
      throw Error(Errc::empty_group, out.labels[g]);
    }
  }
  return out;
}

PairedSamples pair_samples(const Dataset& ds, const std::string& outcome,
                           const std::string& condition) {
  if (!ds.has_key()) {
    throw Error(Errc::within_without_key,
                "pairing requires a relational key column");
  }
  const auto& cdecl = ds.decl(condition);
  const auto& ccol = ds.column(condition);
  const std::size_t k = cdecl.categories.size();

  std::map<std::string, std::vector<std::optional<double>>> cells;
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    const auto& unit = ds.key_values()[r];
    const auto cond = ccol.category[r];
    const auto val = ds.coded(outcome, r);
    if (!unit || !cond || !val) continue;
    auto& row = cells[*unit];
    row.resize(k);
    auto& cell = row[static_cast<std::size_t>(*cond)];
    if (cell) {
      throw Error(Errc::duplicate_cell,
                  "unit '" + *unit + "' has two values for condition '" +
                      cdecl.categories[*cond] + "'");
    }
    cell = val;
  }

  PairedSamples out;
  out.conditions = cdecl.categories;
  for (const auto& [unit, row] : cells) {  // std::map iterates sorted by key
    const bool complete =
        row.size() == k &&
        std::all_of(row.begin(), row.end(), [](const auto& c) { return c.has_value(); });
    if (!complete) {
      ++out.excluded_units;
      continue;
    }
    out.units.push_back(unit);
    std::vector<double> vals(k);
    for (std::size_t j = 0; j < k; ++j) vals[j] = *row[j];
    out.values.push_back(std::move(vals));
  }
  if (out.units.empty()) {
    throw Error(Errc::no_complete_units,
                "no unit was observed under every condition");
  }
  return out;
}

PairedColumns paired_columns(const Dataset& ds, const std::string& a,
                             const std::string& b) {
  PairedColumns out;
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    const auto va = ds.coded(a, r);
    const auto vb = ds.coded(b, r);
    if (!va || !vb) {
      ++out.dropped_nulls;
      continue;
    }
    out.first.push_back(*va);
    out.second.push_back(*vb);
  }
  return out;
}

std::vector<std::vector<double>> contingency_table(const Dataset& ds,
                                                   const std::string& a,
                                                   const std::string& b) {
  const auto& da = ds.decl(a);
  const auto& db = ds.decl(b);
  if (!spec::is_categorical(da.dtype) || !spec::is_categorical(db.dtype)) {
    throw Error(Errc::type_mismatch,
                "contingency tables need two categorical variables");
  }
  const auto& ca = ds.column(a);
  const auto& cb = ds.column(b);
  std::vector<std::vector<double>> table(
      da.categories.size(), std::vector<double>(db.categories.size(), 0.0));
  for (std::size_t r = 0; r < ds.row_count(); ++r) {
    const auto ia = ca.category[r];
    const auto ib = cb.category[r];
    if (!ia || !ib) continue;
    table[static_cast<std::size_t>(*ia)][static_cast<std::size_t>(*ib)] += 1.0;
  }
  return table;
}

}  // namespace statsel::data
