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

#include <sstream>

#include "speclang/ast.hpp"

namespace statsel::spec {

namespace {

bool needs_quotes(const std::string& s) {
  if (s.empty()) return true;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '#' ||
        c == '"' || c == '(' || c == ')' || c == '[' || c == ']' || c == '=') {
      return true;
    }
  }
  return false;
}

std::string quoted_if_needed(const std::string& s) {
  return needs_quotes(s) ? '"' + s + '"' : s;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += quoted_if_needed(items[i]);
  }
  return out;
}

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string hypothesis_text(const HypothesisDecl& h) {
  if (const auto* cmp = std::get_if<GroupComparison>(&h.form)) {
    const char* op = cmp->relation == Relation::greater  ? ">"
                     : cmp->relation == Relation::less   ? "<"
                                                         : "!=";
    return cmp->independent + ":" + quoted_if_needed(cmp->left) + " " + op + " " +
           cmp->independent + ":" + quoted_if_needed(cmp->right);
  }
  const auto& rel = std::get<LinearRelationship>(h.form);
  const char* sign = rel.sign == Sign::positive   ? "+"
                     : rel.sign == Sign::negative ? "-"
                                                  : "";
  return rel.first + " ~ " + sign + rel.second;
}

std::string to_text(const AnalysisSpec& s) {
  std::ostringstream out;
  out << "[data]\n";
  out << "path = " << quoted_if_needed(s.data_path) << "\n\n";

  out << "[variables]\n";
  for (const auto& v : s.variables) {
    out << v.name << " = " << dtype_name(v.dtype);
    if (is_categorical(v.dtype)) {
      out << "(" << join(v.categories) << ")";
    } else if (v.range) {
      out << "[" << number(v.range->first) << ", " << number(v.range->second)
          << "]";
    }
    out << "\n";
  }
  out << "\n[design]\n";
  out << "study_type = "
      << (s.design.study_type == StudyType::observational ? "observational"
                                                          : "experiment")
      << "\n";
  out << "independent = " << join(s.design.independent) << "\n";
  out << "dependent = " << join(s.design.dependent) << "\n";
  if (s.design.key) out << "key = " << quoted_if_needed(*s.design.key) << "\n";
  if (!s.design.within_subjects.empty()) {
    out << "within_subjects = " << join(s.design.within_subjects) << "\n";
  }

  out << "\n[assumptions]\n";
  out << "alpha = " << number(s.assumptions.alpha) << "\n";
  for (const auto& c : s.assumptions.claims) {
    out << (c.property == ClaimKind::normality ? "normal" : "equal_variance")
        << " = ";
    if (!c.truth) out << "not ";
    out << quoted_if_needed(c.variable);
    if (c.group_by) out << " by " << quoted_if_needed(*c.group_by);
    out << "\n";
  }

  out << "\n[hypothesis]\n";
  out << "test = " << hypothesis_text(s.hypothesis) << "\n";
  return out.str();
}

}  // namespace statsel::spec
