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

// Reader for the sectioned key=value study format. One section per program
// part: [data], [variables], [design], [assumptions], [hypothesis].

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "speclang/ast.hpp"

namespace statsel::spec {

const char* dtype_name(DType t) {
  switch (t) {
    case DType::nominal: return "nominal";
    case DType::ordinal: return "ordinal";
    case DType::interval: return "interval";
    case DType::ratio: return "ratio";
  }
  return "?";
}

std::optional<DType> dtype_from(std::string_view s) {
  if (s == "nominal") return DType::nominal;
  if (s == "ordinal") return DType::ordinal;
  if (s == "interval") return DType::interval;
  if (s == "ratio") return DType::ratio;
  return std::nullopt;
}

const char* role_name(Role r) {
  switch (r) {
    case Role::contributor: return "contributor";
    case Role::outcome: return "outcome";
    case Role::covariate: return "covariate";
  }
  return "?";
}

const VariableDecl* AnalysisSpec::find_variable(std::string_view name) const {
  for (const auto& v : variables) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

// Strips an inline comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    else if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

std::string unquote(std::string_view s, int line) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"') {
    if (s.back() != '"') {
      throw Error(Errc::syntax_error, "unterminated string", line);
    }
    return std::string(s.substr(1, s.size() - 2));
  }
  return std::string(s);
}

std::vector<std::string> split_list(std::string_view s, int line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  bool quoted = false;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '"') quoted = !quoted;
    if (i == s.size() || (s[i] == ',' && !quoted)) {
      const auto piece = trim(s.substr(start, i - start));
      if (!piece.empty()) out.push_back(unquote(piece, line));
      start = i + 1;
    }
  }
  return out;
}

double parse_number(std::string_view s, int line) {
  const std::string str(trim(s));
  try {
    std::size_t used = 0;
    const double v = std::stod(str, &used);
    if (used != str.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::syntax_error, "expected a number, got '" + str + "'", line);
  }
}

void ensure_distinct(const std::vector<std::string>& cats, const std::string& var,
                     int line) {
  for (std::size_t i = 0; i < cats.size(); ++i) {
    for (std::size_t j = i + 1; j < cats.size(); ++j) {
      if (cats[i] == cats[j]) {
        throw Error(Errc::invalid_spec,
                    "duplicate category '" + cats[i] + "' for variable " + var,
                    line);
      }
    }
  }
}

// "nominal(a, b)" | "ordinal(a, b, c)" | "interval" | "ratio[lo, hi]" ...
VariableDecl parse_variable(const std::string& name, std::string_view rhs,
                            int line) {
  VariableDecl decl;
  decl.name = name;
  rhs = trim(rhs);

  std::size_t base_end = 0;
  while (base_end < rhs.size() &&
         std::isalpha(static_cast<unsigned char>(rhs[base_end]))) {
    ++base_end;
  }
  const auto base = rhs.substr(0, base_end);
  const auto dtype = dtype_from(base);
  if (!dtype) {
    throw Error(Errc::syntax_error,
                "unknown data type '" + std::string(base) + "' for variable " + name,
                line);
  }
  decl.dtype = *dtype;
  const auto rest = trim(rhs.substr(base_end));

  if (is_categorical(decl.dtype)) {
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
      throw Error(Errc::syntax_error,
                  dtype_name(decl.dtype) + std::string(" variable ") + name +
                      " needs a category list: " + dtype_name(decl.dtype) + "(a, b)",
                  line);
    }
    decl.categories = split_list(rest.substr(1, rest.size() - 2), line);
    if (decl.categories.empty()) {
      throw Error(Errc::syntax_error, "empty category list for " + name, line);
    }
    ensure_distinct(decl.categories, name, line);
  } else {
    if (!rest.empty()) {
      if (rest.front() != '[' || rest.back() != ']') {
        throw Error(Errc::syntax_error,
                    "expected range [lo, hi] after " +
                        std::string(dtype_name(decl.dtype)) + " for " + name,
                    line);
      }
      const auto parts = split_list(rest.substr(1, rest.size() - 2), line);
      if (parts.size() != 2) {
        throw Error(Errc::syntax_error, "range needs exactly two bounds", line);
      }
      const double lo = parse_number(parts[0], line);
      const double hi = parse_number(parts[1], line);
      if (lo > hi) {
        throw Error(Errc::invalid_spec, "range lower bound exceeds upper bound",
                    line);
      }
      decl.range = {lo, hi};
    }
  }
  return decl;
}

struct Entry {
  std::string key;
  std::string value;
  int line;
};

struct Section {
  std::vector<Entry> entries;
  int line = 0;
  bool present = false;
};

// "X by G" / "not X by G"
AssumptionClaim parse_claim(ClaimKind kind, std::string_view rhs, int line) {
  AssumptionClaim claim;
  claim.property = kind;
  auto s = trim(rhs);
  if (s.starts_with("not ")) {
    claim.truth = false;
    s = trim(s.substr(4));
  }
  const auto by = s.find(" by ");
  if (by == std::string_view::npos) {
    claim.variable = unquote(s, line);
  } else {
    claim.variable = unquote(s.substr(0, by), line);
    claim.group_by = unquote(s.substr(by + 4), line);
  }
  if (claim.variable.empty()) {
    throw Error(Errc::syntax_error, "assumption claim names no variable", line);
  }
  return claim;
}

}  // namespace

HypothesisDecl parse_hypothesis(std::string_view expr,
                                const std::vector<VariableDecl>& variables) {
  const auto text = trim(expr);

  const auto find_var = [&](std::string_view name) -> const VariableDecl& {
    for (const auto& v : variables) {
      if (v.name == name) return v;
    }
    throw Error(Errc::unknown_variable,
                "hypothesis references undeclared variable '" + std::string(name) +
                    "'");
  };

  // Relationship form: x ~ +y | x ~ -y | x ~ y
  if (const auto tilde = text.find('~'); tilde != std::string_view::npos) {
    const auto lhs = trim(text.substr(0, tilde));
    auto rhs = trim(text.substr(tilde + 1));
    LinearRelationship rel;
    rel.sign = Sign::nonzero;
    if (!rhs.empty() && (rhs.front() == '+' || rhs.front() == '-')) {
      rel.sign = rhs.front() == '+' ? Sign::positive : Sign::negative;
      rhs = trim(rhs.substr(1));
    }
    if (lhs.empty() || rhs.empty()) {
      throw Error(Errc::unsupported_form, "malformed relationship hypothesis");
    }
    if (rhs.find_first_of("+-~ ") != std::string_view::npos) {
      throw Error(Errc::unsupported_form,
                  "relationships are supported between exactly two variables");
    }
    rel.first = std::string(lhs);
    rel.second = std::string(rhs);
    find_var(rel.first);
    find_var(rel.second);
    if (rel.first == rel.second) {
      throw Error(Errc::unsupported_form,
                  "a relationship needs two distinct variables");
    }
    return HypothesisDecl{rel};
  }

  // Comparison form: VAR:cat OP VAR:cat with OP in {>, <, !=}
  Relation relation;
  std::size_t op_pos = std::string_view::npos, op_len = 1;
  if (const auto p = text.find("!="); p != std::string_view::npos) {
    relation = Relation::not_equal;
    op_pos = p;
    op_len = 2;
  } else if (const auto g = text.find('>'); g != std::string_view::npos) {
    relation = Relation::greater;
    op_pos = g;
  } else if (const auto l = text.find('<'); l != std::string_view::npos) {
    relation = Relation::less;
    op_pos = l;
  } else {
    throw Error(Errc::unsupported_form,
                "hypothesis must be a comparison (G:a > G:b) or a relationship "
                "(x ~ +y)");
  }

  const auto parse_side = [&](std::string_view side) {
    side = trim(side);
    const auto colon = side.find(':');
    if (colon == std::string_view::npos) {
      throw Error(Errc::unsupported_form,
                  "comparison sides must look like VARIABLE:category");
    }
    const std::string var(trim(side.substr(0, colon)));
    const std::string cat = unquote(side.substr(colon + 1), 0);
    return std::pair{var, cat};
  };

  const auto [lvar, lcat] = parse_side(text.substr(0, op_pos));
  const auto [rvar, rcat] = parse_side(text.substr(op_pos + op_len));
  if (lvar != rvar) {
    throw Error(Errc::unsupported_form,
                "group comparisons must compare categories of one variable");
  }
  const VariableDecl& decl = find_var(lvar);
  for (const auto& cat : {lcat, rcat}) {
    if (std::find(decl.categories.begin(), decl.categories.end(), cat) ==
        decl.categories.end()) {
      throw Error(Errc::unknown_category,
                  "variable '" + lvar + "' has no category '" + cat + "'");
    }
  }

  GroupComparison cmp;
  cmp.independent = lvar;
  cmp.left = lcat;
  cmp.right = rcat;
  cmp.relation = relation;
  // cmp.dependent is resolved from the design during validation.
  return HypothesisDecl{cmp};
}

AnalysisSpec parse_spec(std::string_view text) {
  static const std::vector<std::string> kSectionNames = {
      "data", "variables", "design", "assumptions", "hypothesis"};

  std::map<std::string, Section> sections;
  std::string current;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw Error(Errc::syntax_error, "unterminated section header", line_no);
      }
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (std::find(kSectionNames.begin(), kSectionNames.end(), current) ==
          kSectionNames.end()) {
        throw Error(Errc::syntax_error, "unknown section [" + current + "]",
                    line_no);
      }
      if (sections[current].present) {
        throw Error(Errc::syntax_error, "duplicate section [" + current + "]",
                    line_no);
      }
      sections[current].present = true;
      sections[current].line = line_no;
      continue;
    }
    if (current.empty()) {
      throw Error(Errc::syntax_error, "content before any section header",
                  line_no);
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::syntax_error, "expected key = value", line_no);
    }
    Entry e;
    e.key = std::string(trim(line.substr(0, eq)));
    e.value = std::string(trim(line.substr(eq + 1)));
    e.line = line_no;
    if (e.key.empty()) {
      throw Error(Errc::syntax_error, "missing key before '='", line_no);
    }
    sections[current].entries.push_back(std::move(e));
  }

  for (const auto& name : {"variables", "data", "design", "hypothesis"}) {
    if (!sections[name].present) {
      throw Error(Errc::missing_section, std::string(name));
    }
  }

  AnalysisSpec spec;

  // [data]
  for (const auto& e : sections["data"].entries) {
    if (e.key == "path") {
      if (!spec.data_path.empty()) {
        throw Error(Errc::syntax_error, "duplicate key 'path'", e.line);
      }
      spec.data_path = unquote(e.value, e.line);
    } else {
      throw Error(Errc::syntax_error, "unknown key '" + e.key + "' in [data]",
                  e.line);
    }
  }
  if (spec.data_path.empty()) {
    throw Error(Errc::invalid_spec, "[data] must set path",
                sections["data"].line);
  }

  // [variables]
  for (const auto& e : sections["variables"].entries) {
    if (spec.find_variable(e.key) != nullptr) {
      throw Error(Errc::duplicate_variable, e.key, e.line);
    }
    spec.variables.push_back(parse_variable(e.key, e.value, e.line));
  }
  if (spec.variables.empty()) {
    throw Error(Errc::invalid_spec, "[variables] declares no variables",
                sections["variables"].line);
  }

  // [design]
  bool saw_study = false, saw_key = false, saw_within = false;
  bool saw_indep = false, saw_dep = false;
  for (const auto& e : sections["design"].entries) {
    if (e.key == "study_type") {
      if (saw_study) throw Error(Errc::syntax_error, "duplicate study_type", e.line);
      saw_study = true;
      if (e.value == "observational") {
        spec.design.study_type = StudyType::observational;
      } else if (e.value == "experiment") {
        spec.design.study_type = StudyType::experiment;
      } else {
        throw Error(Errc::syntax_error,
                    "study_type must be observational or experiment", e.line);
      }
    } else if (e.key == "independent" || e.key == "contributor") {
      if (saw_indep) {
        throw Error(Errc::syntax_error, "duplicate independent list", e.line);
      }
      saw_indep = true;
      spec.design.independent = split_list(e.value, e.line);
    } else if (e.key == "dependent" || e.key == "outcome") {
      if (saw_dep) {
        throw Error(Errc::syntax_error, "duplicate dependent list", e.line);
      }
      saw_dep = true;
      spec.design.dependent = split_list(e.value, e.line);
    } else if (e.key == "key") {
      if (saw_key) throw Error(Errc::syntax_error, "duplicate key entry", e.line);
      saw_key = true;
      spec.design.key = unquote(e.value, e.line);
    } else if (e.key == "within_subjects") {
      if (saw_within) {
        throw Error(Errc::syntax_error, "duplicate within_subjects", e.line);
      }
      saw_within = true;
      spec.design.within_subjects = split_list(e.value, e.line);
    } else {
      throw Error(Errc::syntax_error, "unknown key '" + e.key + "' in [design]",
                  e.line);
    }
  }
  if (!saw_study) {
    throw Error(Errc::invalid_spec, "[design] must set study_type",
                sections["design"].line);
  }

  // [assumptions] (optional; alpha defaults to 0.05)
  for (const auto& e : sections["assumptions"].entries) {
    if (e.key == "alpha") {
      spec.assumptions.alpha = parse_number(e.value, e.line);
    } else if (e.key == "normal") {
      spec.assumptions.claims.push_back(
          parse_claim(ClaimKind::normality, e.value, e.line));
    } else if (e.key == "equal_variance") {
      auto claim = parse_claim(ClaimKind::equal_variance, e.value, e.line);
      if (!claim.group_by) {
        throw Error(Errc::syntax_error,
                    "equal_variance needs a grouping: equal_variance = X by G",
                    e.line);
      }
      spec.assumptions.claims.push_back(std::move(claim));
    } else {
      throw Error(Errc::syntax_error,
                  "unknown key '" + e.key + "' in [assumptions]", e.line);
    }
  }

  // [hypothesis]
  bool saw_test = false;
  for (const auto& e : sections["hypothesis"].entries) {
    if (e.key != "test") {
      throw Error(Errc::syntax_error,
                  "unknown key '" + e.key + "' in [hypothesis]", e.line);
    }
    if (saw_test) {
      throw Error(Errc::syntax_error, "one hypothesis per analysis", e.line);
    }
    saw_test = true;
    try {
      spec.hypothesis = parse_hypothesis(e.value, spec.variables);
    } catch (const Error& err) {
      throw Error(err.code(), err.what(), e.line);
    }
  }
  if (!saw_test) {
    throw Error(Errc::invalid_spec, "[hypothesis] must set test",
                sections["hypothesis"].line);
  }

  return spec;
}

AnalysisSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open spec file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const bool json = path.size() >= 5 && path.rfind(".json") == path.size() - 5;
  return json ? parse_spec_json(buf.str()) : parse_spec(buf.str());
}

}  // namespace statsel::spec
