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

// JSON encoding of the study format. Field names follow the domain types;
// the reader rejects unknown keys just like the text reader.

#include <json.hpp>

#include "common/error.hpp"
#include "speclang/ast.hpp"

namespace statsel::spec {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const char* where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : allowed) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw Error(Errc::syntax_error,
                  "unknown key '" + key + "' in " + where);
    }
  }
}

std::vector<std::string> string_list(const json& j, const char* where) {
  if (!j.is_array()) {
    throw Error(Errc::syntax_error, std::string(where) + " must be an array");
  }
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(v.get<std::string>());
  return out;
}

}  // namespace

AnalysisSpec parse_spec_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::syntax_error, e.what());
  }

  try {
    reject_unknown(doc, {"data", "variables", "design", "assumptions", "hypothesis"},
                   "document");
    for (const auto& name : {"variables", "data", "design", "hypothesis"}) {
      if (!doc.contains(name)) throw Error(Errc::missing_section, name);
    }

    AnalysisSpec spec;

    const auto& data = doc["data"];
    reject_unknown(data, {"data_path", "path"}, "data");
    if (data.contains("data_path")) spec.data_path = data["data_path"];
    else if (data.contains("path")) spec.data_path = data["path"];
    else throw Error(Errc::invalid_spec, "data section must set data_path");

    for (const auto& v : doc["variables"]) {
      reject_unknown(v, {"name", "dtype", "categories", "range"}, "variable");
      VariableDecl decl;
      decl.name = v.at("name").get<std::string>();
      const auto dt = dtype_from(v.at("dtype").get<std::string>());
      if (!dt) {
        throw Error(Errc::syntax_error,
                    "unknown dtype for variable " + decl.name);
      }
      decl.dtype = *dt;
      if (v.contains("categories")) {
        decl.categories = string_list(v["categories"], "categories");
      }
      if (v.contains("range")) {
        const auto& r = v["range"];
        if (!r.is_array() || r.size() != 2) {
          throw Error(Errc::syntax_error, "range must be [lo, hi]");
        }
        decl.range = {r[0].get<double>(), r[1].get<double>()};
      }
      if (spec.find_variable(decl.name) != nullptr) {
        throw Error(Errc::duplicate_variable, decl.name);
      }
      spec.variables.push_back(std::move(decl));
    }
    if (spec.variables.empty()) {
      throw Error(Errc::invalid_spec, "variables section declares no variables");
    }

    const auto& design = doc["design"];
    reject_unknown(design,
                   {"study_type", "independent", "dependent", "key",
                    "within_subjects"},
                   "design");
    const std::string st = design.at("study_type").get<std::string>();
    if (st == "observational") spec.design.study_type = StudyType::observational;
    else if (st == "experiment") spec.design.study_type = StudyType::experiment;
    else throw Error(Errc::syntax_error, "study_type must be observational or experiment");
    if (design.contains("independent")) {
      spec.design.independent = string_list(design["independent"], "independent");
    }
    if (design.contains("dependent")) {
      spec.design.dependent = string_list(design["dependent"], "dependent");
    }
    if (design.contains("key") && !design["key"].is_null()) {
      spec.design.key = design["key"].get<std::string>();
    }
    if (design.contains("within_subjects")) {
      spec.design.within_subjects =
          string_list(design["within_subjects"], "within_subjects");
    }

    if (doc.contains("assumptions")) {
      const auto& a = doc["assumptions"];
      reject_unknown(a, {"alpha", "claims"}, "assumptions");
      if (a.contains("alpha")) spec.assumptions.alpha = a["alpha"].get<double>();
      if (a.contains("claims")) {
        for (const auto& c : a["claims"]) {
          reject_unknown(c, {"property", "variable", "group_by", "truth"},
                         "claim");
          AssumptionClaim claim;
          const std::string prop = c.at("property").get<std::string>();
          if (prop == "normality") claim.property = ClaimKind::normality;
          else if (prop == "equal_variance") claim.property = ClaimKind::equal_variance;
          else throw Error(Errc::syntax_error, "unknown claim property " + prop);
          claim.variable = c.at("variable").get<std::string>();
          if (c.contains("group_by") && !c["group_by"].is_null()) {
            claim.group_by = c["group_by"].get<std::string>();
          }
          if (c.contains("truth")) claim.truth = c["truth"].get<bool>();
          spec.assumptions.claims.push_back(std::move(claim));
        }
      }
    }

    const auto& h = doc["hypothesis"];
    const std::string form = h.at("form").get<std::string>();
    if (form == "group_comparison") {
      reject_unknown(h, {"form", "dependent", "independent", "left", "right",
                         "relation"},
                     "hypothesis");
      GroupComparison cmp;
      if (h.contains("dependent") && !h["dependent"].is_null()) {
        cmp.dependent = h["dependent"].get<std::string>();
      }
      cmp.independent = h.at("independent").get<std::string>();
      cmp.left = h.at("left").get<std::string>();
      cmp.right = h.at("right").get<std::string>();
      const std::string rel = h.at("relation").get<std::string>();
      if (rel == ">") cmp.relation = Relation::greater;
      else if (rel == "<") cmp.relation = Relation::less;
      else if (rel == "!=") cmp.relation = Relation::not_equal;
      else throw Error(Errc::unsupported_form, "relation must be >, < or !=");
      spec.hypothesis = HypothesisDecl{cmp};
    } else if (form == "linear_relationship") {
      reject_unknown(h, {"form", "first", "second", "sign"}, "hypothesis");
      LinearRelationship rel;
      rel.first = h.at("first").get<std::string>();
      rel.second = h.at("second").get<std::string>();
      const std::string sign = h.at("sign").get<std::string>();
      if (sign == "positive") rel.sign = Sign::positive;
      else if (sign == "negative") rel.sign = Sign::negative;
      else if (sign == "nonzero") rel.sign = Sign::nonzero;
      else throw Error(Errc::unsupported_form, "sign must be positive, negative or nonzero");
      spec.hypothesis = HypothesisDecl{rel};
    } else {
      throw Error(Errc::unsupported_form, "unknown hypothesis form " + form);
    }

    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::syntax_error, e.what());
  }
}

namespace {

json variable_to_json(const VariableDecl& v) {
  json j;
  j["name"] = v.name;
  j["dtype"] = dtype_name(v.dtype);
  if (!v.categories.empty()) j["categories"] = v.categories;
  if (v.range) j["range"] = {v.range->first, v.range->second};
  return j;
}

json hypothesis_to_json(const HypothesisDecl& h) {
  json j;
  if (const auto* cmp = std::get_if<GroupComparison>(&h.form)) {
    j["form"] = "group_comparison";
    if (!cmp->dependent.empty()) j["dependent"] = cmp->dependent;
    j["independent"] = cmp->independent;
    j["left"] = cmp->left;
    j["right"] = cmp->right;
    j["relation"] = cmp->relation == Relation::greater  ? ">"
                    : cmp->relation == Relation::less   ? "<"
                                                        : "!=";
  } else {
    const auto& rel = std::get<LinearRelationship>(h.form);
    j["form"] = "linear_relationship";
    j["first"] = rel.first;
    j["second"] = rel.second;
    j["sign"] = rel.sign == Sign::positive   ? "positive"
                : rel.sign == Sign::negative ? "negative"
                                             : "nonzero";
  }
  return j;
}

}  // namespace

std::string to_json(const AnalysisSpec& s) {
  json doc;
  doc["data"] = {{"data_path", s.data_path}};
  doc["variables"] = json::array();
  for (const auto& v : s.variables) doc["variables"].push_back(variable_to_json(v));
  json design;
  design["study_type"] =
      s.design.study_type == StudyType::observational ? "observational" : "experiment";
  design["independent"] = s.design.independent;
  design["dependent"] = s.design.dependent;
  if (s.design.key) design["key"] = *s.design.key;
  if (!s.design.within_subjects.empty()) {
    design["within_subjects"] = s.design.within_subjects;
  }
  doc["design"] = std::move(design);
  json assumptions;
  assumptions["alpha"] = s.assumptions.alpha;
  if (!s.assumptions.claims.empty()) {
    assumptions["claims"] = json::array();
    for (const auto& c : s.assumptions.claims) {
      json cj;
      cj["property"] =
          c.property == ClaimKind::normality ? "normality" : "equal_variance";
      cj["variable"] = c.variable;
      if (c.group_by) cj["group_by"] = *c.group_by;
      cj["truth"] = c.truth;
      assumptions["claims"].push_back(std::move(cj));
    }
  }
  doc["assumptions"] = std::move(assumptions);
  doc["hypothesis"] = hypothesis_to_json(s.hypothesis);
  return doc.dump(2);
}

}  // namespace statsel::spec
