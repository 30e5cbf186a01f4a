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

#include <cmath>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "report/report.hpp"

namespace statsel::report {

namespace {

using json = nlohmann::ordered_json;

std::string num(double v, int precision = 6) {
  if (std::isnan(v)) return "-";
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

// Doubles rendered via shortest round-trip text keeps the JSON byte-stable.
json jnum(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

json outcome_to_json(const stats::TestOutcome& o, bool has_p,
                     std::optional<double> p_adj) {
  json j;
  j["statistic"] = {{"name", o.statistic_name}, {"value", jnum(o.statistic)}};
  if (!o.dof.empty()) j["dof"] = o.dof;
  if (has_p) {
    j["p_value"] = jnum(o.p_value);
    if (p_adj) j["p_adjusted"] = jnum(*p_adj);
    j["sidedness"] = o.tail == stats::Tail::two_sided ? "two-sided"
                     : o.tail == stats::Tail::greater ? "greater"
                                                      : "less";
  }
  if (o.effect) {
    j["effect_size"] = {{"name", o.effect->name}, {"value", jnum(o.effect->value)}};
  }
  if (o.ci) {
    j["confidence_interval"] = {
        {"level", o.ci->level}, {"lo", jnum(o.ci->lo)}, {"hi", jnum(o.ci->hi)}};
  }
  j["n"] = o.sample_sizes;
  if (!o.notes.empty()) j["notes"] = o.notes;
  return j;
}

json evidence_to_json(const solver::TestDecision& d) {
  json atoms = json::array();
  for (const auto& ev : d.evidence) {
    json a;
    a["atom"] = ev.id.describe();
    a["code"] = ev.id.footnote_code();
    a["holds"] = ev.value.truth;
    a["provenance"] = props::provenance_name(ev.value.provenance);
    if (ev.value.evidence) {
      a["check"] = {{"statistic", jnum(ev.value.evidence->statistic)},
                    {"p_value", jnum(ev.value.evidence->p_value)}};
    }
    if (ev.value.conflict) a["conflict"] = true;
    atoms.push_back(std::move(a));
  }
  return atoms;
}

}  // namespace

std::string render_json(const AnalysisReport& r) {
  json doc;
  doc["version"] = r.version;
  doc["alpha"] = r.alpha;
  doc["hypothesis"] = r.hypothesis;
  doc["sidedness"] = r.sidedness;
  doc["assumptions"] = r.assumption_echo;
  doc["seed"] = r.seed;
  doc["resamples"] = r.resamples;
  doc["fallback_to_bootstrap"] = r.fallback;

  json selection;
  selection["valid"] = json::array();
  for (const auto& d : r.selection.valid) {
    json t;
    t["test"] = d.test->id;
    t["name"] = d.test->display_name;
    t["family"] = solver::family_name(d.test->family);
    t["evidence"] = evidence_to_json(d);
    selection["valid"].push_back(std::move(t));
  }
  selection["invalid"] = json::array();
  for (const auto& d : r.selection.invalid) {
    json t;
    t["test"] = d.test->id;
    t["name"] = d.test->display_name;
    t["reason"] = d.exclusion == solver::ExclusionKind::shape_mismatch
                      ? "hypothesis_shape"
                  : d.exclusion == solver::ExclusionKind::evaluation_error
                      ? "evaluation_error"
                      : "failed_precondition";
    if (d.failure) t["first_failure"] = *d.failure;
    t["evidence"] = evidence_to_json(d);
    selection["invalid"].push_back(std::move(t));
  }
  doc["selection"] = std::move(selection);

  doc["results"] = json::array();
  for (const auto& res : r.results) {
    json t;
    t["test"] = res.id;
    t["name"] = res.name;
    t["family"] = solver::family_name(res.family);
    t.update(outcome_to_json(res.outcome, res.has_p, res.p_adjusted));
    doc["results"].push_back(std::move(t));
  }

  if (r.bootstrap) {
    json b;
    b["level"] = r.bootstrap->level;
    b["resamples"] = r.bootstrap->resamples;
    b["seed"] = r.bootstrap->seed;
    b["groups"] = json::array();
    for (const auto& g : r.bootstrap->groups) {
      b["groups"].push_back({{"label", g.label},
                             {"mean", jnum(g.mean)},
                             {"ci", {{"lo", jnum(g.ci.lo)}, {"hi", jnum(g.ci.hi)}}}});
    }
    if (r.bootstrap->difference) {
      b["difference_ci"] = {{"lo", jnum(r.bootstrap->difference->lo)},
                            {"hi", jnum(r.bootstrap->difference->hi)}};
      b["significant"] = r.bootstrap->significant;
    }
    doc["bootstrap"] = std::move(b);
  }

  doc["warnings"] = json::array();
  for (const auto& c : r.conflicts) {
    doc["warnings"].push_back({{"kind", "assumption_conflict"},
                               {"property", c.property},
                               {"assumed", c.assumed_truth},
                               {"check",
                                {{"statistic", jnum(c.evidence.statistic)},
                                 {"p_value", jnum(c.evidence.p_value)}}},
                               {"message", c.message}});
  }
  doc["notes"] = r.notes;
  return doc.dump(2);
}

std::string render_text(const AnalysisReport& r) {
  std::ostringstream out;
  out << "Hypothesis: " << r.hypothesis << "  (" << r.sidedness
      << ", alpha = " << num(r.alpha, 4) << ")\n";
  for (const auto& a : r.assumption_echo) out << "Assumes: " << a << "\n";
  if (r.fallback) {
    out << "No test satisfied all preconditions; falling back to the "
           "bootstrap.\n";
  }
  out << "\n";

  // Result table, wrapped at 100 columns.
  out << std::left << std::setw(26) << "test" << std::setw(16) << "statistic"
      << std::setw(10) << "dof" << std::setw(12) << "p" << std::setw(12)
      << "p (Holm)" << std::setw(24) << "effect" << "\n";
  out << std::string(100, '-') << "\n";
  for (const auto& res : r.results) {
    std::string stat = res.outcome.statistic_name + " = " +
                       num(res.outcome.statistic, 5);
    std::string dof;
    for (std::size_t i = 0; i < res.outcome.dof.size(); ++i) {
      if (i) dof += ", ";
      dof += num(res.outcome.dof[i], 5);
    }
    std::string eff = res.outcome.effect
                          ? res.outcome.effect->name + " = " +
                                num(res.outcome.effect->value, 4)
                          : "-";
    out << std::left << std::setw(26) << res.name.substr(0, 25) << std::setw(16)
        << stat << std::setw(10) << (dof.empty() ? "-" : dof) << std::setw(12)
        << (res.has_p ? num(res.outcome.p_value, 6) : std::string("-"))
        << std::setw(12)
        << (res.p_adjusted ? num(*res.p_adjusted, 6) : std::string("-"))
        << std::setw(24) << eff << "\n";
    if (res.outcome.ci) {
      out << "    " << static_cast<int>(res.outcome.ci->level * 100)
          << "% CI [" << num(res.outcome.ci->lo, 5) << ", "
          << num(res.outcome.ci->hi, 5) << "]\n";
    }
  }

  if (r.bootstrap) {
    out << "\nBootstrap (" << r.bootstrap->resamples << " resamples, seed "
        << r.bootstrap->seed << "):\n";
    for (const auto& g : r.bootstrap->groups) {
      out << "  group " << g.label << ": mean " << num(g.mean, 5) << ", "
          << static_cast<int>(g.ci.level * 100) << "% CI ["
          << num(g.ci.lo, 5) << ", " << num(g.ci.hi, 5) << "]\n";
    }
    if (r.bootstrap->difference) {
      out << "  difference CI [" << num(r.bootstrap->difference->lo, 5) << ", "
          << num(r.bootstrap->difference->hi, 5) << "] -> "
          << (r.bootstrap->significant ? "significant" : "not significant")
          << " at alpha\n";
    }
  }

  out << "\nValid tests and evidence:\n";
  for (const auto& d : r.selection.valid) {
    out << "  [ok] " << d.test->display_name << "\n";
    for (const auto& ev : d.evidence) {
      out << "       (" << ev.id.footnote_code() << ") " << ev.id.describe()
          << ": " << (ev.value.truth ? "holds" : "fails") << " ["
          << props::provenance_name(ev.value.provenance) << "]";
      if (ev.value.evidence) {
        out << " (stat " << num(ev.value.evidence->statistic, 4) << ", p "
            << num(ev.value.evidence->p_value, 4) << ")";
      }
      out << "\n";
    }
  }
  out << "Excluded tests:\n";
  for (const auto& d : r.selection.invalid) {
    out << "  [--] " << d.test->display_name << ": "
        << (d.failure ? *d.failure : std::string("not applicable")) << "\n";
  }

  for (const auto& c : r.conflicts) {
    out << "\nWARNING: " << c.property << ": " << c.message << "\n";
  }
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  return out.str();
}

}  // namespace statsel::report
