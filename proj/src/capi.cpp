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

// C API shims: opaque handles around the C++ core, exceptions mapped to
// status codes at this boundary. No exception may escape.

#include "statsel/statsel.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "common/error.hpp"
#include "dataset/dataset.hpp"
#include "engine.hpp"
#include "report/report.hpp"
#include "solver/solver.hpp"
#include "speclang/ast.hpp"

struct statsel_error {
  statsel_status status;
  std::string message;
  int line;
};

struct statsel_spec {
  statsel::spec::ValidatedSpec validated;
};

struct statsel_dataset {
  statsel::data::Dataset dataset;
};

struct statsel_report {
  statsel::report::AnalysisReport report;
  std::string json;
  std::string text;
};

namespace {

statsel_status status_for(statsel::Errc code) {
  using statsel::Errc;
  switch (code) {
    case Errc::io_error:
      return STATSEL_ERR_IO;
    case Errc::syntax_error:
    case Errc::missing_section:
    case Errc::duplicate_variable:
    case Errc::unsupported_form:
      return STATSEL_ERR_PARSE;
    case Errc::unknown_variable:
    case Errc::unknown_category:
    case Errc::role_conflict:
    case Errc::within_without_key:
    case Errc::invalid_alpha:
    case Errc::invalid_spec:
      return STATSEL_ERR_VALIDATE;
    case Errc::missing_column:
    case Errc::type_mismatch:
    case Errc::category_violation:
    case Errc::range_violation:
      return STATSEL_ERR_DATA;
    case Errc::internal:
      return STATSEL_ERR_INTERNAL;
    default:
      return STATSEL_ERR_EXEC;
  }
}

void set_error(statsel_error** err, statsel_status status, std::string message,
               int line = 0) {
  if (err == nullptr) return;
  *err = new (std::nothrow) statsel_error{status, std::move(message), line};
}

template <typename Fn>
statsel_status guarded(statsel_error** err, Fn&& fn) {
  try {
    return fn();
  } catch (const statsel::Error& e) {
    const statsel_status st = status_for(e.code());
    set_error(err, st, e.formatted(), e.line());
    return st;
  } catch (const std::bad_alloc&) {
    set_error(err, STATSEL_ERR_INTERNAL, "out of memory");
    return STATSEL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(err, STATSEL_ERR_INTERNAL, e.what());
    return STATSEL_ERR_INTERNAL;
  } catch (...) {
    set_error(err, STATSEL_ERR_INTERNAL, "unknown failure");
    return STATSEL_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

statsel_status statsel_error_status(const statsel_error* err) {
  return err ? err->status : STATSEL_OK;
}

const char* statsel_error_message(const statsel_error* err) {
  return err ? err->message.c_str() : "";
}

int statsel_error_line(const statsel_error* err) { return err ? err->line : 0; }

void statsel_error_free(statsel_error* err) { delete err; }

statsel_status statsel_spec_parse_file(const char* path, statsel_spec** out,
                                       statsel_error** err) {
  if (path == nullptr || out == nullptr) return STATSEL_ERR_INVALID_ARG;
  *out = nullptr;
  return guarded(err, [&] {
    auto parsed = statsel::spec::parse_spec_file(path);
    auto validated = statsel::spec::validate_spec(std::move(parsed));
    *out = new statsel_spec{std::move(validated)};
    return STATSEL_OK;
  });
}

statsel_status statsel_spec_parse_text(const char* text, int as_json,
                                       statsel_spec** out,
                                       statsel_error** err) {
  if (text == nullptr || out == nullptr) return STATSEL_ERR_INVALID_ARG;
  *out = nullptr;
  return guarded(err, [&] {
    auto parsed = as_json ? statsel::spec::parse_spec_json(text)
                          : statsel::spec::parse_spec(text);
    auto validated = statsel::spec::validate_spec(std::move(parsed));
    *out = new statsel_spec{std::move(validated)};
    return STATSEL_OK;
  });
}

statsel_status statsel_spec_render(const statsel_spec* spec, int as_json,
                                   char** out) {
  if (spec == nullptr || out == nullptr) return STATSEL_ERR_INVALID_ARG;
  return guarded(nullptr, [&] {
    const std::string s = as_json ? statsel::spec::to_json(spec->validated.spec)
                                  : statsel::spec::to_text(spec->validated.spec);
    *out = copy_string(s);
    return *out ? STATSEL_OK : STATSEL_ERR_INTERNAL;
  });
}

const char* statsel_spec_data_path(const statsel_spec* spec) {
  return spec ? spec->validated.spec.data_path.c_str() : "";
}

statsel_status statsel_spec_describe(const statsel_spec* spec, char** out) {
  if (spec == nullptr || out == nullptr) return STATSEL_ERR_INVALID_ARG;
  return guarded(nullptr, [&] {
    std::string s;
    for (const auto& v : spec->validated.spec.variables) {
      s += v.name + ": " +
           statsel::spec::role_name(spec->validated.roles.at(v.name)) + " (" +
           statsel::spec::dtype_name(v.dtype) + ")\n";
    }
    for (const auto& w : spec->validated.warnings) s += "warning: " + w + "\n";
    *out = copy_string(s);
    return *out ? STATSEL_OK : STATSEL_ERR_INTERNAL;
  });
}

void statsel_spec_free(statsel_spec* spec) { delete spec; }

statsel_status statsel_dataset_load(const statsel_spec* spec,
                                    const char* csv_path, statsel_dataset** out,
                                    statsel_error** err) {
  if (spec == nullptr || csv_path == nullptr || out == nullptr) {
    return STATSEL_ERR_INVALID_ARG;
  }
  *out = nullptr;
  return guarded(err, [&] {
    auto ds = statsel::data::Dataset::load_csv(csv_path, spec->validated);
    *out = new statsel_dataset{std::move(ds)};
    return STATSEL_OK;
  });
}

int statsel_dataset_rows(const statsel_dataset* ds) {
  return ds ? static_cast<int>(ds->dataset.row_count()) : 0;
}

void statsel_dataset_free(statsel_dataset* ds) { delete ds; }

statsel_options statsel_options_default(void) {
  statsel_options o;
  o.seed = 0;
  o.has_seed = 0;
  o.strict = 0;
  o.resamples = 10000;
  o.ci_level = 0.95;
  return o;
}

statsel_status statsel_run(const statsel_spec* spec, const statsel_dataset* ds,
                           const statsel_options* options, statsel_report** out,
                           statsel_error** err) {
  if (spec == nullptr || ds == nullptr || out == nullptr) {
    return STATSEL_ERR_INVALID_ARG;
  }
  *out = nullptr;
  statsel::RunOptions run;
  if (options != nullptr) {
    if (options->has_seed) run.seed = options->seed;
    run.strict = options->strict != 0;
    if (options->resamples < 1000) return STATSEL_ERR_INVALID_ARG;
    run.resamples = static_cast<std::size_t>(options->resamples);
    if (!(options->ci_level > 0.0 && options->ci_level < 1.0)) {
      return STATSEL_ERR_INVALID_ARG;
    }
    run.ci_level = options->ci_level;
  }
  return guarded(err, [&] {
    auto report = statsel::run_analysis(spec->validated, ds->dataset, run);
    auto* handle = new statsel_report;
    handle->json = statsel::report::render_json(report);
    handle->text = statsel::report::render_text(report);
    handle->report = std::move(report);
    *out = handle;
    return STATSEL_OK;
  });
}

const char* statsel_report_json(const statsel_report* rep) {
  return rep ? rep->json.c_str() : "";
}

const char* statsel_report_text(const statsel_report* rep) {
  return rep ? rep->text.c_str() : "";
}

int statsel_report_conflict_count(const statsel_report* rep) {
  return rep ? static_cast<int>(rep->report.conflicts.size()) : 0;
}

int statsel_report_fallback(const statsel_report* rep) {
  return rep && rep->report.fallback ? 1 : 0;
}

void statsel_report_free(statsel_report* rep) { delete rep; }

statsel_status statsel_kb_json(char** out) {
  if (out == nullptr) return STATSEL_ERR_INVALID_ARG;
  return guarded(nullptr, [&] {
    *out = copy_string(statsel::solver::knowledge_base_json());
    return *out ? STATSEL_OK : STATSEL_ERR_INTERNAL;
  });
}

void statsel_string_free(char* s) { std::free(s); }

const char* statsel_version(void) { return statsel::kVersion; }

}  // extern "C"
