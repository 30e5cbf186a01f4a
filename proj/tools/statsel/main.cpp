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

// statsel command line. Talks to the library exclusively through the C API.
//
// Exit codes: 0 success, 1 spec/data error, 2 assumption conflict under
// --strict.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "statsel/statsel.h"

namespace {

struct ErrorGuard {
  statsel_error* err = nullptr;
  ~ErrorGuard() { statsel_error_free(err); }
};

int fail(const statsel_error* err, const char* fallback) {
  std::cerr << "error: " << (err ? statsel_error_message(err) : fallback)
            << "\n";
  return 1;
}

bool emit(const std::string& content, const std::string& output_path) {
  if (output_path.empty() || output_path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
    return true;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << output_path << "\n";
    return false;
  }
  out << content;
  return true;
}

// The CSV path in a spec is resolved against the spec file's directory
// unless absolute (or overridden with --data).
std::string resolve_data_path(const std::string& spec_path,
                              const std::string& declared) {
  const std::filesystem::path p(declared);
  if (p.is_absolute()) return declared;
  return (std::filesystem::path(spec_path).parent_path() / p).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statsel: finds the statistically valid tests for a declared "
               "study and hypothesis, runs them, and reports corrected, "
               "effect-size-annotated results"};
  app.require_subcommand(1);

  std::string spec_path, format = "text", output, data_override;
  std::uint64_t seed = 0;
  bool seed_set = false, strict = false;
  int resamples = 10000;

  auto* analyze = app.add_subcommand("analyze", "run a study end to end");
  analyze->add_option("spec", spec_path, "study file (.json for the JSON form)")
      ->required();
  analyze->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--output,-o", output, "output path (default: stdout)");
  analyze->add_option("--data", data_override, "override the declared CSV path");
  analyze->add_option("--seed", seed, "resampling seed")
      ->each([&](const std::string&) { seed_set = true; });
  analyze->add_option("--resamples", resamples, "bootstrap resamples (>= 1000)");
  analyze->add_flag("--strict", strict,
                    "exit 2 when an assumption contradicts a computed check");

  auto* validate = app.add_subcommand("validate", "parse and check a study file");
  validate->add_option("spec", spec_path, "study file")->required();

  auto* kb = app.add_subcommand("kb", "print the test knowledge base");
  std::string kb_format = "json";
  kb->add_option("--format", kb_format, "json")->check(CLI::IsMember({"json"}));

  CLI11_PARSE(app, argc, argv);

  if (kb->parsed()) {
    char* dump = nullptr;
    if (statsel_kb_json(&dump) != STATSEL_OK || dump == nullptr) {
      std::cerr << "error: could not render the knowledge base\n";
      return 1;
    }
    std::cout << dump << "\n";
    statsel_string_free(dump);
    return 0;
  }

  ErrorGuard err;
  statsel_spec* spec = nullptr;
  if (statsel_spec_parse_file(spec_path.c_str(), &spec, &err.err) != STATSEL_OK) {
    return fail(err.err, "could not parse the study file");
  }

  if (validate->parsed()) {
    char* desc = nullptr;
    statsel_spec_describe(spec, &desc);
    std::cout << "ok: " << spec_path << "\n";
    if (desc != nullptr) {
      std::cout << desc;
      statsel_string_free(desc);
    }
    statsel_spec_free(spec);
    return 0;
  }

  const std::string data_path =
      data_override.empty()
          ? resolve_data_path(spec_path, statsel_spec_data_path(spec))
          : data_override;

  statsel_dataset* dataset = nullptr;
  if (statsel_dataset_load(spec, data_path.c_str(), &dataset, &err.err) !=
      STATSEL_OK) {
    statsel_spec_free(spec);
    return fail(err.err, "could not load the dataset");
  }

  statsel_options options = statsel_options_default();
  if (!seed_set) {
    if (const char* env = std::getenv("STATSEL_SEED")) {
      options.seed = std::strtoull(env, nullptr, 10);
      options.has_seed = 1;
    }
  } else {
    options.seed = seed;
    options.has_seed = 1;
  }
  options.strict = strict ? 1 : 0;
  options.resamples = resamples;

  statsel_report* report = nullptr;
  const statsel_status rc =
      statsel_run(spec, dataset, &options, &report, &err.err);
  statsel_dataset_free(dataset);
  statsel_spec_free(spec);
  if (rc != STATSEL_OK) return fail(err.err, "analysis failed");

  const char* content =
      format == "json" ? statsel_report_json(report) : statsel_report_text(report);
  const bool wrote = emit(content, output);
  const int conflicts = statsel_report_conflict_count(report);
  statsel_report_free(report);

  if (!wrote) return 1;
  if (strict && conflicts > 0) {
    std::cerr << "strict mode: " << conflicts
              << " assumption conflict(s) detected\n";
    return 2;
  }
  return 0;
}
