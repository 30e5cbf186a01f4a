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

#include <cstring>
#include <doctest.h>
#include <string>

#include "helpers.hpp"
#include "statsel/statsel.h"

TEST_CASE("c api: end-to-end analyze through opaque handles") {
  statsel_spec* spec = nullptr;
  statsel_error* err = nullptr;
  REQUIRE(statsel_spec_parse_file(data_file("uscrime.study").c_str(), &spec,
                                  &err) == STATSEL_OK);
  REQUIRE(spec != nullptr);
  CHECK(std::string(statsel_spec_data_path(spec)) == "uscrime.csv");

  statsel_dataset* ds = nullptr;
  REQUIRE(statsel_dataset_load(spec, data_file("uscrime.csv").c_str(), &ds,
                               &err) == STATSEL_OK);
  CHECK(statsel_dataset_rows(ds) == 47);

  statsel_options opt = statsel_options_default();
  opt.has_seed = 1;
  opt.seed = 7;
  statsel_report* rep = nullptr;
  REQUIRE(statsel_run(spec, ds, &opt, &rep, &err) == STATSEL_OK);
  REQUIRE(rep != nullptr);
  const std::string json = statsel_report_json(rep);
  CHECK(json.find("\"students_t\"") != std::string::npos);
  CHECK(json.find("\"p_value\"") != std::string::npos);
  CHECK(statsel_report_fallback(rep) == 0);
  CHECK(statsel_report_conflict_count(rep) == 0);
  const std::string text = statsel_report_text(rep);
  CHECK(text.find("Student's t-test") != std::string::npos);

  statsel_report_free(rep);
  statsel_dataset_free(ds);
  statsel_spec_free(spec);
}

TEST_CASE("c api: parse errors carry status, message and line") {
  statsel_spec* spec = nullptr;
  statsel_error* err = nullptr;
  const char* bad_doc =
      "[data]\nwhat = 1\npath = d.csv\n[variables]\nx = ratio\ng = nominal(a, b)\n"
      "[design]\nstudy_type = experiment\nindependent = g\ndependent = x\n"
      "[hypothesis]\ntest = g:a > g:b\n";
  const auto rc = statsel_spec_parse_text(bad_doc, 0, &spec, &err);
  CHECK(rc == STATSEL_ERR_PARSE);
  REQUIRE(err != nullptr);
  CHECK(statsel_error_status(err) == STATSEL_ERR_PARSE);
  CHECK(statsel_error_line(err) == 2);
  CHECK(std::strlen(statsel_error_message(err)) > 0);
  CHECK(spec == nullptr);
  statsel_error_free(err);

  // io failure
  err = nullptr;
  CHECK(statsel_spec_parse_file("/nonexistent/x.study", &spec, &err) ==
        STATSEL_ERR_IO);
  statsel_error_free(err);
}

TEST_CASE("c api: spec render round-trips") {
  statsel_spec* spec = nullptr;
  statsel_error* err = nullptr;
  REQUIRE(statsel_spec_parse_file(data_file("uscrime.study").c_str(), &spec,
                                  &err) == STATSEL_OK);
  char* text = nullptr;
  REQUIRE(statsel_spec_render(spec, 0, &text) == STATSEL_OK);
  statsel_spec* again = nullptr;
  REQUIRE(statsel_spec_parse_text(text, 0, &again, &err) == STATSEL_OK);
  char* text2 = nullptr;
  REQUIRE(statsel_spec_render(again, 0, &text2) == STATSEL_OK);
  CHECK(std::string(text) == text2);
  statsel_string_free(text);
  statsel_string_free(text2);
  statsel_spec_free(spec);
  statsel_spec_free(again);
}

TEST_CASE("c api: knowledge base dump and version") {
  char* kb = nullptr;
  REQUIRE(statsel_kb_json(&kb) == STATSEL_OK);
  const std::string dump = kb;
  CHECK(dump.find("mann_whitney") != std::string::npos);
  CHECK(dump.find("preconditions") != std::string::npos);
  statsel_string_free(kb);
  CHECK(std::string(statsel_version()) == "0.1.0");
}

TEST_CASE("c api: invalid arguments are rejected without crashing") {
  CHECK(statsel_spec_parse_file(nullptr, nullptr, nullptr) ==
        STATSEL_ERR_INVALID_ARG);
  statsel_options bad = statsel_options_default();
  bad.resamples = 10;
  statsel_report* rep = nullptr;
  CHECK(statsel_run(nullptr, nullptr, &bad, &rep, nullptr) ==
        STATSEL_ERR_INVALID_ARG);
  statsel_report_free(nullptr);
  statsel_error_free(nullptr);
  statsel_string_free(nullptr);
}
