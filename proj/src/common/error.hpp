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

#ifndef STATSEL_COMMON_ERROR_HPP
#define STATSEL_COMMON_ERROR_HPP

#include <stdexcept>
#include <string>

namespace statsel {

// Every failure the library reports, shared across modules. The C API maps
// these onto coarse status codes; the CLI prints errc_name() plus message.
enum class Errc {
  io_error,
  syntax_error,
  missing_section,
  duplicate_variable,
  unknown_variable,
  unknown_category,
  unsupported_form,
  role_conflict,
  within_without_key,
  invalid_alpha,
  invalid_spec,
  missing_column,
  type_mismatch,
  category_violation,
  range_violation,
  empty_group,
  duplicate_cell,
  no_complete_units,
  insufficient_data,
  degenerate_sample,
  all_zero_differences,
  zero_margin,
  not_two_by_two,
  empty_cell,
  domain_error,
  internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  Error(Errc code, std::string message, int line)
      : std::runtime_error(std::move(message)), code_(code), line_(line) {}

  Errc code() const noexcept { return code_; }
  int line() const noexcept { return line_; }  // 0 when not location-bound

  std::string formatted() const {
    std::string s = errc_name(code_);
    if (line_ > 0) s += " (line " + std::to_string(line_) + ")";
    s += ": ";
    s += what();
    return s;
  }

 private:
  Errc code_;
  int line_ = 0;
};

}  // namespace statsel

#endif  // STATSEL_COMMON_ERROR_HPP
