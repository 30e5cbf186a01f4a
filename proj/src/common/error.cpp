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

#include "common/error.hpp"

namespace statsel {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::io_error: return "IoError";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::missing_section: return "MissingSection";
    case Errc::duplicate_variable: return "DuplicateVariable";
    case Errc::unknown_variable: return "UnknownVariable";
    case Errc::unknown_category: return "UnknownCategory";
    case Errc::unsupported_form: return "UnsupportedForm";
    case Errc::role_conflict: return "RoleConflict";
    case Errc::within_without_key: return "WithinWithoutKey";
    case Errc::invalid_alpha: return "InvalidAlpha";
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::missing_column: return "MissingColumn";
    case Errc::type_mismatch: return "TypeMismatch";
    case Errc::category_violation: return "CategoryViolation";
    case Errc::range_violation: return "RangeViolation";
    case Errc::empty_group: return "EmptyGroup";
    case Errc::duplicate_cell: return "DuplicateCell";
    case Errc::no_complete_units: return "NoCompleteUnits";
    case Errc::insufficient_data: return "InsufficientData";
    case Errc::degenerate_sample: return "DegenerateSample";
    case Errc::all_zero_differences: return "AllZeroDifferences";
    case Errc::zero_margin: return "ZeroMargin";
    case Errc::not_two_by_two: return "NotTwoByTwo";
    case Errc::empty_cell: return "EmptyCell";
    case Errc::domain_error: return "DomainError";
    case Errc::internal: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace statsel
