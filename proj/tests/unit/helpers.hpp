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

#ifndef STATSEL_TESTS_HELPERS_HPP
#define STATSEL_TESTS_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <string>

inline std::string data_dir() { return STATSEL_TEST_DATA_DIR; }

inline std::string data_file(const std::string& name) {
  return data_dir() + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

#endif  // STATSEL_TESTS_HELPERS_HPP
