// Copyright 2026 The ropgen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <fstream>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ropgen {

using json = nlohmann::json;

/// Sequential reader over a line-delimited file. Blank lines are skipped.
class LineReader {
 public:
  /// Throws UsageError if the file cannot be opened.
  explicit LineReader(const std::string& path);

  bool next(std::string& line);

  /// "path:line" of the most recently returned line, for error messages.
  std::string where() const;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

/// Parses one JSON object; throws DataError naming `where` on failure.
json parse_record(std::string_view line, const std::string& where);

/// Opens `path` for writing, truncating. Throws DataError on failure.
std::ofstream open_output(const std::string& path);

/// Compact single-line serialization with round-trip double precision.
std::string to_line(const json& record);

}  // namespace ropgen
