// Copyright 2026 The nlpot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLPOT_CLI_CSV_HPP_
#define NLPOT_CLI_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "nlpot/geometry.hpp"

namespace nlpot::cli {

// Coordinates joined by single spaces, so a point stays one CSV field.
std::string PointField(const Point& p);

// Splits a CSV document into its "# ..." comment lines and the rest.
struct CsvParts {
  std::vector<std::string> comments;
  std::string body;
};
CsvParts SplitCsv(std::string_view text);

// Writes `content` to `path` in binary mode (LF line endings); throws
// std::runtime_error on failure.
void WriteTextFile(const std::string& path, std::string_view content);
std::string ReadTextFile(const std::string& path);

}  // namespace nlpot::cli

#endif  // NLPOT_CLI_CSV_HPP_
