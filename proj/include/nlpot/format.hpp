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

#ifndef NLPOT_FORMAT_HPP_
#define NLPOT_FORMAT_HPP_

#include <string>
#include <vector>

namespace nlpot {

// Shortest round-trip text for a double: "%.17g", with "inf", "-inf" and
// "nan" for the non-finite values.
std::string FormatDouble(double v);

// Values joined by `sep`, each through FormatDouble.
std::string JoinDoubles(const std::vector<double>& values, char sep);

}  // namespace nlpot

#endif  // NLPOT_FORMAT_HPP_
