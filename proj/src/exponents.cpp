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

#include "nlpot/exponents.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nlpot {

Exponents::Exponents(int n, double alpha, double s)
    : n_(n), alpha_(alpha), s_(s) {
  std::ostringstream why;
  if (n < 1) {
    why << "dimension n must be positive, got " << n;
  } else if (!std::isfinite(alpha) || !(alpha > 0)) {
    why << "alpha must be positive and finite, got " << alpha;
  } else if (!std::isfinite(s) || !(s > 1)) {
    why << "s must exceed 1, got " << s;
  } else if (!(alpha * s < n)) {
    why << "alpha * s must be below n, got alpha * s = " << alpha * s
        << " with n = " << n;
  } else {
    return;
  }
  throw std::invalid_argument(why.str());
}

}  // namespace nlpot
