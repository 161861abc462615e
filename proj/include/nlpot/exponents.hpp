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

#ifndef NLPOT_EXPONENTS_HPP_
#define NLPOT_EXPONENTS_HPP_

namespace nlpot {

// The triple (n, alpha, s) that fixes a Wolff potential W_{alpha,s} in R^n.
// Construction validates s > 1, alpha > 0 and 0 < alpha * s < n.
class Exponents {
 public:
  Exponents(int n, double alpha, double s);

  int n() const { return n_; }
  double alpha() const { return alpha_; }
  double s() const { return s_; }

  // s / (s - 1).
  double s_prime() const { return s_ / (s_ - 1.0); }
  // (alpha s - n) / (s - 1), the exponent of the kernel |x - x0|^kernel_exp.
  double kernel_exp() const { return (alpha_ * s_ - n_) / (s_ - 1.0); }
  // n - alpha s, the co-dimension appearing under the ball mass.
  double codim() const { return n_ - alpha_ * s_; }
  // 1 / (s - 1), the outer power of the Wolff integrand.
  double wolff_power() const { return 1.0 / (s_ - 1.0); }

  bool operator==(const Exponents& other) const = default;

 private:
  int n_;
  double alpha_;
  double s_;
};

}  // namespace nlpot

#endif  // NLPOT_EXPONENTS_HPP_
