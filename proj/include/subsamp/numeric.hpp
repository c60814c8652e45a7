// Copyright 2026 The subsamp Authors
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

#ifndef SUBSAMP_NUMERIC_HPP_
#define SUBSAMP_NUMERIC_HPP_

#include <cstdint>
#include <vector>

namespace subsamp {

// Neumaier-compensated accumulator. All mass and integral sums in the
// library go through this so results do not depend on summation order noise.
class StableSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;

  static double abs(double x) { return x < 0 ? -x : x; }
};

// log C(n, k) via lgamma; exact enough for n up to a few thousand.
double log_binomial(long n, long k);

// Gauss-Legendre rule on [-1, 1]. Nodes ascending; weights positive.
struct GlRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Computes the n-point rule by Newton iteration on the Legendre recurrence.
// Deterministic; callers cache the result (magic static) for fixed n.
GlRule make_gauss_legendre(int n);

}  // namespace subsamp

#endif  // SUBSAMP_NUMERIC_HPP_
