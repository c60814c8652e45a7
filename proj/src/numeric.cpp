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

#include "subsamp/numeric.hpp"

#include <cmath>

#include "subsamp/error.hpp"

namespace subsamp {

double log_binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) {
    throw Error(Errc::kBadParams, "log_binomial: need 0 <= k <= n");
  }
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

GlRule make_gauss_legendre(int n) {
  if (n < 1) {
    throw Error(Errc::kBadParams, "make_gauss_legendre: need n >= 1");
  }
  GlRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Roots come in +/- pairs; solve the upper half from the Chebyshev-based
  // initial guess and mirror.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}.
      double p0 = 1.0;
      double p1 = x;
      for (int j = 1; j < n; ++j) {
        double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // One more recurrence pass so dp matches the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int j = 1; j < n; ++j) {
      double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) {
    // Midpoint: x = 0 exactly.
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

}  // namespace subsamp
