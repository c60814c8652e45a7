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

#ifndef SUBSAMP_MGF_HPP_
#define SUBSAMP_MGF_HPP_

#include <vector>

#include "subsamp/measure.hpp"
#include "subsamp/profiles.hpp"

namespace subsamp {

// Distribution of the log-likelihood ratio log(mu(z)/mu'(z)) under z ~ mu.
// Outcomes outside the support of mu' carry infinite loss and are tracked
// separately in inf_mass. Atom probabilities plus inf_mass sum to 1.
struct PrivacyLossDistribution {
  std::vector<std::pair<double, double>> atoms;  // (loss, probability), loss ascending.
  double inf_mass = 0.0;
};

PrivacyLossDistribution loss_distribution(const DiscreteMeasure& mu,
                                          const DiscreteMeasure& mu_prime);

// delta(eps) = Pr[L > eps] - e^eps Pr[L' < -eps] where L is the forward loss
// and L' the reverse loss (of the swapped pair). Exact for the pair the two
// blades came from.
double profile_from_loss(const PrivacyLossDistribution& forward,
                         const PrivacyLossDistribution& reverse, double eps);

// Upper bound Pr[L > eps] (drops the negative correction term).
double tail_bound_profile(const PrivacyLossDistribution& pld, double eps);

// Quadrature controls for mgf_from_profiles. Panels double until successive
// estimates agree to rel_tol, and the upper cutoff doubles until the last
// panel's contribution is negligible; both expansions are capped.
struct QuadratureSpec {
  double eps_max = 1.0;
  int panels = 8;
  int gl_nodes = 32;
  double rel_tol = 1e-10;
  double tail_rel_tol = 1e-12;
  double eps_max_cap = 1048576.0;
  int max_panels = 1 << 18;
};

// Moment generating function of the privacy loss at order s >= 0:
//   phi(s) = 1 + s (s+1) * Integral_0^inf (e^{s eps} f(eps)
//                                          + e^{-(s+1) eps} r(eps)) d eps
// where f is the forward profile and r the reverse. Profiles' breakpoints
// are used to split panels so closed-form kinks do not degrade convergence.
// A cutoff that keeps growing without the tail settling throws
// kDivergentIntegrand.
double mgf_from_profiles(const PrivacyProfile& forward,
                         const PrivacyProfile& reverse, double s,
                         const QuadratureSpec& quad = {});

// Renyi bound eps(lambda) = log(phi) / (lambda - 1) for lambda > 1, applied
// to phi = mgf at s = lambda - 1. phi must be positive.
double renyi_epsilon(double mgf_value, double lambda);

}  // namespace subsamp

#endif  // SUBSAMP_MGF_HPP_
