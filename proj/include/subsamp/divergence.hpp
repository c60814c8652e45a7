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

#ifndef SUBSAMP_DIVERGENCE_HPP_
#define SUBSAMP_DIVERGENCE_HPP_

#include <string>
#include <tuple>
#include <vector>

#include "subsamp/kernel.hpp"
#include "subsamp/measure.hpp"

namespace subsamp {

// Hockey-stick divergence sum_z max(mu(z) - alpha * mu'(z), 0). Defined for
// any alpha > 0 and arbitrary finite measures; lands in [0, 1] only when mu
// is a probability distribution and alpha >= 1.
double hockey_stick(const DiscreteMeasure& mu, const DiscreteMeasure& mu_prime,
                    double alpha);

// Total variation distance between probability distributions; equals the
// divergence at alpha = 1.
double total_variation(const DiscreteMeasure& nu,
                       const DiscreteMeasure& nu_prime);

// Splits a pair of probability distributions around their overlap:
//   nu  = (1 - eta) * omega0 + eta * omega1
//   nu' = (1 - eta) * omega0 + eta * omega1_prime
// with eta the total variation distance and omega1, omega1_prime mutually
// singular. At eta == 0 the pair collapses to omega0 == nu and the residual
// parts are empty; at eta == 1 the shared part omega0 is empty. Both edge
// cases are flagged via degenerate.
struct CouplingDecomposition {
  double eta = 0.0;
  DiscreteMeasure omega0;
  DiscreteMeasure omega1;
  DiscreteMeasure omega1_prime;
  bool degenerate = false;
};

CouplingDecomposition maximal_coupling(const DiscreteMeasure& nu,
                                       const DiscreteMeasure& nu_prime);

// Evaluates both sides of the mixture identity
//   D_{alpha'}((1-eta) mu0 + eta mu1 || (1-eta) mu0 + eta mu1')
//     = eta * D_alpha(mu1 || (1-beta) mu0 + beta mu1')
// with alpha' = 1 + eta (alpha - 1) and beta = alpha' / alpha, for alpha >= 1
// and eta in [0, 1]. Returns both sides so callers can check the identity.
struct AjcRecord {
  double alpha_prime = 0.0;
  double beta = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

AjcRecord advanced_joint_convexity(const DiscreteMeasure& mu0,
                                   const DiscreteMeasure& mu1,
                                   const DiscreteMeasure& mu1_prime,
                                   double eta, double alpha);

// Output distribution of the kernel applied to an omega-distributed input.
DiscreteMeasure pushforward(const DiscreteMeasure& omega,
                            const MechanismKernel& kernel);

// Joint measure over outcome pairs, sorted lexicographically. Masses are
// strictly positive.
struct TransportPlan {
  std::vector<std::tuple<std::string, std::string, double>> entries;
};

}  // namespace subsamp

#endif  // SUBSAMP_DIVERGENCE_HPP_
