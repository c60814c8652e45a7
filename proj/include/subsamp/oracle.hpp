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

#ifndef SUBSAMP_ORACLE_HPP_
#define SUBSAMP_ORACLE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "subsamp/dataset.hpp"
#include "subsamp/divergence.hpp"
#include "subsamp/kernel.hpp"
#include "subsamp/measure.hpp"

namespace subsamp {

// Exact distribution of the subsample of x, as canonical encodings. Inputs
// must be sets (all counts 1); instances beyond the enumeration limits
// (2^|x| for Poisson, C(n, m) for WOR, count vectors for WR, each capped at
// 1e6) throw kInstanceTooLarge.
DiscreteMeasure enumerate_subsamples(const SubsamplingScheme& scheme,
                                     const Dataset& x);

// Kernel reporting whether the marked element is present, with retention
// probability p in [1/2, 1]: input containing v maps to {"1": p, "0": 1-p},
// otherwise {"1": 1-p, "0": p}.
MechanismKernel membership_kernel(const std::string& v, double p);

// Divergence of the subsample-then-mechanism pipelines on x vs x' at alpha,
// by exact enumeration.
double exact_subsampled_divergence(const SubsamplingScheme& scheme,
                                   const MechanismKernel& kernel,
                                   const Dataset& x, const Dataset& x_prime,
                                   double alpha);

// Instance for tightness checks: x contains the marked element v once,
// x_prime does not.
struct TightnessInstance {
  Dataset x;
  Dataset x_prime;
  std::string v;
};

struct TightnessReport {
  double exact = 0.0;   // max over both orderings at alpha' = e^{eps'}.
  double bound = 0.0;   // the amplification bound at the same eps'.
  double gap = 0.0;     // bound - exact.
  double eps_prime = 0.0;
  double eta = 0.0;
  // True when the bound is an equality theorem for this scheme/relation (the
  // membership mechanism attains it); false for bounds that only dominate.
  bool asserts_equality = false;
};

// Compares the enumerated divergence of the membership mechanism under
// subsampling against the corresponding amplification bound at eps.
TightnessReport verify_tightness(const SubsamplingScheme& scheme,
                                 NeighborRelation relation, double p,
                                 double eps, const TightnessInstance& instance);

// Same comparison for an arbitrary kernel: the profile side is built
// empirically from the kernel over the reachable subsample encodings at the
// relation distances the bound consumes. asserts_equality is always false;
// only dominance (gap >= 0 up to rounding) is claimed.
TightnessReport verify_dominance(const SubsamplingScheme& scheme,
                                 NeighborRelation relation,
                                 const MechanismKernel& kernel,
                                 const Dataset& x, const Dataset& x_prime,
                                 double eps);

// Minimum-cost coupling between two finite measures of equal total mass
// (within 1e-9; the second marginal is rescaled to match exactly). Supports
// are capped at 300 outcomes each. Cost values must be non-negative.
struct CostedCoupling {
  TransportPlan plan;
  double value = 0.0;
};

CostedCoupling min_cost_coupling(
    const DiscreteMeasure& nu, const DiscreteMeasure& nu_prime,
    const std::function<double(const std::string&, const std::string&)>& cost);

// True iff some coupling of nu and nu_prime moves every outcome y only to
// partners at the minimal relation distance from y to the support of
// nu_prime (outcomes with no finite-distance partner make the pair
// incompatible). Both measures must be normalized.
bool is_distance_compatible(const DiscreteMeasure& nu,
                            const DiscreteMeasure& nu_prime,
                            NeighborRelation relation);

}  // namespace subsamp

#endif  // SUBSAMP_ORACLE_HPP_
