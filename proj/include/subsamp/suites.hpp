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

#ifndef SUBSAMP_SUITES_HPP_
#define SUBSAMP_SUITES_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace subsamp::suites {

// One verification check: a computed value, the reference it is held
// against, and the signed slack. The pass criterion depends on the suite
// (equality within tolerance, or non-negative slack).
struct Check {
  std::string name;
  bool pass = false;
  double lhs = 0.0;  // Computed / exact value.
  double rhs = 0.0;  // Reference / bound value.
  double gap = 0.0;  // rhs - lhs, or |lhs - rhs| for equality checks.
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool all_pass() const;
};

// Mixture identity on random triples; equality to 1e-12.
SuiteResult run_ajc(int trials, std::uint64_t seed);
// Membership mechanism attains the Poisson / WOR / WR bounds exactly.
SuiteResult run_tightness();
// Random table kernels never exceed the four amplification bounds.
SuiteResult run_dominance(int trials, std::uint64_t seed);
// Loss-distribution route reproduces the divergence exactly.
SuiteResult run_lossrv(int trials, std::uint64_t seed);
// Quadrature MGF matches closed forms.
SuiteResult run_mgf();
// Overlap decompositions of subsample distributions: distance
// compatibility and the bucketed min-cost identity.
SuiteResult run_coupling();
// Poisson-substitution bound dominates enumeration on membership instances.
SuiteResult run_appendix();
// Scaled-noise group profiles never exceed the generic group bound.
SuiteResult run_group();

// Runs every suite at its default trial count.
std::vector<SuiteResult> run_all(std::uint64_t seed);

// Default trial counts used when the caller does not override them.
inline constexpr int kDefaultAjcTrials = 1000;
inline constexpr int kDefaultDominanceTrials = 200;
inline constexpr int kDefaultLossrvTrials = 500;

}  // namespace subsamp::suites

#endif  // SUBSAMP_SUITES_HPP_
