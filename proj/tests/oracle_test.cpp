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

#include "subsamp/oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "subsamp/amplification.hpp"
#include "testutil.hpp"

namespace subsamp {
namespace {

Dataset set_of(const std::vector<std::string>& universe,
               const std::vector<std::string>& elements) {
  return Dataset::from_elements(universe, elements);
}

TEST(EnumerateSubsamplesTest, PoissonEnumeratesAllSubsets) {
  Dataset x = set_of({"a", "b"}, {"a", "b"});
  DiscreteMeasure half = enumerate_subsamples(SubsamplingScheme::poisson(0.5), x);
  EXPECT_EQ(half.support_size(), 4u);
  for (const std::string enc : {"", "a:1", "b:1", "a:1|b:1"}) {
    EXPECT_NEAR(half.mass(enc), 0.25, 1e-15) << enc;
  }
  DiscreteMeasure quarter =
      enumerate_subsamples(SubsamplingScheme::poisson(0.25), x);
  EXPECT_NEAR(quarter.mass("a:1"), 0.25 * 0.75, 1e-15);
  EXPECT_NEAR(quarter.mass(""), 0.75 * 0.75, 1e-15);
  EXPECT_TRUE(quarter.normalized());
}

TEST(EnumerateSubsamplesTest, WorEnumeratesCombinations) {
  Dataset x = set_of({"a", "b", "c"}, {"a", "b", "c"});
  DiscreteMeasure pairs = enumerate_subsamples(SubsamplingScheme::wor(3, 2), x);
  EXPECT_EQ(pairs.support_size(), 3u);
  for (const std::string enc : {"a:1|b:1", "a:1|c:1", "b:1|c:1"}) {
    EXPECT_NEAR(pairs.mass(enc), 1.0 / 3.0, 1e-15) << enc;
  }
}

TEST(EnumerateSubsamplesTest, WrEnumeratesDrawCountVectors) {
  Dataset x = set_of({"a", "b"}, {"a", "b"});
  DiscreteMeasure draws = enumerate_subsamples(SubsamplingScheme::wr(2, 2), x);
  EXPECT_EQ(draws.support_size(), 3u);
  EXPECT_NEAR(draws.mass("a:2"), 0.25, 1e-15);
  EXPECT_NEAR(draws.mass("a:1|b:1"), 0.5, 1e-15);
  EXPECT_NEAR(draws.mass("b:2"), 0.25, 1e-15);
}

TEST(EnumerateSubsamplesTest, ValidatesInstances) {
  std::vector<std::string> universe;
  std::vector<std::string> elements;
  for (int i = 0; i < 17; ++i) {
    universe.push_back("e" + std::to_string(i));
    elements.push_back("e" + std::to_string(i));
  }
  Dataset big = set_of(universe, elements);
  EXPECT_ERRC(enumerate_subsamples(SubsamplingScheme::poisson(0.5), big),
              Errc::kInstanceTooLarge);

  Dataset multiset = Dataset::from_elements({"a", "b"}, {"a", "a"});
  EXPECT_ERRC(enumerate_subsamples(SubsamplingScheme::poisson(0.5), multiset),
              Errc::kBadParams);

  Dataset pair = set_of({"a", "b"}, {"a", "b"});
  EXPECT_ERRC(enumerate_subsamples(SubsamplingScheme::wor(3, 2), pair),
              Errc::kBadParams);
}

TEST(MembershipKernelTest, ReportsPresenceWithRetentionP) {
  MechanismKernel kernel = membership_kernel("v", 0.75);
  EXPECT_NEAR(kernel("a:1|v:1").mass("1"), 0.75, 1e-15);
  EXPECT_NEAR(kernel("a:1").mass("1"), 0.25, 1e-15);
  EXPECT_NEAR(kernel("").mass("0"), 0.75, 1e-15);
  EXPECT_ERRC(membership_kernel("v", 0.3), Errc::kPOutOfRange);
}

TEST(ExactSubsampledDivergenceTest, PoissonMembershipMatchesClosedForm) {
  // For the membership mechanism under Poisson subsampling the exact
  // divergence at alpha' = 1 + gamma (e^eps - 1) is gamma ( p - e^eps(1-p) ).
  Dataset x = set_of({"a", "v"}, {"a", "v"});
  Dataset x_prime = x.with_removed("v");
  MechanismKernel kernel = membership_kernel("v", 0.75);
  double eps = std::log(2.0);
  double alpha_prime = 1.0 + 0.5 * (std::exp(eps) - 1.0);
  double exact = exact_subsampled_divergence(SubsamplingScheme::poisson(0.5),
                                             kernel, x, x_prime, alpha_prime);
  EXPECT_NEAR(exact, 0.5 * 0.25, 1e-15);
}

TEST(VerifyTightnessTest, PoissonBoundIsAttained) {
  Dataset x = set_of({"a", "v"}, {"a", "v"});
  TightnessInstance inst{x, x.with_removed("v"), "v"};
  TightnessReport rep =
      verify_tightness(SubsamplingScheme::poisson(0.3),
                       NeighborRelation::kRemoveAdd, 0.75, std::log(2.0), inst);
  EXPECT_TRUE(rep.asserts_equality);
  EXPECT_EQ(rep.eta, 0.3);
  EXPECT_NEAR(rep.gap, 0.0, 1e-12);
  EXPECT_NEAR(rep.bound, 0.3 * 0.25, 1e-13);
}

TEST(VerifyTightnessTest, WorBoundIsAttained) {
  Dataset x = set_of({"a", "b", "v", "w"}, {"a", "b", "v"});
  TightnessInstance inst{x, x.with_substituted("v", "w"), "v"};
  TightnessReport rep =
      verify_tightness(SubsamplingScheme::wor(3, 2),
                       NeighborRelation::kSubstitute, 0.9, 1.0, inst);
  EXPECT_TRUE(rep.asserts_equality);
  EXPECT_NEAR(rep.eta, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(rep.gap, 0.0, 1e-12);
}

TEST(VerifyTightnessTest, WrSubstituteBoundIsAttained) {
  Dataset x = set_of({"a", "v", "w"}, {"a", "v"});
  TightnessInstance inst{x, x.with_substituted("v", "w"), "v"};
  TightnessReport rep =
      verify_tightness(SubsamplingScheme::wr(2, 3),
                       NeighborRelation::kSubstitute, 0.75, 0.5, inst);
  EXPECT_TRUE(rep.asserts_equality);
  EXPECT_NEAR(rep.eta, 1.0 - std::pow(0.5, 3), 1e-15);
  EXPECT_NEAR(rep.gap, 0.0, 1e-12);
}

TEST(VerifyTightnessTest, WrRemoveAddPairsShrunkenPopulation) {
  // x' = x minus v has population n - 1; the enumeration must redraw its
  // m samples from that smaller pool.
  Dataset x = set_of({"a", "v"}, {"a", "v"});
  TightnessInstance inst{x, x.with_removed("v"), "v"};
  TightnessReport rep =
      verify_tightness(SubsamplingScheme::wr(2, 2),
                       NeighborRelation::kRemoveAdd, 0.75, std::log(2.0), inst);
  EXPECT_FALSE(rep.asserts_equality);
  EXPECT_NEAR(rep.eta, 0.75, 1e-15);
  EXPECT_GE(rep.gap, -1e-10);
  // The membership mechanism attains this bound as well.
  EXPECT_NEAR(rep.gap, 0.0, 1e-12);
}

TEST(VerifyTightnessTest, ValidatesMarkedElement) {
  Dataset x = set_of({"a", "v"}, {"a"});
  TightnessInstance missing{x, x, "v"};
  EXPECT_ERRC(verify_tightness(SubsamplingScheme::poisson(0.5),
                               NeighborRelation::kRemoveAdd, 0.75, 0.5, missing),
              Errc::kBadParams);
}

TEST(VerifyDominanceTest, ArbitraryKernelUnderPoisson) {
  Dataset x = set_of({"a", "v"}, {"a", "v"});
  Dataset x_prime = x.with_removed("v");
  MechanismKernel::Table table;
  table[""] = DiscreteMeasure::probability({{"u", 0.5}, {"w", 0.5}});
  table["a:1"] = DiscreteMeasure::probability({{"u", 0.8}, {"w", 0.2}});
  table["v:1"] = DiscreteMeasure::probability({{"u", 0.1}, {"w", 0.9}});
  table["a:1|v:1"] = DiscreteMeasure::probability({{"u", 0.3}, {"w", 0.7}});
  MechanismKernel kernel = MechanismKernel::from_table(table);
  for (double eps : {0.0, std::log(2.0), 1.0}) {
    TightnessReport rep =
        verify_dominance(SubsamplingScheme::poisson(0.4),
                         NeighborRelation::kRemoveAdd, kernel, x, x_prime, eps);
    EXPECT_FALSE(rep.asserts_equality);
    EXPECT_GE(rep.gap, -1e-10) << "eps = " << eps;
    EXPECT_EQ(rep.eta, 0.4);
  }
}

TEST(VerifyDominanceTest, WrHybridPairsShrunkenPopulation) {
  Dataset x = set_of({"a", "v"}, {"a", "v"});
  Dataset x_prime = x.with_removed("v");
  MechanismKernel::Table table;
  table["a:2"] = DiscreteMeasure::probability({{"u", 0.9}, {"w", 0.1}});
  table["a:1|v:1"] = DiscreteMeasure::probability({{"u", 0.4}, {"w", 0.6}});
  table["v:2"] = DiscreteMeasure::probability({{"u", 0.2}, {"w", 0.8}});
  MechanismKernel kernel = MechanismKernel::from_table(table);
  TightnessReport rep =
      verify_dominance(SubsamplingScheme::wr(2, 2),
                       NeighborRelation::kRemoveAdd, kernel, x, x_prime, 0.5);
  EXPECT_GE(rep.gap, -1e-10);
  EXPECT_NEAR(rep.eta, 0.75, 1e-15);
}

TEST(MinCostCouplingTest, AttainsTotalVariationUnderZeroOneCost) {
  DiscreteMeasure nu = DiscreteMeasure::bernoulli(0.7);
  DiscreteMeasure nu_prime = DiscreteMeasure::bernoulli(0.5);
  CostedCoupling c = min_cost_coupling(
      nu, nu_prime,
      [](const std::string& a, const std::string& b) { return a == b ? 0.0 : 1.0; });
  EXPECT_NEAR(c.value, 0.2, 1e-12);
  // The plan is a genuine coupling: marginals recompose.
  double first_on_one = 0.0;
  double total = 0.0;
  for (const auto& [from, to, mass] : c.plan.entries) {
    if (from == "1") first_on_one += mass;
    total += mass;
  }
  EXPECT_NEAR(first_on_one, 0.7, 1e-12);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(MinCostCouplingTest, ValidatesMarginals) {
  DiscreteMeasure nu = DiscreteMeasure::bernoulli(0.5);
  DiscreteMeasure off = DiscreteMeasure::measure({{"0", 0.5}, {"1", 0.4}});
  EXPECT_ERRC(min_cost_coupling(nu, off, [](const std::string&, const std::string&) {
                return 0.0;
              }),
              Errc::kInfeasibleMarginals);
}

TEST(IsDistanceCompatibleTest, WorStyleResidualsAreCompatible) {
  // WOR on {a, v} vs {a, w} with one draw: residuals are point masses at
  // distance one.
  DiscreteMeasure omega1 = DiscreteMeasure::point_mass("v:1");
  DiscreteMeasure omega1_prime = DiscreteMeasure::point_mass("w:1");
  EXPECT_TRUE(is_distance_compatible(omega1, omega1_prime,
                                     NeighborRelation::kSubstitute));
}

TEST(IsDistanceCompatibleTest, PoissonSubstitutionResidualsAreNot) {
  // Poisson on x = {a, v} vs x' = {a, w}: the v-containing residual includes
  // a size-2 subsample, but the overlap part only holds subsamples of size
  // <= 1, so no substitution-distance-minimal coupling exists.
  Dataset x = Dataset::from_elements({"a", "v", "w"}, {"a", "v"});
  Dataset x_prime = Dataset::from_elements({"a", "v", "w"}, {"a", "w"});
  DiscreteMeasure omega =
      enumerate_subsamples(SubsamplingScheme::poisson(0.5), x);
  DiscreteMeasure omega_prime =
      enumerate_subsamples(SubsamplingScheme::poisson(0.5), x_prime);
  CouplingDecomposition parts = maximal_coupling(omega, omega_prime);
  EXPECT_FALSE(is_distance_compatible(parts.omega1, parts.omega0,
                                      NeighborRelation::kSubstitute));
  // The two residuals themselves pair up fine: v-subsamples map to the
  // matching w-subsamples one substitution away.
  EXPECT_TRUE(is_distance_compatible(parts.omega1, parts.omega1_prime,
                                     NeighborRelation::kSubstitute));
}

}  // namespace
}  // namespace subsamp
