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

#include "subsamp/divergence.hpp"

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "subsamp/kernel.hpp"
#include "subsamp/measure.hpp"
#include "testutil.hpp"

namespace subsamp {
namespace {

// Independent oracle: the divergence as a supremum over events. Enumerates
// every subset S of the joint support and maximizes mu(S) - alpha * mu'(S).
double sup_over_events(const DiscreteMeasure& mu, const DiscreteMeasure& mu_prime,
                       double alpha) {
  std::set<std::string> support;
  for (const auto& [z, m] : mu.entries()) support.insert(z);
  for (const auto& [z, m] : mu_prime.entries()) support.insert(z);
  std::vector<std::string> outcomes(support.begin(), support.end());
  double best = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << outcomes.size()); ++mask) {
    double value = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (mask & (std::size_t{1} << i)) {
        value += mu.mass(outcomes[i]) - alpha * mu_prime.mass(outcomes[i]);
      }
    }
    if (value > best) best = value;
  }
  return best;
}

TEST(HockeyStickTest, MatchesEventSupremumOracle) {
  DiscreteMeasure mu =
      DiscreteMeasure::probability({{"a", 0.5}, {"b", 0.3}, {"c", 0.2}});
  DiscreteMeasure mu_prime =
      DiscreteMeasure::probability({{"a", 0.1}, {"b", 0.2}, {"d", 0.7}});
  for (double alpha : {0.25, 0.5, 1.0, 1.5, std::exp(1.0), 4.0, 20.0}) {
    EXPECT_NEAR(hockey_stick(mu, mu_prime, alpha),
                sup_over_events(mu, mu_prime, alpha), 1e-15)
        << "alpha = " << alpha;
  }
}

TEST(HockeyStickTest, RandomizedResponseClosedForm) {
  // Two-outcome pair: D_{e^eps} = p - e^eps (1 - p) while e^eps <= p/(1-p).
  DiscreteMeasure mu = DiscreteMeasure::bernoulli(0.75);
  DiscreteMeasure mu_prime = DiscreteMeasure::bernoulli(0.25);
  EXPECT_NEAR(hockey_stick(mu, mu_prime, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(hockey_stick(mu, mu_prime, 2.0), 0.25, 1e-15);
  EXPECT_EQ(hockey_stick(mu, mu_prime, 3.0), 0.0);
  EXPECT_EQ(hockey_stick(mu, mu_prime, 10.0), 0.0);
}

TEST(HockeyStickTest, UnnormalizedIdentities) {
  DiscreteMeasure nu = DiscreteMeasure::measure({{"a", 0.3}, {"b", 0.4}});
  DiscreteMeasure zero;
  // Against the zero measure the divergence is the total mass, any alpha.
  EXPECT_NEAR(hockey_stick(nu, zero, 0.5), 0.7, 1e-15);
  EXPECT_NEAR(hockey_stick(nu, zero, 7.0), 0.7, 1e-15);

  // Scaling both arguments scales the divergence.
  DiscreteMeasure nu_prime = DiscreteMeasure::measure({{"a", 0.1}, {"c", 0.2}});
  double base = hockey_stick(nu, nu_prime, 1.5);
  EXPECT_NEAR(hockey_stick(scale(nu, 0.25), scale(nu_prime, 0.25), 1.5),
              0.25 * base, 1e-15);
}

TEST(HockeyStickTest, RejectsNonPositiveAlpha) {
  DiscreteMeasure b = DiscreteMeasure::bernoulli(0.5);
  EXPECT_ERRC(hockey_stick(b, b, 0.0), Errc::kNonPositiveAlpha);
  EXPECT_ERRC(hockey_stick(b, b, -1.0), Errc::kNonPositiveAlpha);
}

TEST(TotalVariationTest, MatchesHockeyStickAtAlphaOne) {
  DiscreteMeasure p = DiscreteMeasure::bernoulli(0.7);
  DiscreteMeasure q = DiscreteMeasure::bernoulli(0.5);
  EXPECT_NEAR(total_variation(p, q), 0.2, 1e-15);
  EXPECT_NEAR(total_variation(p, q), hockey_stick(p, q, 1.0), 1e-15);
  EXPECT_ERRC(total_variation(DiscreteMeasure::measure({{"a", 0.5}}), q),
              Errc::kNotNormalized);
}

TEST(MaximalCouplingTest, HandWorkedBernoulliPair) {
  DiscreteMeasure nu = DiscreteMeasure::bernoulli(0.7);
  DiscreteMeasure nu_prime = DiscreteMeasure::bernoulli(0.5);
  CouplingDecomposition c = maximal_coupling(nu, nu_prime);
  EXPECT_FALSE(c.degenerate);
  EXPECT_NEAR(c.eta, 0.2, 1e-15);
  // Overlap min(nu, nu') = {1: 0.5, 0: 0.3}, renormalized by 0.8.
  EXPECT_NEAR(c.omega0.mass("1"), 0.625, 1e-15);
  EXPECT_NEAR(c.omega0.mass("0"), 0.375, 1e-15);
  EXPECT_NEAR(c.omega1.mass("1"), 1.0, 1e-15);
  EXPECT_NEAR(c.omega1_prime.mass("0"), 1.0, 1e-15);
}

TEST(MaximalCouplingTest, RecomposesBothMarginals) {
  DiscreteMeasure nu =
      DiscreteMeasure::probability({{"a", 0.5}, {"b", 0.3}, {"c", 0.2}});
  DiscreteMeasure nu_prime =
      DiscreteMeasure::probability({{"a", 0.2}, {"b", 0.3}, {"d", 0.5}});
  CouplingDecomposition c = maximal_coupling(nu, nu_prime);
  DiscreteMeasure rebuilt = mix(1.0 - c.eta, c.omega0, c.eta, c.omega1);
  DiscreteMeasure rebuilt_prime = mix(1.0 - c.eta, c.omega0, c.eta, c.omega1_prime);
  for (const std::string z : {"a", "b", "c", "d"}) {
    EXPECT_NEAR(rebuilt.mass(z), nu.mass(z), 1e-12) << z;
    EXPECT_NEAR(rebuilt_prime.mass(z), nu_prime.mass(z), 1e-12) << z;
  }
}

TEST(MaximalCouplingTest, IdenticalInputsAreDegenerateAtZero) {
  DiscreteMeasure nu = DiscreteMeasure::bernoulli(0.4);
  CouplingDecomposition c = maximal_coupling(nu, nu);
  EXPECT_TRUE(c.degenerate);
  EXPECT_EQ(c.eta, 0.0);
  EXPECT_NEAR(c.omega0.mass("1"), 0.4, 1e-15);
  EXPECT_TRUE(c.omega1.empty());
}

TEST(MaximalCouplingTest, DisjointInputsAreDegenerateAtOne) {
  DiscreteMeasure nu = DiscreteMeasure::point_mass("a");
  DiscreteMeasure nu_prime = DiscreteMeasure::point_mass("b");
  CouplingDecomposition c = maximal_coupling(nu, nu_prime);
  EXPECT_TRUE(c.degenerate);
  EXPECT_EQ(c.eta, 1.0);
  EXPECT_TRUE(c.omega0.empty());
  EXPECT_NEAR(c.omega1.mass("a"), 1.0, 1e-15);
  EXPECT_NEAR(c.omega1_prime.mass("b"), 1.0, 1e-15);
}

TEST(MaximalCouplingTest, RequiresProbabilities) {
  DiscreteMeasure nu = DiscreteMeasure::measure({{"a", 0.5}});
  EXPECT_ERRC(maximal_coupling(nu, DiscreteMeasure::bernoulli(0.5)),
              Errc::kNotNormalized);
}

TEST(AdvancedJointConvexityTest, IdentityHoldsOnHandInstance) {
  DiscreteMeasure mu0 =
      DiscreteMeasure::probability({{"a", 0.6}, {"b", 0.4}});
  DiscreteMeasure mu1 =
      DiscreteMeasure::probability({{"a", 0.1}, {"c", 0.9}});
  DiscreteMeasure mu1_prime =
      DiscreteMeasure::probability({{"b", 0.3}, {"c", 0.7}});
  for (double eta : {0.05, 0.3, 0.9}) {
    for (double alpha : {1.0, 2.0, std::exp(1.0), 10.0}) {
      AjcRecord rec = advanced_joint_convexity(mu0, mu1, mu1_prime, eta, alpha);
      EXPECT_NEAR(rec.alpha_prime, 1.0 + eta * (alpha - 1.0), 1e-15);
      EXPECT_NEAR(rec.beta, rec.alpha_prime / alpha, 1e-15);
      EXPECT_NEAR(rec.lhs, rec.rhs, 1e-14)
          << "eta = " << eta << " alpha = " << alpha;
    }
  }
}

TEST(AdvancedJointConvexityTest, ValidatesInputs) {
  DiscreteMeasure b = DiscreteMeasure::bernoulli(0.5);
  EXPECT_ERRC(advanced_joint_convexity(b, b, b, 1.5, 2.0), Errc::kEtaOutOfRange);
  EXPECT_ERRC(advanced_joint_convexity(b, b, b, -0.1, 2.0), Errc::kEtaOutOfRange);
  EXPECT_ERRC(advanced_joint_convexity(b, b, b, 0.5, 0.5), Errc::kBadParams);
  EXPECT_ERRC(
      advanced_joint_convexity(DiscreteMeasure::measure({{"a", 0.5}}), b, b, 0.5, 2.0),
      Errc::kNotNormalized);
}

TEST(PushforwardTest, AveragesKernelRowsByInputMass) {
  DiscreteMeasure omega =
      DiscreteMeasure::probability({{"x1", 0.5}, {"x2", 0.5}});
  MechanismKernel::Table table;
  table["x1"] = DiscreteMeasure::point_mass("o");
  table["x2"] = DiscreteMeasure::probability({{"o", 0.3}, {"q", 0.7}});
  MechanismKernel kernel = MechanismKernel::from_table(table);
  DiscreteMeasure out = pushforward(omega, kernel);
  EXPECT_TRUE(out.normalized());
  EXPECT_NEAR(out.mass("o"), 0.65, 1e-15);
  EXPECT_NEAR(out.mass("q"), 0.35, 1e-15);
}

}  // namespace
}  // namespace subsamp
