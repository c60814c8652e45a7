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

#include "subsamp/amplification.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "testutil.hpp"

namespace subsamp {
namespace {

TEST(SubsamplingSchemeTest, FactoriesValidateAndLabel) {
  EXPECT_EQ(SubsamplingScheme::poisson(0.1).label(), "poisson_gamma0.1");
  EXPECT_EQ(SubsamplingScheme::wor(100, 10).label(), "wor_n100_m10");
  EXPECT_EQ(SubsamplingScheme::wr(6, 3).label(), "wr_n6_m3");
  EXPECT_ERRC(SubsamplingScheme::poisson(0.0), Errc::kBadParams);
  EXPECT_ERRC(SubsamplingScheme::poisson(1.0), Errc::kBadParams);
  EXPECT_ERRC(SubsamplingScheme::wor(4, 5), Errc::kBadParams);
  EXPECT_ERRC(SubsamplingScheme::wor(4, 0), Errc::kBadParams);
  EXPECT_ERRC(SubsamplingScheme::wr(0, 1), Errc::kBadParams);
}

TEST(AmplifiedEpsilonTest, ClosedFormAndEdges) {
  EXPECT_NEAR(amplified_epsilon(0.1, 1.0), 0.15856507874042911, 1e-15);
  EXPECT_EQ(amplified_epsilon(1.0, 2.5), 2.5);
  EXPECT_EQ(amplified_epsilon(0.3, 0.0), 0.0);
  EXPECT_ERRC(amplified_epsilon(0.0, 1.0), Errc::kEtaOutOfRange);
  EXPECT_ERRC(amplified_epsilon(1.5, 1.0), Errc::kEtaOutOfRange);
  EXPECT_ERRC(amplified_epsilon(0.5, -1.0), Errc::kNegativeEpsilon);
}

TEST(SchemeEtaTest, PerSchemeContractionFactors) {
  EXPECT_EQ(scheme_eta(SubsamplingScheme::poisson(0.3), NeighborRelation::kRemoveAdd),
            0.3);
  EXPECT_EQ(scheme_eta(SubsamplingScheme::poisson(0.3), NeighborRelation::kSubstitute),
            0.3);
  EXPECT_NEAR(scheme_eta(SubsamplingScheme::wor(100, 10), NeighborRelation::kSubstitute),
              0.1, 1e-15);
  EXPECT_NEAR(scheme_eta(SubsamplingScheme::wr(10, 5), NeighborRelation::kSubstitute),
              0.40951, 1e-15);
  EXPECT_NEAR(scheme_eta(SubsamplingScheme::wr(10, 5), NeighborRelation::kRemoveAdd),
              0.40951, 1e-15);
  EXPECT_ERRC(
      scheme_eta(SubsamplingScheme::wor(100, 10), NeighborRelation::kRemoveAdd),
      Errc::kUnsupportedPairing);
}

TEST(WrWeightsTest, BinomialOccupancyWeights) {
  std::vector<std::pair<long, double>> w = wr_weights(10, 5);
  ASSERT_EQ(w.size(), 5u);
  const double expected[] = {0.32805, 0.0729, 0.0081, 0.00045, 1e-5};
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_EQ(w[i].first, static_cast<long>(i) + 1);
    EXPECT_NEAR(w[i].second, expected[i], 1e-15);
    sum += w[i].second;
  }
  EXPECT_NEAR(sum, 0.40951, 1e-15);
  EXPECT_ERRC(wr_weights(0, 3), Errc::kBadParams);
}

TEST(AmplifyPoissonTest, ScalesDeltaByGamma) {
  AmplificationBound b = amplify_poisson(rr_profile(0.75), 0.1, std::log(2.0));
  EXPECT_NEAR(b.eps_out, 0.09531017980432486, 1e-15);
  EXPECT_NEAR(b.delta_out, 0.025, 1e-15);
  EXPECT_EQ(b.eta, 0.1);
  EXPECT_FALSE(b.conservative_negative_eps);

  AmplificationBound lap = amplify_poisson(laplace_profile(1.0), 0.1, std::log(2.0));
  EXPECT_NEAR(lap.delta_out, 0.1 * 0.1422361150392932, 1e-15);
  EXPECT_ERRC(amplify_poisson(rr_profile(0.75), 0.0, 1.0), Errc::kBadParams);
  EXPECT_ERRC(amplify_poisson(rr_profile(0.75), 0.1, -1.0), Errc::kNegativeEpsilon);
}

TEST(AmplifyWorTest, MatchesPoissonAtEqualEta) {
  PrivacyProfile base = laplace_profile(1.0);
  for (double eps : {0.0, std::log(2.0), 1.0}) {
    AmplificationBound wor = amplify_wor(base, 100, 10, eps);
    AmplificationBound poisson = amplify_poisson(base, 0.1, eps);
    EXPECT_DOUBLE_EQ(wor.eps_out, poisson.eps_out);
    EXPECT_DOUBLE_EQ(wor.delta_out, poisson.delta_out);
  }
  EXPECT_ERRC(amplify_wor(base, 4, 5, 1.0), Errc::kBadParams);
}

TEST(AmplifyWrTest, WhiteboxFamilyMatchesFrozenValue) {
  GroupProfileFamily family = GroupProfileFamily::white_box(laplace_profile(0.5));
  AmplificationBound b = amplify_wr(family, 10, 5, 1.0);
  EXPECT_NEAR(b.delta_out, 0.0019740511947235254, 1e-15);
  EXPECT_NEAR(b.eps_out, amplified_epsilon(0.40951, 1.0), 1e-15);
  ASSERT_EQ(b.weights.size(), 5u);
  EXPECT_NEAR(b.weights[0].second, 0.32805, 1e-15);
}

TEST(AmplifyWrTest, ExplicitFamilyWeightsTheGroupProfiles) {
  // Same profile for every k collapses the sum to eta * delta(eps).
  GroupProfileFamily family =
      GroupProfileFamily::from_profiles({rr_profile(0.75), rr_profile(0.75)});
  AmplificationBound b = amplify_wr(family, 2, 2, std::log(2.0));
  EXPECT_NEAR(b.eta, 0.75, 1e-15);
  EXPECT_NEAR(b.delta_out, 0.75 * 0.25, 1e-15);
}

TEST(AmplifyWrTest, HybridUsesSameWeights) {
  GroupProfileFamily family = GroupProfileFamily::white_box(laplace_profile(1.0));
  AmplificationBound wr = amplify_wr(family, 10, 5, 0.7);
  AmplificationBound hybrid = amplify_wr_hybrid(family, 10, 5, 0.7);
  EXPECT_DOUBLE_EQ(wr.delta_out, hybrid.delta_out);
  EXPECT_DOUBLE_EQ(wr.eps_out, hybrid.eps_out);
}

TEST(GroupProfileFamilyTest, ModesAgreeWithFreeFunctions) {
  PrivacyProfile base = laplace_profile(1.0);
  GroupProfileFamily bb = GroupProfileFamily::black_box(base);
  GroupProfileFamily wb = GroupProfileFamily::white_box(base);
  for (long k : {1L, 2L, 3L}) {
    for (double eps : {0.0, 0.5, 1.4}) {
      EXPECT_DOUBLE_EQ(bb.delta(k, eps), group_blackbox(base, k, eps));
      EXPECT_DOUBLE_EQ(wb.delta(k, eps), group_whitebox(base, k)(eps));
    }
  }
  EXPECT_FALSE(bb.explicit_family());
  EXPECT_ERRC(bb.delta(0, 1.0), Errc::kBadK);
  EXPECT_ERRC(GroupProfileFamily::white_box(rr_profile(0.75)),
              Errc::kUnsupportedFamily);
  EXPECT_ERRC(GroupProfileFamily::from_profiles({}), Errc::kBadParams);

  GroupProfileFamily explicit_one = GroupProfileFamily::from_profiles({base});
  EXPECT_TRUE(explicit_one.explicit_family());
  EXPECT_EQ(explicit_one.size(), 1u);
  EXPECT_ERRC(explicit_one.delta(2, 1.0), Errc::kMissingGroupProfile);
  EXPECT_ERRC(amplify_wr(explicit_one, 4, 2, 1.0), Errc::kMissingGroupProfile);
}

TEST(PoissonSubstitutionTest, HandWorkedTermsAtNTwo) {
  PoissonSubstitutionTerms t = poisson_substitution_terms(2, 0.5, std::log(2.0));
  EXPECT_NEAR(t.eps_prime, std::log(1.5), 1e-15);
  EXPECT_NEAR(t.beta, 0.75, 1e-15);
  ASSERT_EQ(t.gamma_tilde.size(), 2u);
  EXPECT_NEAR(t.gamma_tilde[0], 0.5, 1e-15);
  EXPECT_NEAR(t.gamma_tilde[1], 0.5, 1e-15);
  ASSERT_EQ(t.eps_k.size(), 1u);
  EXPECT_NEAR(t.eps_k[0], std::log(2.0), 1e-15);
}

TEST(PoissonSubstitutionTest, HandWorkedBoundAtNTwo) {
  // gamma beta delta(eps) + gamma (1-beta) (gt_1 delta(eps_1) + gt_2)
  //   = .5*.75*.25 + .5*.25*(.5*.25 + .5) = 0.171875.
  AmplificationBound b =
      amplify_poisson_substitution(rr_profile(0.75), 2, 0.5, std::log(2.0));
  EXPECT_NEAR(b.delta_out, 0.171875, 1e-15);
  EXPECT_NEAR(b.eps_out, std::log(1.5), 1e-15);
  EXPECT_EQ(b.eta, 0.5);
  EXPECT_FALSE(b.conservative_negative_eps);
}

TEST(PoissonSubstitutionTest, NeverExceedsGamma) {
  // With a profile pinned at 1 the bound collapses to its gamma cap.
  PrivacyProfile ones = tabulated_profile({{0.0, 1.0}});
  AmplificationBound b = amplify_poisson_substitution(ones, 5, 0.3, 0.2);
  EXPECT_LE(b.delta_out, 0.3 + 1e-15);
}

TEST(PoissonSubstitutionTest, FlagsConservativeNegativeEpsilonTerms) {
  // At eps = 0 and gamma = 0.2 the k = 1 term needs the profile at
  // ln(0.25 * 2) < 0, which randomized response only bounds conservatively.
  AmplificationBound rr =
      amplify_poisson_substitution(rr_profile(0.75), 3, 0.2, 0.0);
  EXPECT_TRUE(rr.conservative_negative_eps);
  AmplificationBound lap =
      amplify_poisson_substitution(laplace_profile(1.0), 3, 0.2, 0.0);
  EXPECT_FALSE(lap.conservative_negative_eps);
  EXPECT_ERRC(amplify_poisson_substitution(rr_profile(0.75), 1, 0.2, 0.0),
              Errc::kBadParams);
}

TEST(AmplifiedProfileCurveTest, PoissonCurveMatchesPointwiseBound) {
  PrivacyProfile base = laplace_profile(1.0);
  std::vector<double> grid = {0.0, std::log(2.0), 1.0};
  PrivacyProfile curve =
      amplified_profile_curve(SubsamplingScheme::poisson(0.2),
                              NeighborRelation::kRemoveAdd, base,
                              GroupMode::kNone, grid);
  EXPECT_EQ(curve.kind(), PrivacyProfile::Kind::kTabulated);
  for (double eps : grid) {
    AmplificationBound b = amplify_poisson(base, 0.2, eps);
    EXPECT_NEAR(curve(b.eps_out), b.delta_out, 1e-15) << "eps = " << eps;
  }
  const auto& pts = curve.points();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    EXPECT_LE(pts[i].second, pts[i - 1].second);
  }
}

TEST(AmplifiedProfileCurveTest, ValidatesItsInputs) {
  PrivacyProfile base = laplace_profile(1.0);
  EXPECT_ERRC(amplified_profile_curve(SubsamplingScheme::poisson(0.2),
                                      NeighborRelation::kRemoveAdd, base,
                                      GroupMode::kNone, {1.0, 0.5}),
              Errc::kBadParams);
  EXPECT_ERRC(amplified_profile_curve(SubsamplingScheme::poisson(0.2),
                                      NeighborRelation::kRemoveAdd, base,
                                      GroupMode::kNone, {}),
              Errc::kBadParams);
  EXPECT_ERRC(amplified_profile_curve(SubsamplingScheme::wr(10, 3),
                                      NeighborRelation::kSubstitute, base,
                                      GroupMode::kNone, {0.0, 1.0}),
              Errc::kBadParams);
  EXPECT_ERRC(amplified_profile_curve(SubsamplingScheme::poisson(0.2),
                                      NeighborRelation::kSubstitute, base,
                                      GroupMode::kNone, {0.0, 1.0}),
              Errc::kBadParams);
  EXPECT_ERRC(amplified_profile_curve(SubsamplingScheme::wor(10, 2),
                                      NeighborRelation::kRemoveAdd, base,
                                      GroupMode::kNone, {0.0, 1.0}),
              Errc::kUnsupportedPairing);
}

TEST(AmplifiedProfileCurveTest, WrGroupModesAndPoissonSubstitution) {
  PrivacyProfile base = laplace_profile(1.0);
  std::vector<double> grid = {0.0, 0.5, 1.0};
  PrivacyProfile wr_curve =
      amplified_profile_curve(SubsamplingScheme::wr(10, 3),
                              NeighborRelation::kSubstitute, base,
                              GroupMode::kWhiteBox, grid);
  GroupProfileFamily family = GroupProfileFamily::white_box(base);
  AmplificationBound direct = amplify_wr(family, 10, 3, 1.0);
  EXPECT_NEAR(wr_curve(direct.eps_out), direct.delta_out, 1e-15);

  PrivacyProfile sub_curve =
      amplified_profile_curve(SubsamplingScheme::poisson(0.2),
                              NeighborRelation::kSubstitute, base,
                              GroupMode::kNone, grid, 5);
  EXPECT_EQ(sub_curve.kind(), PrivacyProfile::Kind::kTabulated);
  // The curve is the running minimum of the pointwise bound.
  AmplificationBound s1 = amplify_poisson_substitution(base, 5, 0.2, 1.0);
  EXPECT_LE(sub_curve(s1.eps_out), s1.delta_out + 1e-15);
}

}  // namespace
}  // namespace subsamp
