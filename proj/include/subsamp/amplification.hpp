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

#ifndef SUBSAMP_AMPLIFICATION_HPP_
#define SUBSAMP_AMPLIFICATION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "subsamp/profiles.hpp"

namespace subsamp {

enum class NeighborRelation { kRemoveAdd, kSubstitute };

// Subsampling scheme over a population of known size (WOR / WR) or with a
// per-element inclusion probability (Poisson).
struct SubsamplingScheme {
  enum class Kind { kPoisson, kWor, kWr };

  Kind kind = Kind::kPoisson;
  double gamma = 0.0;  // Poisson inclusion probability, in (0, 1).
  long n = 0;          // Population size, WOR / WR.
  long m = 0;          // Draws, WOR: 1 <= m <= n; WR: m >= 1.

  static SubsamplingScheme poisson(double gamma);
  static SubsamplingScheme wor(long n, long m);
  static SubsamplingScheme wr(long n, long m);

  std::string label() const;
};

// eps' = log(1 + eta (e^eps - 1)) for eta in (0, 1], eps >= 0.
double amplified_epsilon(double eta, double eps);

// Total-variation contraction factor of the scheme under the relation:
// Poisson/remove-add: gamma; WOR/substitute: m/n; WR (both relations):
// 1 - (1 - 1/n)^m; Poisson/substitute: gamma. WOR/remove-add changes the
// subsample size and is rejected with kUnsupportedPairing.
double scheme_eta(const SubsamplingScheme& scheme, NeighborRelation relation);

// Mixture weights of the WR subsample conditioned on containing the marked
// element: w_k = C(m, k) (1/n)^k (1 - 1/n)^{m-k} for k = 1..m. They sum to
// scheme_eta(wr).
std::vector<std::pair<long, double>> wr_weights(long n, long m);

// One evaluated point of an amplification bound.
struct AmplificationBound {
  double eps_in = 0.0;
  double eps_out = 0.0;
  double delta_out = 0.0;
  double eta = 0.0;
  // Per-k weights actually used (WR family bounds only).
  std::vector<std::pair<long, double>> weights;
  // True when some term needed the profile below eps = 0 and only the
  // conservative fallback was available there; the bound is still valid,
  // just not tight.
  bool conservative_negative_eps = false;
};

// Group profiles delta_{M,k} for k = 1..m, either supplied explicitly or
// derived from a base profile.
class GroupProfileFamily {
 public:
  // per_k[i] is the profile of the (i+1)-fold group relation.
  static GroupProfileFamily from_profiles(std::vector<PrivacyProfile> per_k);
  static GroupProfileFamily black_box(PrivacyProfile base);
  static GroupProfileFamily white_box(PrivacyProfile base);

  // delta_{M,k}(eps); throws kMissingGroupProfile when an explicit family
  // has no entry for k.
  double delta(long k, double eps) const;

  bool explicit_family() const { return !per_k_.empty(); }
  std::size_t size() const { return per_k_.size(); }

 private:
  GroupProfileFamily() = default;

  enum class Mode { kExplicit, kBlackBox, kWhiteBox };
  Mode mode_ = Mode::kExplicit;
  std::vector<PrivacyProfile> per_k_;
  std::optional<PrivacyProfile> base_;
};

// Poisson subsampling under remove-add: delta' = gamma * delta(eps) at
// eps' = log(1 + gamma (e^eps - 1)).
AmplificationBound amplify_poisson(const PrivacyProfile& profile, double gamma,
                                   double eps);

// Sampling m of n without replacement under substitution: delta' =
// (m/n) * delta(eps) at eps' with eta = m/n.
AmplificationBound amplify_wor(const PrivacyProfile& profile, long n, long m,
                               double eps);

// Sampling m of n with replacement under substitution: the marked element
// appears k times with weight w_k, and each k contributes via the k-fold
// group profile: delta' = sum_k w_k delta_{M,k}(eps) at eps' with
// eta = 1 - (1 - 1/n)^m.
AmplificationBound amplify_wr(const GroupProfileFamily& family, long n, long m,
                              double eps);

// Sampling with replacement under remove-add, where the removed element's
// draws are redistributed over the remaining population. Same weights and
// eta as amplify_wr.
AmplificationBound amplify_wr_hybrid(const GroupProfileFamily& family, long n,
                                     long m, double eps);

// Ingredients of the Poisson-substitution bound, exposed for testing.
struct PoissonSubstitutionTerms {
  double eps_prime = 0.0;
  double beta = 0.0;  // e^{eps'} / e^{eps}.
  // gamma_tilde[k-1] = C(n-1, k-1) gamma^{k-1} (1-gamma)^{n-k}, k = 1..n.
  std::vector<double> gamma_tilde;
  // eps_k = eps + log(gamma/(1-gamma) * (n-k)/k), k = 1..n-1.
  std::vector<double> eps_k;
};

PoissonSubstitutionTerms poisson_substitution_terms(long n, double gamma,
                                                    double eps);

// Poisson subsampling under substitution on datasets of size n:
//   delta' = gamma beta delta(eps)
//          + gamma (1-beta) (sum_{k=1}^{n-1} gamma_tilde_k delta(eps_k)
//                            + gamma_tilde_n)
// at eps' with eta = gamma. The eps_k can be negative; profiles without
// exact negative-eps support make the result conservative (flagged).
AmplificationBound amplify_poisson_substitution(const PrivacyProfile& profile,
                                                long n, double gamma,
                                                double eps);

enum class GroupMode { kNone, kBlackBox, kWhiteBox };

// Evaluates the applicable bound on a grid of base-epsilon values and
// returns the amplified profile as a tabulated curve over eps'. The curve is
// monotonized by a running minimum, which preserves validity (an upper bound
// at a smaller eps' also bounds every larger eps'). WR schemes need a group
// mode; Poisson under substitution needs the dataset size.
PrivacyProfile amplified_profile_curve(const SubsamplingScheme& scheme,
                                       NeighborRelation relation,
                                       const PrivacyProfile& base,
                                       GroupMode group_mode,
                                       const std::vector<double>& eps_grid,
                                       std::optional<long> n_substitution = {});

}  // namespace subsamp

#endif  // SUBSAMP_AMPLIFICATION_HPP_
