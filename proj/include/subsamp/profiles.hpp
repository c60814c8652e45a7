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

#ifndef SUBSAMP_PROFILES_HPP_
#define SUBSAMP_PROFILES_HPP_

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "subsamp/kernel.hpp"

namespace subsamp {

// Standard normal CDF, absolute error below 1e-12 across the real line.
double std_normal_cdf(double t);

// Privacy profile: eps -> smallest delta such that the mechanism pair is
// (eps, delta)-indistinguishable. Non-increasing in eps, values in [0, 1].
//
// Closed-form and empirical profiles evaluate at any real eps. Randomized
// response is only defined for eps >= 0; below that the evaluation falls
// back to the always-valid upper bound min(1, delta(0) + 1 - e^eps), and
// supports_negative_eps() reports false so callers can surface the
// conservatism. Tabulated profiles behave the same below their first knot.
class PrivacyProfile {
 public:
  enum class Kind { kLaplace, kGaussian, kRandomizedResponse, kTabulated,
                    kEmpirical };

  double evaluate(double eps) const;
  double operator()(double eps) const { return evaluate(eps); }

  Kind kind() const { return kind_; }

  // True when evaluate(eps) is exact (not just an upper bound) for eps < 0.
  bool supports_negative_eps() const;

  // Noise scale parameter; kLaplace / kGaussian only.
  double theta() const;
  // Response-retention probability; kRandomizedResponse only.
  double p() const;
  // Knots, strictly increasing in eps; kTabulated only.
  const std::vector<std::pair<double, double>>& points() const;

  // Locations where the profile is not smooth (useful for quadrature
  // splitting). Empty when unknown or everywhere-smooth.
  std::vector<double> breakpoints() const;

  friend PrivacyProfile laplace_profile(double theta);
  friend PrivacyProfile gaussian_profile(double theta);
  friend PrivacyProfile rr_profile(double p);
  friend PrivacyProfile tabulated_profile(
      std::vector<std::pair<double, double>> points);
  friend PrivacyProfile empirical_profile_of(
      MechanismKernel kernel,
      std::vector<std::pair<std::string, std::string>> pairs);

 private:
  struct LaplaceForm { double theta; };
  struct GaussianForm { double theta; };
  struct RrForm { double p; };
  struct TabulatedForm { std::vector<std::pair<double, double>> points; };
  struct EmpiricalForm {
    MechanismKernel kernel;
    std::vector<std::pair<std::string, std::string>> pairs;
  };

  PrivacyProfile(Kind kind,
                 std::variant<LaplaceForm, GaussianForm, RrForm, TabulatedForm,
                              EmpiricalForm> form)
      : kind_(kind), form_(std::move(form)) {}

  Kind kind_;
  std::variant<LaplaceForm, GaussianForm, RrForm, TabulatedForm, EmpiricalForm>
      form_;
};

// delta(eps) = max(0, 1 - e^{(eps - theta) / 2}) for eps >= -theta and
// 1 - e^eps below; theta > 0.
PrivacyProfile laplace_profile(double theta);

// delta(eps) = Phi(theta/2 - eps/theta) - e^eps Phi(-theta/2 - eps/theta);
// theta > 0.
PrivacyProfile gaussian_profile(double theta);

// delta(eps) = max(0, p - e^eps (1 - p)) for eps >= 0; p in [1/2, 1].
PrivacyProfile rr_profile(double p);

// Right-continuous step profile through the given knots. Knots must be
// strictly increasing in eps with delta in [0, 1] non-increasing. Past the
// last knot the profile stays at the last delta.
PrivacyProfile tabulated_profile(std::vector<std::pair<double, double>> points);

// Worst hockey-stick divergence over the listed input pairs, evaluated at
// alpha = e^eps. Pairs are (encoded input, encoded input); the list must be
// non-empty. Directions are taken as given: include both orders explicitly
// when symmetry is wanted.
PrivacyProfile empirical_profile_of(
    MechanismKernel kernel,
    std::vector<std::pair<std::string, std::string>> pairs);

double empirical_profile(
    const MechanismKernel& kernel,
    const std::vector<std::pair<std::string, std::string>>& pairs, double eps);

// Profile of the k-fold group relation obtained from the base profile alone:
//   delta_k(eps) = min(1, (e^eps - 1) / (e^{eps/k} - 1) * delta(eps / k))
// with the exact limit k * delta(0) at eps == 0. Requires eps >= 0, k >= 1.
double group_blackbox(const PrivacyProfile& base, int k, double eps);

// Same-family profile with the noise scale grown to k * theta. Only Laplace
// and Gaussian profiles support this; other kinds throw kUnsupportedFamily.
PrivacyProfile group_whitebox(const PrivacyProfile& base, int k);

// CSV round trip for tabulated profiles. Format: header "epsilon,delta",
// one knot per row, eps ascending, numbers printed with %.15g.
PrivacyProfile load_profile_csv(std::istream& in);
void store_profile_csv(const PrivacyProfile& profile, std::ostream& out);

}  // namespace subsamp

#endif  // SUBSAMP_PROFILES_HPP_
