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

#include <algorithm>
#include <cmath>
#include <limits>

#include "subsamp/error.hpp"
#include "subsamp/transport.hpp"

namespace subsamp {

MechanismKernel membership_kernel(const std::string& v, double p) {
  if (!(p >= 0.5 && p <= 1.0)) {
    throw Error(Errc::kPOutOfRange,
                "membership_kernel: p must lie in [1/2, 1]");
  }
  if (v.empty() || v.find(':') != std::string::npos ||
      v.find('|') != std::string::npos) {
    throw Error(Errc::kBadParams, "membership_kernel: bad element name");
  }
  return MechanismKernel::from_function(
      [v, p](const std::string& input) -> DiscreteMeasure {
        auto counts = Dataset::parse_encoding(input);
        auto it = counts.find(v);
        bool present = it != counts.end() && it->second > 0;
        double hit = present ? p : 1.0 - p;
        return DiscreteMeasure::probability({{"1", hit}, {"0", 1.0 - hit}});
      });
}

namespace {

// Draws-with-replacement fixes the population size up front, but remove-add
// pairs datasets of sizes n and n - 1.  Shrink the scheme to the dataset it
// is applied to; enumerate_subsamples validates everything else.
SubsamplingScheme scheme_for(const SubsamplingScheme& scheme,
                             const Dataset& data) {
  if (scheme.kind == SubsamplingScheme::Kind::kWr &&
      data.size() == scheme.n - 1) {
    return SubsamplingScheme::wr(scheme.n - 1, scheme.m);
  }
  return scheme;
}

}  // namespace

double exact_subsampled_divergence(const SubsamplingScheme& scheme,
                                   const MechanismKernel& kernel,
                                   const Dataset& x, const Dataset& x_prime,
                                   double alpha) {
  DiscreteMeasure out =
      pushforward(enumerate_subsamples(scheme_for(scheme, x), x), kernel);
  DiscreteMeasure out_prime = pushforward(
      enumerate_subsamples(scheme_for(scheme, x_prime), x_prime), kernel);
  return hockey_stick(out, out_prime, alpha);
}

TightnessReport verify_tightness(const SubsamplingScheme& scheme,
                                 NeighborRelation relation, double p,
                                 double eps,
                                 const TightnessInstance& instance) {
  if (instance.x.count_of(instance.v) != 1) {
    throw Error(Errc::kBadParams,
                "verify_tightness: x must contain the marked element once");
  }
  if (instance.x_prime.count_of(instance.v) != 0) {
    throw Error(Errc::kBadParams,
                "verify_tightness: x' must not contain the marked element");
  }
  TightnessReport report;
  report.eta = scheme_eta(scheme, relation);
  report.eps_prime = amplified_epsilon(report.eta, eps);
  double alpha_prime = std::exp(report.eps_prime);

  MechanismKernel kernel = membership_kernel(instance.v, p);
  double fwd = exact_subsampled_divergence(scheme, kernel, instance.x,
                                           instance.x_prime, alpha_prime);
  double rev = exact_subsampled_divergence(scheme, kernel, instance.x_prime,
                                           instance.x, alpha_prime);
  report.exact = std::max(fwd, rev);

  PrivacyProfile base = rr_profile(p);
  AmplificationBound bound;
  switch (scheme.kind) {
    case SubsamplingScheme::Kind::kPoisson:
      if (relation == NeighborRelation::kRemoveAdd) {
        bound = amplify_poisson(base, scheme.gamma, eps);
        report.asserts_equality = true;
      } else {
        bound = amplify_poisson_substitution(base, instance.x.size(),
                                             scheme.gamma, eps);
        report.asserts_equality = false;
      }
      break;
    case SubsamplingScheme::Kind::kWor:
      bound = amplify_wor(base, scheme.n, scheme.m, eps);
      report.asserts_equality = true;
      break;
    case SubsamplingScheme::Kind::kWr: {
      // The membership bit flips at most once no matter how often the marked
      // element is drawn, so every group order has the same profile.
      std::vector<PrivacyProfile> per_k(static_cast<std::size_t>(scheme.m),
                                        base);
      GroupProfileFamily family = GroupProfileFamily::from_profiles(per_k);
      if (relation == NeighborRelation::kRemoveAdd) {
        bound = amplify_wr_hybrid(family, scheme.n, scheme.m, eps);
        report.asserts_equality = false;
      } else {
        bound = amplify_wr(family, scheme.n, scheme.m, eps);
        report.asserts_equality = true;
      }
      break;
    }
  }
  report.bound = bound.delta_out;
  report.gap = report.bound - report.exact;
  return report;
}

namespace {

// Ordered pairs of distinct encodings at relation distance in [1, k].
std::vector<std::pair<std::string, std::string>> relation_pairs(
    const std::vector<std::string>& domain, NeighborRelation relation,
    long k) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& a : domain) {
    for (const auto& b : domain) {
      if (a == b) continue;
      long d;
      try {
        d = path_distance(a, b, relation);
      } catch (const Error& e) {
        if (e.code() != Errc::kUnreachable) throw;
        continue;
      }
      if (d >= 1 && d <= k) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::string> merged_supports(const DiscreteMeasure& a,
                                         const DiscreteMeasure& b) {
  std::vector<std::string> out;
  out.reserve(a.support_size() + b.support_size());
  for (const auto& [enc, mass] : a.entries()) out.push_back(enc);
  for (const auto& [enc, mass] : b.entries()) out.push_back(enc);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TightnessReport verify_dominance(const SubsamplingScheme& scheme,
                                 NeighborRelation relation,
                                 const MechanismKernel& kernel,
                                 const Dataset& x, const Dataset& x_prime,
                                 double eps) {
  TightnessReport report;
  report.eta = scheme_eta(scheme, relation);
  report.eps_prime = amplified_epsilon(report.eta, eps);
  report.asserts_equality = false;
  double alpha_prime = std::exp(report.eps_prime);

  DiscreteMeasure omega = enumerate_subsamples(scheme_for(scheme, x), x);
  DiscreteMeasure omega_prime =
      enumerate_subsamples(scheme_for(scheme, x_prime), x_prime);
  DiscreteMeasure out = pushforward(omega, kernel);
  DiscreteMeasure out_prime = pushforward(omega_prime, kernel);
  report.exact = std::max(hockey_stick(out, out_prime, alpha_prime),
                          hockey_stick(out_prime, out, alpha_prime));

  std::vector<std::string> domain = merged_supports(omega, omega_prime);
  AmplificationBound bound;
  switch (scheme.kind) {
    case SubsamplingScheme::Kind::kPoisson:
      if (relation == NeighborRelation::kRemoveAdd) {
        PrivacyProfile profile = empirical_profile_of(
            kernel, relation_pairs(domain, relation, 1));
        bound = amplify_poisson(profile, scheme.gamma, eps);
      } else {
        if (x.size() != x_prime.size()) {
          throw Error(Errc::kBadParams,
                      "verify_dominance: substitution needs |x| = |x'|");
        }
        PrivacyProfile profile = empirical_profile_of(
            kernel, relation_pairs(domain, relation, 1));
        bound = amplify_poisson_substitution(profile, x.size(), scheme.gamma,
                                             eps);
      }
      break;
    case SubsamplingScheme::Kind::kWor: {
      PrivacyProfile profile =
          empirical_profile_of(kernel, relation_pairs(domain, relation, 1));
      bound = amplify_wor(profile, scheme.n, scheme.m, eps);
      break;
    }
    case SubsamplingScheme::Kind::kWr: {
      // Under remove-add each surplus draw is redrawn in place, so the
      // k-fold group still pairs same-size subsamples at substitution
      // distance up to k.
      std::vector<PrivacyProfile> per_k;
      for (long k = 1; k <= scheme.m; ++k) {
        per_k.push_back(empirical_profile_of(
            kernel,
            relation_pairs(domain, NeighborRelation::kSubstitute, k)));
      }
      GroupProfileFamily family = GroupProfileFamily::from_profiles(per_k);
      bound = (relation == NeighborRelation::kRemoveAdd)
                  ? amplify_wr_hybrid(family, scheme.n, scheme.m, eps)
                  : amplify_wr(family, scheme.n, scheme.m, eps);
      break;
    }
  }
  report.bound = bound.delta_out;
  report.gap = report.bound - report.exact;
  return report;
}

CostedCoupling min_cost_coupling(
    const DiscreteMeasure& nu, const DiscreteMeasure& nu_prime,
    const std::function<double(const std::string&, const std::string&)>&
        cost) {
  if (nu.support_size() > 300 || nu_prime.support_size() > 300) {
    throw Error(Errc::kInstanceTooLarge,
                "min_cost_coupling: supports capped at 300 outcomes");
  }
  double ta = nu.total();
  double tb = nu_prime.total();
  if (std::abs(ta - tb) > 1e-9) {
    throw Error(Errc::kInfeasibleMarginals,
                "min_cost_coupling: total masses differ beyond 1e-9");
  }
  if (ta <= 0.0) {
    return CostedCoupling{};
  }
  const auto& left = nu.entries();
  const auto& right = nu_prime.entries();
  std::vector<double> supply;
  supply.reserve(left.size());
  for (const auto& [outcome, mass] : left) supply.push_back(mass);
  // Rescale the second marginal so the totals agree exactly.
  double fix = ta / tb;
  std::vector<double> demand;
  demand.reserve(right.size());
  for (const auto& [outcome, mass] : right) demand.push_back(mass * fix);
  std::vector<std::vector<double>> costs(
      left.size(), std::vector<double>(right.size(), 0.0));
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      double c = cost(left[i].first, right[j].first);
      if (!(c >= 0.0) || !std::isfinite(c)) {
        throw Error(Errc::kBadParams,
                    "min_cost_coupling: costs must be finite and >= 0");
      }
      costs[i][j] = c;
    }
  }
  TransportSolution sol = solve_min_cost_transport(supply, demand, costs);
  if (!sol.complete) {
    throw Error(Errc::kInfeasibleMarginals,
                "min_cost_coupling: transport did not route the full mass");
  }
  CostedCoupling out;
  out.value = sol.value;
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      double f = sol.flow[i][j];
      if (f > 0.0) {
        out.plan.entries.emplace_back(left[i].first, right[j].first, f);
      }
    }
  }
  return out;
}

bool is_distance_compatible(const DiscreteMeasure& nu,
                            const DiscreteMeasure& nu_prime,
                            NeighborRelation relation) {
  if (!nu.normalized() || !nu_prime.normalized()) {
    throw Error(Errc::kNotNormalized,
                "is_distance_compatible: inputs must be probability "
                "distributions");
  }
  if (nu.support_size() > 300 || nu_prime.support_size() > 300) {
    throw Error(Errc::kInstanceTooLarge,
                "is_distance_compatible: supports capped at 300 outcomes");
  }
  const auto& left = nu.entries();
  const auto& right = nu_prime.entries();
  constexpr long kUnreachableDistance = std::numeric_limits<long>::max();
  std::vector<std::vector<long>> dist(left.size(),
                                      std::vector<long>(right.size()));
  std::vector<std::vector<std::uint8_t>> allowed(
      left.size(), std::vector<std::uint8_t>(right.size(), 0));
  for (std::size_t i = 0; i < left.size(); ++i) {
    long best = kUnreachableDistance;
    for (std::size_t j = 0; j < right.size(); ++j) {
      long d;
      try {
        d = path_distance(left[i].first, right[j].first, relation);
      } catch (const Error& e) {
        if (e.code() != Errc::kUnreachable) throw;
        d = kUnreachableDistance;
      }
      dist[i][j] = d;
      best = std::min(best, d);
    }
    if (best == kUnreachableDistance) {
      // No partner at finite distance: no coupling can be minimal here.
      return false;
    }
    for (std::size_t j = 0; j < right.size(); ++j) {
      allowed[i][j] = (dist[i][j] == best) ? 1 : 0;
    }
  }
  std::vector<double> supply;
  supply.reserve(left.size());
  for (const auto& [outcome, mass] : left) supply.push_back(mass);
  std::vector<double> demand;
  demand.reserve(right.size());
  for (const auto& [outcome, mass] : right) demand.push_back(mass);
  std::vector<std::vector<double>> zero_cost(
      left.size(), std::vector<double>(right.size(), 0.0));
  TransportSolution sol =
      solve_min_cost_transport(supply, demand, zero_cost, &allowed);
  return sol.complete;
}

}  // namespace subsamp
