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
#include <map>

#include "subsamp/error.hpp"
#include "subsamp/numeric.hpp"

namespace subsamp {

double hockey_stick(const DiscreteMeasure& mu, const DiscreteMeasure& mu_prime,
                    double alpha) {
  if (!(alpha > 0.0)) {
    throw Error(Errc::kNonPositiveAlpha, "hockey_stick: alpha must be > 0");
  }
  // Only outcomes with mu(z) > 0 can contribute a positive term.
  StableSum sum;
  const auto& lhs = mu.entries();
  const auto& rhs = mu_prime.entries();
  std::size_t j = 0;
  for (const auto& [outcome, mass] : lhs) {
    while (j < rhs.size() && rhs[j].first < outcome) ++j;
    double other = (j < rhs.size() && rhs[j].first == outcome) ? rhs[j].second
                                                               : 0.0;
    double term = mass - alpha * other;
    if (term > 0.0) sum.add(term);
  }
  double v = sum.value();
  return v > 0.0 ? v : 0.0;
}

double total_variation(const DiscreteMeasure& nu,
                       const DiscreteMeasure& nu_prime) {
  if (!nu.normalized() || !nu_prime.normalized()) {
    throw Error(Errc::kNotNormalized,
                "total_variation: inputs must be probability distributions");
  }
  // 1 - sum min(nu, nu') over the shared support.
  StableSum shared;
  const auto& lhs = nu.entries();
  const auto& rhs = nu_prime.entries();
  std::size_t i = 0, j = 0;
  while (i < lhs.size() && j < rhs.size()) {
    if (lhs[i].first < rhs[j].first) {
      ++i;
    } else if (rhs[j].first < lhs[i].first) {
      ++j;
    } else {
      shared.add(std::min(lhs[i].second, rhs[j].second));
      ++i;
      ++j;
    }
  }
  double tv = 1.0 - shared.value();
  if (tv < 0.0) tv = 0.0;
  if (tv > 1.0) tv = 1.0;
  return tv;
}

CouplingDecomposition maximal_coupling(const DiscreteMeasure& nu,
                                       const DiscreteMeasure& nu_prime) {
  if (!nu.normalized() || !nu_prime.normalized()) {
    throw Error(Errc::kNotNormalized,
                "maximal_coupling: inputs must be probability distributions");
  }
  std::vector<DiscreteMeasure::Entry> overlap;
  std::vector<DiscreteMeasure::Entry> res;        // nu - min.
  std::vector<DiscreteMeasure::Entry> res_prime;  // nu' - min.
  const auto& lhs = nu.entries();
  const auto& rhs = nu_prime.entries();
  std::size_t i = 0, j = 0;
  StableSum shared;
  while (i < lhs.size() || j < rhs.size()) {
    if (j >= rhs.size() || (i < lhs.size() && lhs[i].first < rhs[j].first)) {
      res.emplace_back(lhs[i]);
      ++i;
    } else if (i >= lhs.size() || rhs[j].first < lhs[i].first) {
      res_prime.emplace_back(rhs[j]);
      ++j;
    } else {
      double mn = std::min(lhs[i].second, rhs[j].second);
      shared.add(mn);
      overlap.emplace_back(lhs[i].first, mn);
      if (lhs[i].second > mn) res.emplace_back(lhs[i].first, lhs[i].second - mn);
      if (rhs[j].second > mn) {
        res_prime.emplace_back(rhs[j].first, rhs[j].second - mn);
      }
      ++i;
      ++j;
    }
  }
  CouplingDecomposition out;
  double s0 = shared.value();
  double eta = 1.0 - s0;
  if (eta < 0.0) eta = 0.0;
  if (eta > 1.0) eta = 1.0;

  DiscreteMeasure part = DiscreteMeasure::measure(std::move(overlap));
  DiscreteMeasure r = DiscreteMeasure::measure(std::move(res));
  DiscreteMeasure rp = DiscreteMeasure::measure(std::move(res_prime));

  auto renormalize = [](const DiscreteMeasure& m) {
    std::vector<DiscreteMeasure::Entry> entries;
    entries.reserve(m.entries().size());
    double t = m.total();
    for (const auto& [outcome, mass] : m.entries()) {
      entries.emplace_back(outcome, mass / t);
    }
    return DiscreteMeasure::probability(std::move(entries));
  };

  if ((r.empty() && rp.empty()) || eta <= 1e-11) {
    // Identical up to normalization noise: collapse to eta = 0. The error
    // this introduces is below the recomposition tolerance.
    out.eta = 0.0;
    out.omega0 = nu;
    out.omega1 = DiscreteMeasure::measure({});
    out.omega1_prime = DiscreteMeasure::measure({});
    out.degenerate = true;
    return out;
  }
  if (part.empty()) {
    // Disjoint supports: everything is residual.
    out.eta = 1.0;
    out.omega0 = DiscreteMeasure::measure({});
    out.omega1 = nu;
    out.omega1_prime = nu_prime;
    out.degenerate = true;
    return out;
  }
  out.eta = eta;
  out.omega0 = renormalize(part);
  out.omega1 = renormalize(r);
  out.omega1_prime = renormalize(rp);
  out.degenerate = false;
  return out;
}

AjcRecord advanced_joint_convexity(const DiscreteMeasure& mu0,
                                   const DiscreteMeasure& mu1,
                                   const DiscreteMeasure& mu1_prime,
                                   double eta, double alpha) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(Errc::kEtaOutOfRange,
                "advanced_joint_convexity: eta must lie in [0, 1]");
  }
  if (!(alpha >= 1.0)) {
    throw Error(Errc::kBadParams,
                "advanced_joint_convexity: alpha must be >= 1");
  }
  if (!mu0.normalized() || !mu1.normalized() || !mu1_prime.normalized()) {
    throw Error(Errc::kNotNormalized,
                "advanced_joint_convexity: components must be normalized");
  }
  AjcRecord rec;
  rec.alpha_prime = 1.0 + eta * (alpha - 1.0);
  rec.beta = rec.alpha_prime / alpha;
  DiscreteMeasure left = mix(1.0 - eta, mu0, eta, mu1);
  DiscreteMeasure right = mix(1.0 - eta, mu0, eta, mu1_prime);
  rec.lhs = hockey_stick(left, right, rec.alpha_prime);
  DiscreteMeasure tilted = mix(1.0 - rec.beta, mu0, rec.beta, mu1_prime);
  rec.rhs = eta * hockey_stick(mu1, tilted, alpha);
  return rec;
}

DiscreteMeasure pushforward(const DiscreteMeasure& omega,
                            const MechanismKernel& kernel) {
  // Keyed accumulation keeps per-outcome compensation despite interleaving.
  std::map<std::string, StableSum> acc;
  for (const auto& [input, w] : omega.entries()) {
    DiscreteMeasure out = kernel(input);
    for (const auto& [outcome, mass] : out.entries()) {
      acc[outcome].add(w * mass);
    }
  }
  std::vector<DiscreteMeasure::Entry> entries;
  entries.reserve(acc.size());
  for (const auto& [outcome, sum] : acc) {
    entries.emplace_back(outcome, sum.value());
  }
  return omega.normalized() ? DiscreteMeasure::probability(std::move(entries))
                            : DiscreteMeasure::measure(std::move(entries));
}

}  // namespace subsamp
