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

#include "subsamp/mgf.hpp"

#include <algorithm>
#include <cmath>

#include "subsamp/error.hpp"
#include "subsamp/numeric.hpp"

namespace subsamp {

PrivacyLossDistribution loss_distribution(const DiscreteMeasure& mu,
                                          const DiscreteMeasure& mu_prime) {
  if (!mu.normalized() || !mu_prime.normalized()) {
    throw Error(Errc::kNotNormalized,
                "loss_distribution: inputs must be probability distributions");
  }
  PrivacyLossDistribution pld;
  StableSum inf_mass;
  for (const auto& [outcome, mass] : mu.entries()) {
    double other = mu_prime.mass(outcome);
    if (other > 0.0) {
      pld.atoms.emplace_back(std::log(mass / other), mass);
    } else {
      inf_mass.add(mass);
    }
  }
  pld.inf_mass = inf_mass.value();
  std::sort(pld.atoms.begin(), pld.atoms.end());
  return pld;
}

double profile_from_loss(const PrivacyLossDistribution& forward,
                         const PrivacyLossDistribution& reverse, double eps) {
  StableSum above;
  for (const auto& [loss, prob] : forward.atoms) {
    if (loss > eps) above.add(prob);
  }
  above.add(forward.inf_mass);
  StableSum below;
  for (const auto& [loss, prob] : reverse.atoms) {
    if (loss < -eps) below.add(prob);
  }
  double correction = below.value();
  double v = above.value();
  if (correction > 0.0) v -= std::exp(eps) * correction;
  return v > 0.0 ? v : 0.0;
}

double tail_bound_profile(const PrivacyLossDistribution& pld, double eps) {
  StableSum above;
  for (const auto& [loss, prob] : pld.atoms) {
    if (loss > eps) above.add(prob);
  }
  above.add(pld.inf_mass);
  return above.value();
}

namespace {

// Integrand of the loss-MGF identity. Throws when the forward term would
// overflow, which only happens for profiles whose tail cannot decay fast
// enough for this s.
double integrand(const PrivacyProfile& fwd, const PrivacyProfile& rev,
                 double s, double e) {
  double value = 0.0;
  double df = fwd.evaluate(e);
  if (df > 0.0) {
    double q = s * e + std::log(df);
    if (q > 700.0) {
      throw Error(Errc::kDivergentIntegrand,
                  "mgf: forward integrand overflows, no finite moment");
    }
    value += std::exp(q);
  }
  double dr = rev.evaluate(e);
  if (dr > 0.0) {
    value += std::exp(-(s + 1.0) * e + std::log(dr));
  }
  return value;
}

// Composite Gauss-Legendre over [lo, hi] with the given uniform panel count,
// with extra panel cuts at the supplied breakpoints.
double integrate(const PrivacyProfile& fwd, const PrivacyProfile& rev,
                 double s, double lo, double hi, int panels,
                 const std::vector<double>& cuts, const GlRule& rule) {
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(panels) + cuts.size() + 1);
  for (int i = 0; i <= panels; ++i) {
    edges.push_back(lo + (hi - lo) * static_cast<double>(i) /
                             static_cast<double>(panels));
  }
  for (double c : cuts) {
    if (c > lo && c < hi) edges.push_back(c);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  StableSum total;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    double a = edges[i];
    double b = edges[i + 1];
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    if (half <= 0.0) continue;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      total.add(rule.weights[k] * half *
                integrand(fwd, rev, s, mid + half * rule.nodes[k]));
    }
  }
  return total.value();
}

}  // namespace

double mgf_from_profiles(const PrivacyProfile& forward,
                         const PrivacyProfile& reverse, double s,
                         const QuadratureSpec& quad) {
  if (!(s >= 0.0)) {
    throw Error(Errc::kBadParams, "mgf_from_profiles: s must be >= 0");
  }
  if (s == 0.0) return 1.0;
  if (quad.panels < 1 || quad.gl_nodes < 2 || !(quad.eps_max > 0.0)) {
    throw Error(Errc::kBadParams, "mgf_from_profiles: bad quadrature spec");
  }
  const GlRule rule = make_gauss_legendre(quad.gl_nodes);
  std::vector<double> cuts = forward.breakpoints();
  std::vector<double> rev_cuts = reverse.breakpoints();
  cuts.insert(cuts.end(), rev_cuts.begin(), rev_cuts.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double factor = s * (s + 1.0);
  double eps_max = quad.eps_max;
  int panels = quad.panels;
  // Grow the cutoff until the outer half stops contributing.
  while (true) {
    double whole =
        integrate(forward, reverse, s, 0.0, eps_max, panels, cuts, rule);
    double outer = integrate(forward, reverse, s, 0.5 * eps_max, eps_max,
                             std::max(panels / 2, 1), cuts, rule);
    double scale = std::max(1.0, std::abs(1.0 + factor * whole));
    if (factor * outer <= quad.tail_rel_tol * scale) break;
    eps_max *= 2.0;
    panels *= 2;
    if (eps_max > quad.eps_max_cap) {
      throw Error(Errc::kDivergentIntegrand,
                  "mgf: tail keeps contributing out to the cutoff cap");
    }
  }
  // Refine the panel count until successive estimates agree.
  double prev =
      integrate(forward, reverse, s, 0.0, eps_max, panels, cuts, rule);
  while (panels <= quad.max_panels) {
    panels *= 2;
    double next =
        integrate(forward, reverse, s, 0.0, eps_max, panels, cuts, rule);
    double scale = std::max(1.0, std::abs(1.0 + factor * next));
    bool settled = factor * std::abs(next - prev) <= quad.rel_tol * scale;
    prev = next;
    if (settled) break;
  }
  return 1.0 + factor * prev;
}

double renyi_epsilon(double mgf_value, double lambda) {
  if (!(mgf_value > 0.0)) {
    throw Error(Errc::kBadParams, "renyi_epsilon: mgf value must be > 0");
  }
  if (!(lambda > 1.0)) {
    throw Error(Errc::kBadLambda, "renyi_epsilon: lambda must be > 1");
  }
  return std::log(mgf_value) / (lambda - 1.0);
}

}  // namespace subsamp
