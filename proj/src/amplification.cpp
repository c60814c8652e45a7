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
#include <cstdio>

#include "subsamp/error.hpp"
#include "subsamp/numeric.hpp"

namespace subsamp {

namespace {

double clamp01(double x) {
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

void require_eps(double eps, const char* where) {
  if (!(eps >= 0.0)) {
    throw Error(Errc::kNegativeEpsilon,
                std::string(where) + ": eps must be >= 0");
  }
}

}  // namespace

SubsamplingScheme SubsamplingScheme::poisson(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(Errc::kBadParams, "poisson scheme: gamma must lie in (0, 1)");
  }
  SubsamplingScheme s;
  s.kind = Kind::kPoisson;
  s.gamma = gamma;
  return s;
}

SubsamplingScheme SubsamplingScheme::wor(long n, long m) {
  if (n < 1 || m < 1 || m > n) {
    throw Error(Errc::kBadParams, "wor scheme: need 1 <= m <= n");
  }
  SubsamplingScheme s;
  s.kind = Kind::kWor;
  s.n = n;
  s.m = m;
  return s;
}

SubsamplingScheme SubsamplingScheme::wr(long n, long m) {
  if (n < 1 || m < 1) {
    throw Error(Errc::kBadParams, "wr scheme: need n >= 1 and m >= 1");
  }
  SubsamplingScheme s;
  s.kind = Kind::kWr;
  s.n = n;
  s.m = m;
  return s;
}

std::string SubsamplingScheme::label() const {
  char buf[96];
  switch (kind) {
    case Kind::kPoisson:
      std::snprintf(buf, sizeof(buf), "poisson_gamma%g", gamma);
      break;
    case Kind::kWor:
      std::snprintf(buf, sizeof(buf), "wor_n%ld_m%ld", n, m);
      break;
    case Kind::kWr:
      std::snprintf(buf, sizeof(buf), "wr_n%ld_m%ld", n, m);
      break;
  }
  return buf;
}

double amplified_epsilon(double eta, double eps) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw Error(Errc::kEtaOutOfRange,
                "amplified_epsilon: eta must lie in (0, 1]");
  }
  require_eps(eps, "amplified_epsilon");
  return std::log1p(eta * std::expm1(eps));
}

double scheme_eta(const SubsamplingScheme& scheme, NeighborRelation relation) {
  switch (scheme.kind) {
    case SubsamplingScheme::Kind::kPoisson:
      // Same contraction under both relations.
      return scheme.gamma;
    case SubsamplingScheme::Kind::kWor:
      if (relation == NeighborRelation::kRemoveAdd) {
        throw Error(Errc::kUnsupportedPairing,
                    "scheme_eta: fixed-size sampling without replacement "
                    "cannot track remove-add neighbors");
      }
      return static_cast<double>(scheme.m) / static_cast<double>(scheme.n);
    case SubsamplingScheme::Kind::kWr:
      // 1 - (1 - 1/n)^m, the chance the marked slot is drawn at least once.
      return -std::expm1(static_cast<double>(scheme.m) *
                         std::log1p(-1.0 / static_cast<double>(scheme.n)));
  }
  throw Error(Errc::kBadParams, "scheme_eta: unknown scheme");
}

std::vector<std::pair<long, double>> wr_weights(long n, long m) {
  if (n < 1 || m < 1) {
    throw Error(Errc::kBadParams, "wr_weights: need n >= 1 and m >= 1");
  }
  std::vector<std::pair<long, double>> out;
  out.reserve(m);
  double log_q = std::log1p(-1.0 / static_cast<double>(n));  // log(1 - 1/n).
  double log_inv_n = -std::log(static_cast<double>(n));
  for (long k = 1; k <= m; ++k) {
    double lw = log_binomial(m, k) + static_cast<double>(k) * log_inv_n +
                static_cast<double>(m - k) * log_q;
    out.emplace_back(k, std::exp(lw));
  }
  return out;
}

AmplificationBound amplify_poisson(const PrivacyProfile& profile, double gamma,
                                   double eps) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(Errc::kBadParams, "amplify_poisson: gamma must lie in (0, 1)");
  }
  require_eps(eps, "amplify_poisson");
  AmplificationBound b;
  b.eps_in = eps;
  b.eta = gamma;
  b.eps_out = amplified_epsilon(gamma, eps);
  b.delta_out = gamma * profile.evaluate(eps);
  return b;
}

AmplificationBound amplify_wor(const PrivacyProfile& profile, long n, long m,
                               double eps) {
  if (n < 1 || m < 1 || m > n) {
    throw Error(Errc::kBadParams, "amplify_wor: need 1 <= m <= n");
  }
  require_eps(eps, "amplify_wor");
  double eta = static_cast<double>(m) / static_cast<double>(n);
  AmplificationBound b;
  b.eps_in = eps;
  b.eta = eta;
  b.eps_out = amplified_epsilon(eta, eps);
  b.delta_out = eta * profile.evaluate(eps);
  return b;
}

GroupProfileFamily GroupProfileFamily::from_profiles(
    std::vector<PrivacyProfile> per_k) {
  if (per_k.empty()) {
    throw Error(Errc::kBadParams, "group family: empty profile list");
  }
  GroupProfileFamily f;
  f.mode_ = Mode::kExplicit;
  f.per_k_ = std::move(per_k);
  return f;
}

GroupProfileFamily GroupProfileFamily::black_box(PrivacyProfile base) {
  GroupProfileFamily f;
  f.mode_ = Mode::kBlackBox;
  f.base_ = std::move(base);
  return f;
}

GroupProfileFamily GroupProfileFamily::white_box(PrivacyProfile base) {
  if (base.kind() != PrivacyProfile::Kind::kLaplace &&
      base.kind() != PrivacyProfile::Kind::kGaussian) {
    throw Error(Errc::kUnsupportedFamily,
                "group family: scaled mode needs a noise-scale profile");
  }
  GroupProfileFamily f;
  f.mode_ = Mode::kWhiteBox;
  f.base_ = std::move(base);
  return f;
}

double GroupProfileFamily::delta(long k, double eps) const {
  if (k < 1) {
    throw Error(Errc::kBadK, "group family: k must be >= 1");
  }
  switch (mode_) {
    case Mode::kExplicit:
      if (static_cast<std::size_t>(k) > per_k_.size()) {
        throw Error(Errc::kMissingGroupProfile,
                    "group family: no profile for k=" + std::to_string(k));
      }
      return per_k_[static_cast<std::size_t>(k) - 1].evaluate(eps);
    case Mode::kBlackBox:
      return group_blackbox(*base_, static_cast<int>(k), eps);
    case Mode::kWhiteBox:
      return group_whitebox(*base_, static_cast<int>(k)).evaluate(eps);
  }
  throw Error(Errc::kBadParams, "group family: unknown mode");
}

namespace {

AmplificationBound amplify_wr_impl(const GroupProfileFamily& family, long n,
                                   long m, double eps, const char* where) {
  if (n < 1 || m < 1) {
    throw Error(Errc::kBadParams, std::string(where) + ": need n, m >= 1");
  }
  require_eps(eps, where);
  SubsamplingScheme scheme = SubsamplingScheme::wr(n, m);
  double eta = scheme_eta(scheme, NeighborRelation::kSubstitute);
  AmplificationBound b;
  b.eps_in = eps;
  b.eta = eta;
  b.eps_out = amplified_epsilon(eta, eps);
  b.weights = wr_weights(n, m);
  StableSum sum;
  for (const auto& [k, w] : b.weights) {
    sum.add(w * clamp01(family.delta(k, eps)));
  }
  b.delta_out = sum.value();
  return b;
}

}  // namespace

AmplificationBound amplify_wr(const GroupProfileFamily& family, long n, long m,
                              double eps) {
  return amplify_wr_impl(family, n, m, eps, "amplify_wr");
}

AmplificationBound amplify_wr_hybrid(const GroupProfileFamily& family, long n,
                                     long m, double eps) {
  // The removed element's draws fall back on the remaining n-1, which
  // produces the same conditional split over multiplicities.
  return amplify_wr_impl(family, n, m, eps, "amplify_wr_hybrid");
}

PoissonSubstitutionTerms poisson_substitution_terms(long n, double gamma,
                                                    double eps) {
  if (n < 2) {
    throw Error(Errc::kBadParams,
                "poisson substitution: need dataset size n >= 2");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(Errc::kBadParams,
                "poisson substitution: gamma must lie in (0, 1)");
  }
  require_eps(eps, "poisson substitution");
  PoissonSubstitutionTerms t;
  t.eps_prime = amplified_epsilon(gamma, eps);
  // beta = e^{eps' - eps} = gamma + (1 - gamma) e^{-eps}.
  t.beta = gamma + (1.0 - gamma) * std::exp(-eps);
  t.gamma_tilde.resize(static_cast<std::size_t>(n));
  double lg = std::log(gamma);
  double l1mg = std::log1p(-gamma);
  for (long k = 1; k <= n; ++k) {
    double lw = log_binomial(n - 1, k - 1) + static_cast<double>(k - 1) * lg +
                static_cast<double>(n - k) * l1mg;
    t.gamma_tilde[static_cast<std::size_t>(k - 1)] = std::exp(lw);
  }
  t.eps_k.resize(static_cast<std::size_t>(n - 1));
  for (long k = 1; k <= n - 1; ++k) {
    double ratio = gamma / (1.0 - gamma) *
                   (static_cast<double>(n - k) / static_cast<double>(k));
    t.eps_k[static_cast<std::size_t>(k - 1)] = eps + std::log(ratio);
  }
  return t;
}

AmplificationBound amplify_poisson_substitution(const PrivacyProfile& profile,
                                                long n, double gamma,
                                                double eps) {
  PoissonSubstitutionTerms t = poisson_substitution_terms(n, gamma, eps);
  AmplificationBound b;
  b.eps_in = eps;
  b.eta = gamma;
  b.eps_out = t.eps_prime;
  StableSum inner;
  for (long k = 1; k <= n - 1; ++k) {
    double ek = t.eps_k[static_cast<std::size_t>(k - 1)];
    if (ek < 0.0 && !profile.supports_negative_eps()) {
      b.conservative_negative_eps = true;
    }
    inner.add(t.gamma_tilde[static_cast<std::size_t>(k - 1)] *
              clamp01(profile.evaluate(ek)));
  }
  inner.add(t.gamma_tilde[static_cast<std::size_t>(n - 1)]);
  double delta = gamma * t.beta * clamp01(profile.evaluate(eps)) +
                 gamma * (1.0 - t.beta) * inner.value();
  // The bound never exceeds the raw contraction eta.
  b.delta_out = std::min(delta, gamma);
  return b;
}

PrivacyProfile amplified_profile_curve(const SubsamplingScheme& scheme,
                                       NeighborRelation relation,
                                       const PrivacyProfile& base,
                                       GroupMode group_mode,
                                       const std::vector<double>& eps_grid,
                                       std::optional<long> n_substitution) {
  if (eps_grid.empty()) {
    throw Error(Errc::kBadParams, "amplified curve: empty eps grid");
  }
  std::optional<GroupProfileFamily> family;
  if (scheme.kind == SubsamplingScheme::Kind::kWr) {
    switch (group_mode) {
      case GroupMode::kBlackBox:
        family = GroupProfileFamily::black_box(base);
        break;
      case GroupMode::kWhiteBox:
        family = GroupProfileFamily::white_box(base);
        break;
      case GroupMode::kNone:
        throw Error(Errc::kBadParams,
                    "amplified curve: replacement sampling needs a group "
                    "profile mode");
    }
  }
  if (scheme.kind == SubsamplingScheme::Kind::kPoisson &&
      relation == NeighborRelation::kSubstitute && !n_substitution) {
    throw Error(Errc::kBadParams,
                "amplified curve: substitution under Poisson needs the "
                "dataset size");
  }

  for (std::size_t i = 1; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] >= eps_grid[i - 1])) {
      throw Error(Errc::kBadParams, "amplified curve: eps grid must ascend");
    }
  }

  std::vector<std::pair<double, double>> knots;
  knots.reserve(eps_grid.size());
  double running = 1.0;
  double prev_eps = 0.0;
  for (double eps : eps_grid) {
    require_eps(eps, "amplified curve");
    AmplificationBound b;
    switch (scheme.kind) {
      case SubsamplingScheme::Kind::kPoisson:
        b = (relation == NeighborRelation::kRemoveAdd)
                ? amplify_poisson(base, scheme.gamma, eps)
                : amplify_poisson_substitution(base, *n_substitution,
                                               scheme.gamma, eps);
        break;
      case SubsamplingScheme::Kind::kWor:
        if (relation == NeighborRelation::kRemoveAdd) {
          throw Error(Errc::kUnsupportedPairing,
                      "amplified curve: fixed-size sampling without "
                      "replacement cannot track remove-add neighbors");
        }
        b = amplify_wor(base, scheme.n, scheme.m, eps);
        break;
      case SubsamplingScheme::Kind::kWr:
        b = (relation == NeighborRelation::kRemoveAdd)
                ? amplify_wr_hybrid(*family, scheme.n, scheme.m, eps)
                : amplify_wr(*family, scheme.n, scheme.m, eps);
        break;
    }
    running = std::min(running, clamp01(b.delta_out));
    if (!knots.empty() && !(b.eps_out > prev_eps)) {
      // Collapsed grid step; keep the smaller delta already recorded.
      knots.back().second = std::min(knots.back().second, running);
      continue;
    }
    knots.emplace_back(b.eps_out, running);
    prev_eps = b.eps_out;
  }
  return tabulated_profile(std::move(knots));
}

}  // namespace subsamp
