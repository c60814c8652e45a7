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

#include "subsamp/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "subsamp/divergence.hpp"
#include "subsamp/error.hpp"

namespace subsamp {

double std_normal_cdf(double t) {
  return 0.5 * std::erfc(-t * M_SQRT1_2);
}

namespace {

double clamp01(double x) {
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

double laplace_delta(double theta, double eps) {
  if (eps >= theta) return 0.0;
  if (eps >= -theta) return -std::expm1(0.5 * (eps - theta));
  return -std::expm1(eps);
}

double gaussian_delta(double theta, double eps) {
  double first = std_normal_cdf(0.5 * theta - eps / theta);
  double second = std_normal_cdf(-0.5 * theta - eps / theta);
  // second underflows long before e^eps overflows; keep inf * 0 out.
  double scaled = (second == 0.0) ? 0.0 : std::exp(eps) * second;
  double v = first - scaled;
  return v > 0.0 ? v : 0.0;
}

double rr_delta(double p, double eps) {
  double v = p - std::exp(eps) * (1.0 - p);
  return v > 0.0 ? v : 0.0;
}

// Valid for any profile: delta(eps) <= delta(0) + Pr-mass shifted by e^eps.
double conservative_below_zero(double delta0, double eps) {
  double v = delta0 - std::expm1(eps);
  return clamp01(v);
}

}  // namespace

PrivacyProfile laplace_profile(double theta) {
  if (!(theta > 0.0)) {
    throw Error(Errc::kNonPositiveTheta, "laplace_profile: theta must be > 0");
  }
  return PrivacyProfile(PrivacyProfile::Kind::kLaplace,
                        PrivacyProfile::LaplaceForm{theta});
}

PrivacyProfile gaussian_profile(double theta) {
  if (!(theta > 0.0)) {
    throw Error(Errc::kNonPositiveTheta, "gaussian_profile: theta must be > 0");
  }
  return PrivacyProfile(PrivacyProfile::Kind::kGaussian,
                        PrivacyProfile::GaussianForm{theta});
}

PrivacyProfile rr_profile(double p) {
  if (!(p >= 0.5 && p <= 1.0)) {
    throw Error(Errc::kPOutOfRange, "rr_profile: p must lie in [1/2, 1]");
  }
  return PrivacyProfile(PrivacyProfile::Kind::kRandomizedResponse,
                        PrivacyProfile::RrForm{p});
}

PrivacyProfile tabulated_profile(
    std::vector<std::pair<double, double>> points) {
  if (points.empty()) {
    throw Error(Errc::kBadParams, "tabulated_profile: need at least one knot");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].first) ||
        !(points[i].second >= 0.0 && points[i].second <= 1.0)) {
      throw Error(Errc::kBadParams,
                  "tabulated_profile: knots need finite eps and delta in "
                  "[0, 1]");
    }
    if (i > 0 && !(points[i].first > points[i - 1].first)) {
      throw Error(Errc::kBadParams,
                  "tabulated_profile: eps knots must be strictly increasing");
    }
    if (i > 0 && points[i].second > points[i - 1].second) {
      throw Error(Errc::kBadParams,
                  "tabulated_profile: delta must be non-increasing");
    }
  }
  return PrivacyProfile(PrivacyProfile::Kind::kTabulated,
                        PrivacyProfile::TabulatedForm{std::move(points)});
}

PrivacyProfile empirical_profile_of(
    MechanismKernel kernel,
    std::vector<std::pair<std::string, std::string>> pairs) {
  if (pairs.empty()) {
    throw Error(Errc::kEmptyPairList, "empirical profile: empty pair list");
  }
  return PrivacyProfile(
      PrivacyProfile::Kind::kEmpirical,
      PrivacyProfile::EmpiricalForm{std::move(kernel), std::move(pairs)});
}

double empirical_profile(
    const MechanismKernel& kernel,
    const std::vector<std::pair<std::string, std::string>>& pairs,
    double eps) {
  if (pairs.empty()) {
    throw Error(Errc::kEmptyPairList, "empirical_profile: empty pair list");
  }
  double alpha = std::exp(eps);
  double worst = 0.0;
  for (const auto& [x, x_prime] : pairs) {
    double d = hockey_stick(kernel(x), kernel(x_prime), alpha);
    worst = std::max(worst, d);
  }
  return worst;
}

double PrivacyProfile::evaluate(double eps) const {
  switch (kind_) {
    case Kind::kLaplace:
      return laplace_delta(std::get<LaplaceForm>(form_).theta, eps);
    case Kind::kGaussian:
      return gaussian_delta(std::get<GaussianForm>(form_).theta, eps);
    case Kind::kRandomizedResponse: {
      double pp = std::get<RrForm>(form_).p;
      if (eps >= 0.0) return rr_delta(pp, eps);
      return conservative_below_zero(rr_delta(pp, 0.0), eps);
    }
    case Kind::kTabulated: {
      const auto& pts = std::get<TabulatedForm>(form_).points;
      if (eps < pts.front().first) {
        // Unknown region: delta(0) is itself 1 when 0 precedes the knots.
        double delta0 = (0.0 >= pts.front().first) ? evaluate(0.0) : 1.0;
        if (eps >= 0.0) return 1.0;
        return conservative_below_zero(delta0, eps);
      }
      // Greatest knot <= eps.
      auto it = std::upper_bound(
          pts.begin(), pts.end(), eps,
          [](double e, const std::pair<double, double>& pt) {
            return e < pt.first;
          });
      return std::prev(it)->second;
    }
    case Kind::kEmpirical: {
      const auto& form = std::get<EmpiricalForm>(form_);
      return empirical_profile(form.kernel, form.pairs, eps);
    }
  }
  throw Error(Errc::kBadParams, "profile: unknown kind");
}

bool PrivacyProfile::supports_negative_eps() const {
  switch (kind_) {
    case Kind::kLaplace:
    case Kind::kGaussian:
    case Kind::kEmpirical:
      return true;
    case Kind::kRandomizedResponse:
      return false;
    case Kind::kTabulated:
      return std::get<TabulatedForm>(form_).points.front().first < 0.0;
  }
  return false;
}

double PrivacyProfile::theta() const {
  if (kind_ == Kind::kLaplace) return std::get<LaplaceForm>(form_).theta;
  if (kind_ == Kind::kGaussian) return std::get<GaussianForm>(form_).theta;
  throw Error(Errc::kUnsupportedFamily, "profile: no theta for this kind");
}

double PrivacyProfile::p() const {
  if (kind_ == Kind::kRandomizedResponse) return std::get<RrForm>(form_).p;
  throw Error(Errc::kUnsupportedFamily, "profile: no p for this kind");
}

const std::vector<std::pair<double, double>>& PrivacyProfile::points() const {
  if (kind_ == Kind::kTabulated) {
    return std::get<TabulatedForm>(form_).points;
  }
  throw Error(Errc::kUnsupportedFamily, "profile: no knots for this kind");
}

std::vector<double> PrivacyProfile::breakpoints() const {
  switch (kind_) {
    case Kind::kLaplace:
      return {-std::get<LaplaceForm>(form_).theta,
              std::get<LaplaceForm>(form_).theta};
    case Kind::kGaussian:
      return {};
    case Kind::kRandomizedResponse: {
      double pp = std::get<RrForm>(form_).p;
      if (pp >= 1.0) return {0.0};
      return {0.0, std::log(pp / (1.0 - pp))};
    }
    case Kind::kTabulated: {
      std::vector<double> out;
      for (const auto& pt : std::get<TabulatedForm>(form_).points) {
        out.push_back(pt.first);
      }
      return out;
    }
    case Kind::kEmpirical: {
      // The max over pairs kinks wherever some outcome's likelihood ratio
      // crosses e^eps.
      const auto& form = std::get<EmpiricalForm>(form_);
      std::vector<double> out;
      for (const auto& [x, x_prime] : form.pairs) {
        DiscreteMeasure mu = form.kernel(x);
        DiscreteMeasure mu_prime = form.kernel(x_prime);
        for (const auto& [outcome, mass] : mu.entries()) {
          double other = mu_prime.mass(outcome);
          if (other > 0.0) out.push_back(std::log(mass / other));
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
  }
  return {};
}

double group_blackbox(const PrivacyProfile& base, int k, double eps) {
  if (k < 1) {
    throw Error(Errc::kBadK, "group_blackbox: k must be >= 1");
  }
  if (!(eps >= 0.0)) {
    throw Error(Errc::kNegativeEpsilon, "group_blackbox: eps must be >= 0");
  }
  if (k == 1) return base.evaluate(eps);
  if (eps == 0.0) return clamp01(static_cast<double>(k) * base.evaluate(0.0));
  double ratio = std::expm1(eps) / std::expm1(eps / k);
  return clamp01(ratio * base.evaluate(eps / k));
}

PrivacyProfile group_whitebox(const PrivacyProfile& base, int k) {
  if (k < 1) {
    throw Error(Errc::kBadK, "group_whitebox: k must be >= 1");
  }
  switch (base.kind()) {
    case PrivacyProfile::Kind::kLaplace:
      return laplace_profile(static_cast<double>(k) * base.theta());
    case PrivacyProfile::Kind::kGaussian:
      return gaussian_profile(static_cast<double>(k) * base.theta());
    default:
      throw Error(Errc::kUnsupportedFamily,
                  "group_whitebox: only scale-parameterized noise profiles "
                  "support scaled groups");
  }
}

PrivacyProfile load_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(Errc::kBadParams, "profile csv: empty stream");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "epsilon,delta") {
    throw Error(Errc::kBadParams,
                "profile csv: expected header 'epsilon,delta'");
  }
  std::vector<std::pair<double, double>> points;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    double vals[2];
    for (int i = 0; i < 2; ++i) {
      if (!std::getline(row, field, ',')) {
        throw Error(Errc::kBadParams, "profile csv: short row '" + line + "'");
      }
      try {
        std::size_t pos = 0;
        vals[i] = std::stod(field, &pos);
        if (pos != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw Error(Errc::kBadParams,
                    "profile csv: bad number '" + field + "'");
      }
    }
    if (std::getline(row, field, ',')) {
      throw Error(Errc::kBadParams, "profile csv: extra field in '" + line +
                                        "'");
    }
    points.emplace_back(vals[0], vals[1]);
  }
  return tabulated_profile(std::move(points));
}

void store_profile_csv(const PrivacyProfile& profile, std::ostream& out) {
  if (profile.kind() != PrivacyProfile::Kind::kTabulated) {
    throw Error(Errc::kUnsupportedFamily,
                "store_profile_csv: only tabulated profiles round-trip");
  }
  out << "epsilon,delta\n";
  char buf[64];
  for (const auto& [eps, delta] : profile.points()) {
    std::snprintf(buf, sizeof(buf), "%.15g", eps);
    out << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.15g", delta);
    out << buf << '\n';
  }
}

}  // namespace subsamp
