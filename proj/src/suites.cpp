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

#include "subsamp/suites.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "subsamp/amplification.hpp"
#include "subsamp/dataset.hpp"
#include "subsamp/divergence.hpp"
#include "subsamp/error.hpp"
#include "subsamp/mgf.hpp"
#include "subsamp/numeric.hpp"
#include "subsamp/oracle.hpp"
#include "subsamp/profiles.hpp"

namespace subsamp::suites {

namespace {

constexpr double kEqualityTol = 1e-12;
constexpr double kDominanceSlack = -1e-10;

// Platform-stable uniform in [0, 1): the distribution adapters in <random>
// are not pinned across standard libraries, raw bits are.
double u01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * u01(g);
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

DiscreteMeasure random_distribution(std::mt19937_64& g,
                                    const std::vector<std::string>& outcomes) {
  std::vector<double> raw(outcomes.size());
  StableSum total;
  for (double& v : raw) {
    v = uniform(g, 0.05, 1.0);
    total.add(v);
  }
  double t = total.value();
  std::vector<DiscreteMeasure::Entry> entries;
  entries.reserve(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    entries.emplace_back(outcomes[i], raw[i] / t);
  }
  return DiscreteMeasure::probability(std::move(entries));
}

MechanismKernel random_table_kernel(std::mt19937_64& g,
                                    const std::vector<std::string>& domain,
                                    int n_outputs) {
  std::vector<std::string> outputs;
  for (int i = 1; i <= n_outputs; ++i) {
    outputs.push_back("o" + std::to_string(i));
  }
  MechanismKernel::Table table;
  for (const auto& input : domain) {
    table.emplace(input, random_distribution(g, outputs));
  }
  return MechanismKernel::from_table(std::move(table));
}

std::vector<std::string> support_encodings(const DiscreteMeasure& m) {
  std::vector<std::string> out;
  out.reserve(m.entries().size());
  for (const auto& [enc, mass] : m.entries()) out.push_back(enc);
  return out;
}

std::vector<std::string> union_sorted(std::vector<std::string> a,
                                      const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

TightnessInstance make_instance(long n, NeighborRelation relation) {
  std::vector<std::string> universe;
  for (long i = 1; i < n; ++i) universe.push_back("e" + std::to_string(i));
  universe.push_back("v");
  universe.push_back("w");
  std::vector<std::string> xe(universe.begin(), universe.end() - 1);
  Dataset x = Dataset::from_elements(universe, xe);
  Dataset xp = relation == NeighborRelation::kSubstitute
                   ? x.with_substituted("v", "w")
                   : x.with_removed("v");
  return TightnessInstance{x, xp, "v"};
}

const double kEpsChoices[] = {0.0, 0.5, 1.0};

}  // namespace

bool SuiteResult::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

SuiteResult run_ajc(int trials, std::uint64_t seed) {
  SuiteResult result;
  result.suite = "ajc";
  std::mt19937_64 g(seed);
  const std::vector<std::string> outcomes = {"z1", "z2", "z3", "z4", "z5"};
  const double alphas[] = {1.0, 2.0, std::exp(1.0), 10.0};
  for (int t = 0; t < trials; ++t) {
    DiscreteMeasure mu0 = random_distribution(g, outcomes);
    DiscreteMeasure mu1 = random_distribution(g, outcomes);
    DiscreteMeasure mu1p = random_distribution(g, outcomes);
    double eta = uniform(g, 0.05, 0.95);
    Check check;
    check.name = "ajc/t" + std::to_string(t);
    check.gap = 0.0;
    for (double alpha : alphas) {
      AjcRecord rec = advanced_joint_convexity(mu0, mu1, mu1p, eta, alpha);
      double diff = std::abs(rec.lhs - rec.rhs);
      if (diff >= check.gap) {
        check.gap = diff;
        check.lhs = rec.lhs;
        check.rhs = rec.rhs;
      }
    }
    check.pass = check.gap <= kEqualityTol;
    result.checks.push_back(std::move(check));
  }
  return result;
}

SuiteResult run_tightness() {
  SuiteResult result;
  result.suite = "tightness";
  const double p_choices[] = {0.6, 0.75, 0.9};
  const double eps_choices[] = {0.0, std::log(2.0), 1.0};

  auto record = [&](const SubsamplingScheme& scheme, NeighborRelation relation,
                    const std::string& tag, long n_instance) {
    TightnessInstance instance = make_instance(n_instance, relation);
    for (double p : p_choices) {
      for (double eps : eps_choices) {
        TightnessReport rep = verify_tightness(scheme, relation, p, eps,
                                               instance);
        Check check;
        check.name = "tightness/" + tag + "_p" + fmt("%g", p) + "_e" +
                     fmt("%g", eps);
        check.lhs = rep.exact;
        check.rhs = rep.bound;
        check.gap = rep.gap;
        check.pass = rep.asserts_equality
                         ? std::abs(rep.gap) <= kEqualityTol
                         : rep.gap >= kDominanceSlack;
        result.checks.push_back(std::move(check));
      }
    }
  };

  for (double gamma : {0.1, 0.3, 0.5}) {
    for (long n : {2L, 5L, 8L}) {
      record(SubsamplingScheme::poisson(gamma), NeighborRelation::kRemoveAdd,
             "poisson_g" + fmt("%g", gamma) + "_n" + std::to_string(n), n);
    }
  }
  for (auto [n, m] : {std::pair<long, long>{2, 1}, {4, 2}, {6, 3}, {8, 4}}) {
    record(SubsamplingScheme::wor(n, m), NeighborRelation::kSubstitute,
           "wor_n" + std::to_string(n) + "_m" + std::to_string(m), n);
  }
  for (auto [n, m] : {std::pair<long, long>{2, 1}, {3, 2}, {4, 3}, {6, 4}}) {
    record(SubsamplingScheme::wr(n, m), NeighborRelation::kSubstitute,
           "wr_n" + std::to_string(n) + "_m" + std::to_string(m), n);
    record(SubsamplingScheme::wr(n, m), NeighborRelation::kRemoveAdd,
           "wr_hybrid_n" + std::to_string(n) + "_m" + std::to_string(m), n);
  }
  return result;
}

namespace {

struct DominanceCase {
  double exact = 0.0;
  double bound = 0.0;
};

DominanceCase report_case(const SubsamplingScheme& scheme,
                          NeighborRelation relation,
                          const MechanismKernel& kernel, const Dataset& x,
                          const Dataset& xp, double eps) {
  TightnessReport rep = verify_dominance(scheme, relation, kernel, x, xp, eps);
  return DominanceCase{rep.exact, rep.bound};
}

MechanismKernel kernel_over_reachable(std::mt19937_64& g,
                                      const SubsamplingScheme& scheme,
                                      const SubsamplingScheme& scheme_prime,
                                      const Dataset& x, const Dataset& xp) {
  std::vector<std::string> domain = union_sorted(
      support_encodings(enumerate_subsamples(scheme, x)),
      support_encodings(enumerate_subsamples(scheme_prime, xp)));
  int n_outputs = 2 + static_cast<int>(g() % 3);
  return random_table_kernel(g, domain, n_outputs);
}

DominanceCase dominance_poisson(std::mt19937_64& g, double eps) {
  double gamma = uniform(g, 0.15, 0.85);
  std::vector<std::string> universe = {"a", "v"};
  Dataset x = Dataset::from_elements(universe, {"a", "v"});
  Dataset xp = x.with_removed("v");
  SubsamplingScheme scheme = SubsamplingScheme::poisson(gamma);
  MechanismKernel kernel = kernel_over_reachable(g, scheme, scheme, x, xp);
  return report_case(scheme, NeighborRelation::kRemoveAdd, kernel, x, xp,
                     eps);
}

DominanceCase dominance_wor(std::mt19937_64& g, double eps, int variant) {
  const std::pair<long, long> combos[] = {{2, 1}, {2, 2}, {3, 1}};
  auto [n, m] = combos[variant % 3];
  std::vector<std::string> universe;
  for (long i = 1; i < n; ++i) universe.push_back("e" + std::to_string(i));
  universe.push_back("v");
  universe.push_back("w");
  std::vector<std::string> xe(universe.begin(), universe.end() - 1);
  Dataset x = Dataset::from_elements(universe, xe);
  Dataset xp = x.with_substituted("v", "w");
  SubsamplingScheme scheme = SubsamplingScheme::wor(n, m);
  MechanismKernel kernel = kernel_over_reachable(g, scheme, scheme, x, xp);
  return report_case(scheme, NeighborRelation::kSubstitute, kernel, x, xp,
                     eps);
}

DominanceCase dominance_wr(std::mt19937_64& g, double eps, int variant) {
  const std::pair<long, long> combos[] = {{2, 2}, {3, 1}};
  auto [n, m] = combos[variant % 2];
  std::vector<std::string> universe;
  for (long i = 1; i < n; ++i) universe.push_back("e" + std::to_string(i));
  universe.push_back("v");
  universe.push_back("w");
  std::vector<std::string> xe(universe.begin(), universe.end() - 1);
  Dataset x = Dataset::from_elements(universe, xe);
  Dataset xp = x.with_substituted("v", "w");
  SubsamplingScheme scheme = SubsamplingScheme::wr(n, m);
  MechanismKernel kernel = kernel_over_reachable(g, scheme, scheme, x, xp);
  return report_case(scheme, NeighborRelation::kSubstitute, kernel, x, xp,
                     eps);
}

DominanceCase dominance_wr_hybrid(std::mt19937_64& g, double eps,
                                  int variant) {
  const long m = (variant % 2 == 0) ? 2 : 3;
  const long n = 2;
  std::vector<std::string> universe = {"a", "v"};
  Dataset x = Dataset::from_elements(universe, {"a", "v"});
  Dataset xp = x.with_removed("v");
  SubsamplingScheme scheme = SubsamplingScheme::wr(n, m);
  MechanismKernel kernel = kernel_over_reachable(
      g, scheme, SubsamplingScheme::wr(n - 1, m), x, xp);
  return report_case(scheme, NeighborRelation::kRemoveAdd, kernel, x, xp,
                     eps);
}

}  // namespace

SuiteResult run_dominance(int trials, std::uint64_t seed) {
  SuiteResult result;
  result.suite = "dominance";
  std::mt19937_64 g(seed);
  const char* tags[] = {"poisson", "wor", "wr", "wr_hybrid"};
  for (int t = 0; t < trials; ++t) {
    double eps = kEpsChoices[t % 3];
    for (int theorem = 0; theorem < 4; ++theorem) {
      DominanceCase c;
      switch (theorem) {
        case 0: c = dominance_poisson(g, eps); break;
        case 1: c = dominance_wor(g, eps, t); break;
        case 2: c = dominance_wr(g, eps, t); break;
        default: c = dominance_wr_hybrid(g, eps, t); break;
      }
      Check check;
      check.name = "dominance/t" + std::to_string(t) + "/" + tags[theorem];
      check.lhs = c.exact;
      check.rhs = c.bound;
      check.gap = c.bound - c.exact;
      check.pass = check.gap >= kDominanceSlack;
      result.checks.push_back(std::move(check));
    }
  }
  return result;
}

SuiteResult run_lossrv(int trials, std::uint64_t seed) {
  SuiteResult result;
  result.suite = "lossrv";
  std::mt19937_64 g(seed);
  const std::vector<std::string> outcomes = {"z1", "z2", "z3",
                                             "z4", "z5", "z6"};
  const double eps_choices[] = {0.0, 0.5, 1.0, 2.0};
  for (int t = 0; t < trials; ++t) {
    // Random non-empty support masks; disjoint-part overlap varies freely.
    auto pick = [&]() {
      std::vector<std::string> chosen;
      while (chosen.empty()) {
        for (const auto& z : outcomes) {
          if (u01(g) < 0.7) chosen.push_back(z);
        }
      }
      return chosen;
    };
    DiscreteMeasure mu = random_distribution(g, pick());
    DiscreteMeasure mu_prime = random_distribution(g, pick());
    PrivacyLossDistribution fwd = loss_distribution(mu, mu_prime);
    PrivacyLossDistribution rev = loss_distribution(mu_prime, mu);
    Check check;
    check.name = "lossrv/t" + std::to_string(t);
    check.gap = 0.0;
    check.pass = true;
    for (double eps : eps_choices) {
      double via_loss = profile_from_loss(fwd, rev, eps);
      double direct = hockey_stick(mu, mu_prime, std::exp(eps));
      double diff = std::abs(via_loss - direct);
      if (diff >= check.gap) {
        check.gap = diff;
        check.lhs = via_loss;
        check.rhs = direct;
      }
      if (tail_bound_profile(fwd, eps) < via_loss - kEqualityTol) {
        check.pass = false;
      }
    }
    if (check.gap > kEqualityTol) check.pass = false;
    result.checks.push_back(std::move(check));
  }
  return result;
}

SuiteResult run_mgf() {
  SuiteResult result;
  result.suite = "mgf";
  const double s_choices[] = {0.5, 1.0, 2.0, 5.0};
  for (double theta : {0.5, 1.0, 2.0}) {
    PrivacyProfile profile = gaussian_profile(theta);
    for (double s : s_choices) {
      double phi = mgf_from_profiles(profile, profile, s);
      double ref = std::exp(0.5 * theta * theta * s * (s + 1.0));
      Check check;
      check.name = "mgf/gauss_t" + fmt("%g", theta) + "_s" + fmt("%g", s);
      check.lhs = phi;
      check.rhs = ref;
      check.gap = std::abs(phi - ref) / ref;
      check.pass = check.gap <= 1e-6;
      result.checks.push_back(std::move(check));
    }
  }
  for (double p : {0.6, 0.75}) {
    PrivacyProfile profile = rr_profile(p);
    for (double s : s_choices) {
      double phi = mgf_from_profiles(profile, profile, s);
      double ratio = p / (1.0 - p);
      double ref = p * std::pow(ratio, s) +
                   (1.0 - p) * std::pow(ratio, -s);
      Check check;
      check.name = "mgf/rr_p" + fmt("%g", p) + "_s" + fmt("%g", s);
      check.lhs = phi;
      check.rhs = ref;
      check.gap = std::abs(phi - ref);
      check.pass = check.gap <= 1e-8;
      result.checks.push_back(std::move(check));
    }
  }
  return result;
}

SuiteResult run_coupling() {
  SuiteResult result;
  result.suite = "coupling";
  const double eps0 = 0.3;
  auto step_cost = [&](long d) {
    return d == 0 ? 0.0
                  : laplace_profile(static_cast<double>(d)).evaluate(eps0);
  };
  auto cost_fn = [&](const std::string& a, const std::string& b) {
    return step_cost(path_distance(a, b, NeighborRelation::kSubstitute));
  };
  auto bucketed = [&](const DiscreteMeasure& nu,
                      const DiscreteMeasure& nu_prime) {
    StableSum total;
    for (const auto& [enc, mass] : nu.entries()) {
      long best = -1;
      for (const auto& [enc_p, mass_p] : nu_prime.entries()) {
        long d;
        try {
          d = path_distance(enc, enc_p, NeighborRelation::kSubstitute);
        } catch (const Error& e) {
          if (e.code() != Errc::kUnreachable) throw;
          continue;
        }
        if (best < 0 || d < best) best = d;
      }
      total.add(mass * step_cost(best));
    }
    return total.value();
  };

  auto decompose = [&](const SubsamplingScheme& scheme, long n) {
    TightnessInstance inst = make_instance(n, NeighborRelation::kSubstitute);
    DiscreteMeasure omega = enumerate_subsamples(scheme, inst.x);
    DiscreteMeasure omega_p = enumerate_subsamples(scheme, inst.x_prime);
    return maximal_coupling(omega, omega_p);
  };

  for (auto [n, m] : {std::pair<long, long>{4, 2}, {6, 3}}) {
    CouplingDecomposition mc = decompose(SubsamplingScheme::wor(n, m), n);
    bool compat = is_distance_compatible(mc.omega1, mc.omega1_prime,
                                         NeighborRelation::kSubstitute);
    CostedCoupling cc = min_cost_coupling(mc.omega1, mc.omega1_prime, cost_fn);
    double rhs = bucketed(mc.omega1, mc.omega1_prime);
    Check check;
    check.name = "coupling/wor_n" + std::to_string(n) + "_m" +
                 std::to_string(m) + "/identity";
    check.lhs = cc.value;
    check.rhs = rhs;
    check.gap = std::abs(cc.value - rhs);
    check.pass = compat && check.gap <= 1e-10;
    result.checks.push_back(std::move(check));
  }

  for (auto [n, m] : {std::pair<long, long>{3, 2}, {4, 3}}) {
    SubsamplingScheme scheme = SubsamplingScheme::wr(n, m);
    CouplingDecomposition mc = decompose(scheme, n);
    bool compat = is_distance_compatible(mc.omega1, mc.omega1_prime,
                                         NeighborRelation::kSubstitute);
    CostedCoupling cc = min_cost_coupling(mc.omega1, mc.omega1_prime, cost_fn);
    double rhs = bucketed(mc.omega1, mc.omega1_prime);
    Check check;
    check.name = "coupling/wr_n" + std::to_string(n) + "_m" +
                 std::to_string(m) + "/identity";
    check.lhs = cc.value;
    check.rhs = rhs;
    check.gap = std::abs(cc.value - rhs);
    check.pass = compat && check.gap <= 1e-10;
    result.checks.push_back(std::move(check));

    // The residual buckets by marked-element multiplicity carry the
    // conditional draw weights.
    double eta = scheme_eta(scheme, NeighborRelation::kSubstitute);
    auto weights = wr_weights(n, m);
    double worst = 0.0;
    for (const auto& [k, w] : weights) {
      StableSum bucket;
      for (const auto& [enc, mass] : mc.omega1.entries()) {
        auto counts = Dataset::parse_encoding(enc);
        auto it = counts.find("v");
        long have = it == counts.end() ? 0 : it->second;
        if (have == k) bucket.add(mass);
      }
      worst = std::max(worst, std::abs(bucket.value() - w / eta));
    }
    Check buckets;
    buckets.name = "coupling/wr_n" + std::to_string(n) + "_m" +
                   std::to_string(m) + "/buckets";
    buckets.lhs = worst;
    buckets.rhs = 0.0;
    buckets.gap = worst;
    buckets.pass = worst <= 1e-10;
    result.checks.push_back(std::move(buckets));
  }

  {
    CouplingDecomposition mc =
        decompose(SubsamplingScheme::poisson(0.4), 3);
    bool compat = is_distance_compatible(mc.omega1, mc.omega0,
                                         NeighborRelation::kSubstitute);
    Check check;
    check.name = "coupling/poisson_sub/omega1_vs_omega0";
    check.lhs = compat ? 1.0 : 0.0;
    check.rhs = 0.0;
    check.gap = check.lhs;
    check.pass = !compat;
    result.checks.push_back(std::move(check));
  }
  return result;
}

SuiteResult run_appendix() {
  SuiteResult result;
  result.suite = "appendix";
  const double eps_choices[] = {0.0, std::log(2.0)};
  for (long n : {3L, 4L, 5L}) {
    for (double gamma : {0.2, 0.5}) {
      for (double p : {0.75, 0.9}) {
        for (double eps : eps_choices) {
          TightnessInstance inst =
              make_instance(n, NeighborRelation::kSubstitute);
          TightnessReport rep =
              verify_tightness(SubsamplingScheme::poisson(gamma),
                               NeighborRelation::kSubstitute, p, eps, inst);
          Check check;
          check.name = "appendix/n" + std::to_string(n) + "_g" +
                       fmt("%g", gamma) + "_p" + fmt("%g", p) + "_e" +
                       fmt("%g", eps);
          check.lhs = rep.exact;
          check.rhs = rep.bound;
          check.gap = rep.gap;
          check.pass = rep.gap >= kDominanceSlack;
          result.checks.push_back(std::move(check));
        }
      }
    }
  }
  return result;
}

SuiteResult run_group() {
  SuiteResult result;
  result.suite = "group";
  for (const char* family : {"laplace", "gaussian"}) {
    bool lap = std::string(family) == "laplace";
    for (double theta : {0.5, 1.0, 2.0}) {
      PrivacyProfile base =
          lap ? laplace_profile(theta) : gaussian_profile(theta);
      for (int k : {2, 3, 5}) {
        PrivacyProfile scaled = group_whitebox(base, k);
        double worst = -1.0;
        double hi = static_cast<double>(k) * theta;
        for (int i = 0; i < 100; ++i) {
          double eps = hi * static_cast<double>(i) / 99.0;
          double white = scaled.evaluate(eps);
          double black = group_blackbox(base, k, eps);
          worst = std::max(worst, white - black);
        }
        Check check;
        check.name = std::string("group/") + family + "_t" +
                     fmt("%g", theta) + "_k" + std::to_string(k);
        check.lhs = worst;
        check.rhs = 0.0;
        check.gap = -worst;
        check.pass = worst <= 1e-12;
        result.checks.push_back(std::move(check));
      }
    }
  }
  return result;
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
  std::vector<SuiteResult> out;
  out.push_back(run_ajc(kDefaultAjcTrials, seed));
  out.push_back(run_tightness());
  out.push_back(run_dominance(kDefaultDominanceTrials, seed + 1));
  out.push_back(run_lossrv(kDefaultLossrvTrials, seed + 2));
  out.push_back(run_mgf());
  out.push_back(run_coupling());
  out.push_back(run_appendix());
  out.push_back(run_group());
  return out;
}

}  // namespace subsamp::suites
