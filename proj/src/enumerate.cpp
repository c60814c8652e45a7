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

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "subsamp/dataset.hpp"
#include "subsamp/error.hpp"
#include "subsamp/numeric.hpp"
#include "subsamp/oracle.hpp"

namespace subsamp {

namespace {

constexpr double kMaxEnumeration = 1e6;

// Elements of x with count > 0, in universe order.
std::vector<std::string> present_elements(const Dataset& x) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < x.universe().size(); ++i) {
    if (x.counts()[i] > 0) out.push_back(x.universe()[i]);
  }
  return out;
}

std::string encode_subset(const std::vector<std::string>& elems,
                          const std::vector<long>& counts) {
  std::string out;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (counts[i] == 0) continue;
    if (!out.empty()) out.push_back('|');
    out += elems[i];
    out.push_back(':');
    out += std::to_string(counts[i]);
  }
  return out;
}

// C(n, k) with an early cap so the count itself cannot overflow.
double capped_binomial(long n, long k) {
  double v = 1.0;
  for (long i = 1; i <= k; ++i) {
    v *= static_cast<double>(n - k + i) / static_cast<double>(i);
    if (v > 4.0 * kMaxEnumeration) return v;
  }
  return v;
}

DiscreteMeasure enumerate_poisson(double gamma, const Dataset& x) {
  std::vector<std::string> elems = present_elements(x);
  if (elems.size() > 16) {
    throw Error(Errc::kInstanceTooLarge,
                "enumerate_subsamples: Poisson enumeration supports at most "
                "16 elements, got " + std::to_string(elems.size()));
  }
  std::size_t count = elems.size();
  std::vector<DiscreteMeasure::Entry> entries;
  entries.reserve(static_cast<std::size_t>(1) << count);
  for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << count);
       ++mask) {
    std::vector<long> counts(count, 0);
    int bits = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (mask & (static_cast<std::size_t>(1) << i)) {
        counts[i] = 1;
        ++bits;
      }
    }
    double mass = std::pow(gamma, bits) *
                  std::pow(1.0 - gamma, static_cast<double>(count - bits));
    entries.emplace_back(encode_subset(elems, counts), mass);
  }
  return DiscreteMeasure::probability(std::move(entries));
}

DiscreteMeasure enumerate_wor(long n, long m, const Dataset& x) {
  std::vector<std::string> elems = present_elements(x);
  if (static_cast<long>(elems.size()) != n) {
    throw Error(Errc::kBadParams,
                "enumerate_subsamples: scheme population size " +
                    std::to_string(n) + " does not match dataset size " +
                    std::to_string(elems.size()));
  }
  if (capped_binomial(n, m) > kMaxEnumeration) {
    throw Error(Errc::kInstanceTooLarge,
                "enumerate_subsamples: too many size-" + std::to_string(m) +
                    " subsets");
  }
  double mass = std::exp(-log_binomial(n, m));
  std::vector<DiscreteMeasure::Entry> entries;
  // Standard ascending-index combination walk.
  std::vector<long> idx(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<long> counts(elems.size(), 0);
    for (long i : idx) counts[static_cast<std::size_t>(i)] = 1;
    entries.emplace_back(encode_subset(elems, counts), mass);
    long pos = m - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - m + pos) {
      --pos;
    }
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (long i = pos + 1; i < m; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return DiscreteMeasure::probability(std::move(entries));
}

DiscreteMeasure enumerate_wr(long n, long m, const Dataset& x) {
  std::vector<std::string> elems = present_elements(x);
  if (static_cast<long>(elems.size()) != n) {
    throw Error(Errc::kBadParams,
                "enumerate_subsamples: scheme population size " +
                    std::to_string(n) + " does not match dataset size " +
                    std::to_string(elems.size()));
  }
  if (capped_binomial(n + m - 1, m) > kMaxEnumeration) {
    throw Error(Errc::kInstanceTooLarge,
                "enumerate_subsamples: too many size-" + std::to_string(m) +
                    " draw count vectors");
  }
  double log_m_fact = std::lgamma(static_cast<double>(m) + 1.0);
  double log_n = std::log(static_cast<double>(n));
  std::vector<DiscreteMeasure::Entry> entries;
  // Walk all count vectors summing to m: multinomial mass
  // m! / prod(c_i!) / n^m.
  std::vector<long> counts(elems.size(), 0);
  auto emit = [&]() {
    double log_mass = log_m_fact - static_cast<double>(m) * log_n;
    for (long c : counts) {
      log_mass -= std::lgamma(static_cast<double>(c) + 1.0);
    }
    entries.emplace_back(encode_subset(elems, counts), std::exp(log_mass));
  };
  std::function<void(std::size_t, long)> walk = [&](std::size_t pos,
                                                    long remaining) {
    if (pos + 1 == counts.size()) {
      counts[pos] = remaining;
      emit();
      counts[pos] = 0;
      return;
    }
    for (long c = 0; c <= remaining; ++c) {
      counts[pos] = c;
      walk(pos + 1, remaining - c);
    }
    counts[pos] = 0;
  };
  walk(0, m);
  return DiscreteMeasure::probability(std::move(entries));
}

}  // namespace

DiscreteMeasure enumerate_subsamples(const SubsamplingScheme& scheme,
                                     const Dataset& x) {
  if (!x.is_set()) {
    throw Error(Errc::kBadParams,
                "enumerate_subsamples: input must be a set (all counts 1)");
  }
  switch (scheme.kind) {
    case SubsamplingScheme::Kind::kPoisson:
      return enumerate_poisson(scheme.gamma, x);
    case SubsamplingScheme::Kind::kWor:
      return enumerate_wor(scheme.n, scheme.m, x);
    case SubsamplingScheme::Kind::kWr:
      return enumerate_wr(scheme.n, scheme.m, x);
  }
  throw Error(Errc::kBadParams, "enumerate_subsamples: unknown scheme");
}

}  // namespace subsamp
