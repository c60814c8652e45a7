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

#include "subsamp/measure.hpp"

#include <algorithm>
#include <cmath>

#include "subsamp/error.hpp"
#include "subsamp/kernel.hpp"
#include "subsamp/numeric.hpp"

namespace subsamp {

namespace {

struct BuiltEntries {
  std::vector<DiscreteMeasure::Entry> entries;
  double total = 0.0;
  double pruned = 0.0;
};

// Sorts, merges duplicate outcomes, rejects negative masses, prunes dust.
BuiltEntries build(std::vector<DiscreteMeasure::Entry> raw) {
  for (const auto& [outcome, mass] : raw) {
    if (!(mass >= 0.0)) {  // Catches negatives and NaN.
      throw Error(Errc::kNegativeMass,
                  "measure: negative mass at outcome '" + outcome + "'");
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  BuiltEntries out;
  StableSum total;
  StableSum pruned;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i;
    StableSum mass;
    while (j < raw.size() && raw[j].first == raw[i].first) {
      mass.add(raw[j].second);
      ++j;
    }
    double m = mass.value();
    if (m < DiscreteMeasure::kPruneThreshold) {
      pruned.add(m);
    } else {
      out.entries.emplace_back(raw[i].first, m);
      total.add(m);
    }
    i = j;
  }
  out.total = total.value();
  out.pruned = pruned.value();
  return out;
}

}  // namespace

DiscreteMeasure DiscreteMeasure::probability(std::vector<Entry> entries) {
  BuiltEntries built = build(std::move(entries));
  if (std::abs(built.total - 1.0) > kNormalizationTol + built.pruned) {
    throw Error(Errc::kNotNormalized,
                "probability: total mass " + std::to_string(built.total) +
                    " is not 1 within tolerance");
  }
  DiscreteMeasure m;
  m.entries_ = std::move(built.entries);
  m.total_ = built.total;
  m.normalized_ = true;
  return m;
}

DiscreteMeasure DiscreteMeasure::measure(std::vector<Entry> entries) {
  BuiltEntries built = build(std::move(entries));
  DiscreteMeasure m;
  m.entries_ = std::move(built.entries);
  m.total_ = built.total;
  m.normalized_ = false;
  return m;
}

DiscreteMeasure DiscreteMeasure::point_mass(std::string outcome) {
  return probability({{std::move(outcome), 1.0}});
}

DiscreteMeasure DiscreteMeasure::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(Errc::kBadParams, "bernoulli: p must lie in [0, 1]");
  }
  return probability({{"0", 1.0 - p}, {"1", p}});
}

double DiscreteMeasure::mass(std::string_view outcome) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), outcome,
      [](const Entry& e, std::string_view key) { return e.first < key; });
  if (it != entries_.end() && it->first == outcome) return it->second;
  return 0.0;
}

bool DiscreteMeasure::support_subset_of(const DiscreteMeasure& other) const {
  auto jt = other.entries_.begin();
  for (const auto& [outcome, mass] : entries_) {
    while (jt != other.entries_.end() && jt->first < outcome) ++jt;
    if (jt == other.entries_.end() || jt->first != outcome) return false;
  }
  return true;
}

DiscreteMeasure scale(const DiscreteMeasure& nu, double c) {
  if (!(c >= 0.0)) {
    throw Error(Errc::kNegativeMass, "scale: factor must be >= 0");
  }
  if (c == 1.0) return nu;
  std::vector<DiscreteMeasure::Entry> entries;
  entries.reserve(nu.entries().size());
  for (const auto& [outcome, mass] : nu.entries()) {
    entries.emplace_back(outcome, c * mass);
  }
  return DiscreteMeasure::measure(std::move(entries));
}

DiscreteMeasure mix(double wa, const DiscreteMeasure& a, double wb,
                    const DiscreteMeasure& b) {
  if (!(wa >= 0.0) || !(wb >= 0.0)) {
    throw Error(Errc::kNegativeMass, "mix: weights must be >= 0");
  }
  std::vector<DiscreteMeasure::Entry> entries;
  entries.reserve(a.entries().size() + b.entries().size());
  for (const auto& [outcome, mass] : a.entries()) {
    entries.emplace_back(outcome, wa * mass);
  }
  for (const auto& [outcome, mass] : b.entries()) {
    entries.emplace_back(outcome, wb * mass);
  }
  bool want_normalized = a.normalized() && b.normalized() &&
                         std::abs(wa + wb - 1.0) <= 1e-12;
  return want_normalized ? DiscreteMeasure::probability(std::move(entries))
                         : DiscreteMeasure::measure(std::move(entries));
}

MechanismKernel MechanismKernel::from_table(Table table) {
  MechanismKernel k;
  k.table_ = std::make_shared<const Table>(std::move(table));
  return k;
}

MechanismKernel MechanismKernel::from_function(Fn fn) {
  if (!fn) {
    throw Error(Errc::kBadParams, "kernel: null function");
  }
  MechanismKernel k;
  k.fn_ = std::move(fn);
  return k;
}

DiscreteMeasure MechanismKernel::operator()(const std::string& input) const {
  if (table_) {
    auto it = table_->find(input);
    if (it == table_->end()) {
      throw Error(Errc::kMissingKernelEntry,
                  "kernel: no entry for input '" + input + "'");
    }
    return it->second;
  }
  return fn_(input);
}

}  // namespace subsamp
