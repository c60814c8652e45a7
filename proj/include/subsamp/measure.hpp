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

#ifndef SUBSAMP_MEASURE_HPP_
#define SUBSAMP_MEASURE_HPP_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace subsamp {

// Finite measure on string-labelled outcomes. Entries are kept sorted by
// outcome and strictly positive; masses below kPruneThreshold are dropped at
// construction (the dropped total widens the normalization tolerance).
class DiscreteMeasure {
 public:
  using Entry = std::pair<std::string, double>;

  // The zero measure: empty support, total 0, not normalized.
  DiscreteMeasure() = default;

  static constexpr double kPruneThreshold = 1e-15;
  static constexpr double kNormalizationTol = 1e-12;

  // Probability distribution: total mass must be 1 within kNormalizationTol
  // plus whatever was pruned. Throws kNotNormalized otherwise.
  static DiscreteMeasure probability(std::vector<Entry> entries);

  // Unnormalized non-negative measure (may be empty, i.e. the zero measure).
  static DiscreteMeasure measure(std::vector<Entry> entries);

  static DiscreteMeasure point_mass(std::string outcome);

  // {"0": 1-p, "1": p}.
  static DiscreteMeasure bernoulli(double p);

  double mass(std::string_view outcome) const;
  double total() const { return total_; }
  bool normalized() const { return normalized_; }
  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }

  // True iff every support point of *this carries positive mass under other.
  bool support_subset_of(const DiscreteMeasure& other) const;

 private:
  std::vector<Entry> entries_;
  double total_ = 0.0;
  bool normalized_ = false;
};

// c * nu for c >= 0. The result keeps the normalized flag only when c == 1.
DiscreteMeasure scale(const DiscreteMeasure& nu, double c);

// wa * a + wb * b for wa, wb >= 0. Normalized iff both inputs are and
// wa + wb == 1 within tolerance.
DiscreteMeasure mix(double wa, const DiscreteMeasure& a, double wb,
                    const DiscreteMeasure& b);

}  // namespace subsamp

#endif  // SUBSAMP_MEASURE_HPP_
