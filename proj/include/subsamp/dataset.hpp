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

#ifndef SUBSAMP_DATASET_HPP_
#define SUBSAMP_DATASET_HPP_

#include <map>
#include <string>
#include <vector>

#include "subsamp/amplification.hpp"

namespace subsamp {

// Multiset of elements drawn from a fixed, ordered universe. The canonical
// encoding lists positive-count elements in universe order as
// "elem:count|elem:count"; the empty multiset encodes as "". Element names
// must not contain ':' or '|'.
class Dataset {
 public:
  static Dataset from_counts(std::vector<std::string> universe,
                             std::vector<long> counts);
  static Dataset from_elements(std::vector<std::string> universe,
                               const std::vector<std::string>& elements);

  const std::vector<std::string>& universe() const { return universe_; }
  const std::vector<long>& counts() const { return counts_; }
  long count_of(const std::string& element) const;
  long size() const { return size_; }
  bool is_set() const;
  std::string canonical() const;

  Dataset with_removed(const std::string& element) const;
  Dataset with_added(const std::string& element) const;
  Dataset with_substituted(const std::string& removed,
                           const std::string& added) const;

  // Parses a canonical encoding back into element counts. Universe-free;
  // accepts entries in any order.
  static std::map<std::string, long> parse_encoding(const std::string& enc);

 private:
  Dataset() = default;

  std::vector<std::string> universe_;
  std::vector<long> counts_;  // Aligned with universe_, each >= 0.
  long size_ = 0;
};

// Minimal number of relation steps from x to x'. Substitution requires equal
// sizes and moves ||x - x'||_1 / 2 elements; remove-add moves ||x - x'||_1.
// Throws kUnreachable when no path exists (size mismatch under substitution).
long path_distance(const Dataset& x, const Dataset& x_prime,
                   NeighborRelation relation);

// Same, on canonical encodings.
long path_distance(const std::string& x_enc, const std::string& x_prime_enc,
                   NeighborRelation relation);

}  // namespace subsamp

#endif  // SUBSAMP_DATASET_HPP_
