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

#include "subsamp/dataset.hpp"

#include <algorithm>
#include <set>

#include "subsamp/error.hpp"

namespace subsamp {

namespace {

void check_universe(const std::vector<std::string>& universe) {
  std::set<std::string> seen;
  for (const auto& elem : universe) {
    if (elem.empty() || elem.find(':') != std::string::npos ||
        elem.find('|') != std::string::npos) {
      throw Error(Errc::kBadParams,
                  "dataset: element names must be non-empty and free of "
                  "':' and '|'");
    }
    if (!seen.insert(elem).second) {
      throw Error(Errc::kBadParams,
                  "dataset: duplicate universe element '" + elem + "'");
    }
  }
}

}  // namespace

Dataset Dataset::from_counts(std::vector<std::string> universe,
                             std::vector<long> counts) {
  if (universe.size() != counts.size()) {
    throw Error(Errc::kBadParams, "dataset: universe/count length mismatch");
  }
  check_universe(universe);
  long size = 0;
  for (long c : counts) {
    if (c < 0) {
      throw Error(Errc::kBadParams, "dataset: counts must be >= 0");
    }
    size += c;
  }
  Dataset d;
  d.universe_ = std::move(universe);
  d.counts_ = std::move(counts);
  d.size_ = size;
  return d;
}

Dataset Dataset::from_elements(std::vector<std::string> universe,
                               const std::vector<std::string>& elements) {
  std::vector<long> counts(universe.size(), 0);
  Dataset d = from_counts(std::move(universe), std::move(counts));
  for (const auto& elem : elements) {
    auto it = std::find(d.universe_.begin(), d.universe_.end(), elem);
    if (it == d.universe_.end()) {
      throw Error(Errc::kBadParams,
                  "dataset: element '" + elem + "' not in universe");
    }
    ++d.counts_[static_cast<std::size_t>(it - d.universe_.begin())];
    ++d.size_;
  }
  return d;
}

long Dataset::count_of(const std::string& element) const {
  auto it = std::find(universe_.begin(), universe_.end(), element);
  if (it == universe_.end()) return 0;
  return counts_[static_cast<std::size_t>(it - universe_.begin())];
}

bool Dataset::is_set() const {
  for (long c : counts_) {
    if (c > 1) return false;
  }
  return true;
}

std::string Dataset::canonical() const {
  std::string out;
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    if (counts_[i] == 0) continue;
    if (!out.empty()) out.push_back('|');
    out += universe_[i];
    out.push_back(':');
    out += std::to_string(counts_[i]);
  }
  return out;
}

Dataset Dataset::with_removed(const std::string& element) const {
  auto it = std::find(universe_.begin(), universe_.end(), element);
  if (it == universe_.end() ||
      counts_[static_cast<std::size_t>(it - universe_.begin())] == 0) {
    throw Error(Errc::kBadParams,
                "dataset: cannot remove absent element '" + element + "'");
  }
  Dataset d = *this;
  --d.counts_[static_cast<std::size_t>(it - universe_.begin())];
  --d.size_;
  return d;
}

Dataset Dataset::with_added(const std::string& element) const {
  auto it = std::find(universe_.begin(), universe_.end(), element);
  if (it == universe_.end()) {
    throw Error(Errc::kBadParams,
                "dataset: element '" + element + "' not in universe");
  }
  Dataset d = *this;
  ++d.counts_[static_cast<std::size_t>(it - universe_.begin())];
  ++d.size_;
  return d;
}

Dataset Dataset::with_substituted(const std::string& removed,
                                  const std::string& added) const {
  return with_removed(removed).with_added(added);
}

std::map<std::string, long> Dataset::parse_encoding(const std::string& enc) {
  std::map<std::string, long> out;
  if (enc.empty()) return out;
  std::size_t start = 0;
  while (start <= enc.size()) {
    std::size_t bar = enc.find('|', start);
    std::string item = enc.substr(
        start, bar == std::string::npos ? std::string::npos : bar - start);
    std::size_t colon = item.rfind(':');
    if (colon == std::string::npos || colon == 0 ||
        colon + 1 >= item.size()) {
      throw Error(Errc::kBadParams, "dataset: bad encoding item '" + item +
                                        "'");
    }
    std::string elem = item.substr(0, colon);
    long count = 0;
    try {
      std::size_t pos = 0;
      count = std::stol(item.substr(colon + 1), &pos);
      if (pos != item.size() - colon - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(Errc::kBadParams, "dataset: bad count in '" + item + "'");
    }
    if (count <= 0) {
      throw Error(Errc::kBadParams,
                  "dataset: encoded counts must be positive in '" + item +
                      "'");
    }
    if (!out.emplace(elem, count).second) {
      throw Error(Errc::kBadParams,
                  "dataset: repeated element '" + elem + "' in encoding");
    }
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return out;
}

namespace {

long encoded_l1_distance(const std::map<std::string, long>& a,
                         const std::map<std::string, long>& b,
                         long* size_a, long* size_b) {
  long l1 = 0;
  *size_a = 0;
  *size_b = 0;
  auto it = a.begin();
  auto jt = b.begin();
  while (it != a.end() || jt != b.end()) {
    if (jt == b.end() || (it != a.end() && it->first < jt->first)) {
      l1 += it->second;
      *size_a += it->second;
      ++it;
    } else if (it == a.end() || jt->first < it->first) {
      l1 += jt->second;
      *size_b += jt->second;
      ++jt;
    } else {
      l1 += std::abs(it->second - jt->second);
      *size_a += it->second;
      *size_b += jt->second;
      ++it;
      ++jt;
    }
  }
  return l1;
}

}  // namespace

long path_distance(const std::string& x_enc, const std::string& x_prime_enc,
                   NeighborRelation relation) {
  std::map<std::string, long> a = Dataset::parse_encoding(x_enc);
  std::map<std::string, long> b = Dataset::parse_encoding(x_prime_enc);
  long size_a = 0, size_b = 0;
  long l1 = encoded_l1_distance(a, b, &size_a, &size_b);
  if (relation == NeighborRelation::kSubstitute) {
    if (size_a != size_b) {
      throw Error(Errc::kUnreachable,
                  "path_distance: substitution cannot change the size");
    }
    return l1 / 2;
  }
  return l1;
}

long path_distance(const Dataset& x, const Dataset& x_prime,
                   NeighborRelation relation) {
  return path_distance(x.canonical(), x_prime.canonical(), relation);
}

}  // namespace subsamp
