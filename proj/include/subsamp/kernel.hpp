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

#ifndef SUBSAMP_KERNEL_HPP_
#define SUBSAMP_KERNEL_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "subsamp/measure.hpp"

namespace subsamp {

// Randomized map from encoded inputs to output distributions. Backed either
// by an explicit table (finite domain, misses throw kMissingKernelEntry) or
// by a total function.
class MechanismKernel {
 public:
  using Table = std::map<std::string, DiscreteMeasure>;
  using Fn = std::function<DiscreteMeasure(const std::string&)>;

  static MechanismKernel from_table(Table table);
  static MechanismKernel from_function(Fn fn);

  DiscreteMeasure operator()(const std::string& input) const;

  // Null for function-backed kernels.
  const Table* table() const { return table_.get(); }

 private:
  MechanismKernel() = default;

  std::shared_ptr<const Table> table_;
  Fn fn_;
};

}  // namespace subsamp

#endif  // SUBSAMP_KERNEL_HPP_
