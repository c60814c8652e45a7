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

#ifndef SUBSAMP_ERROR_HPP_
#define SUBSAMP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace subsamp {

// Precondition and domain failures raised by the library. Callers that need
// to branch on the failure kind should use code(), not the message text.
enum class Errc {
  kNegativeMass,
  kNonPositiveAlpha,
  kNotNormalized,
  kEtaOutOfRange,
  kMissingKernelEntry,
  kNonPositiveTheta,
  kPOutOfRange,
  kEmptyPairList,
  kBadK,
  kUnsupportedFamily,
  kNegativeEpsilon,
  kUnsupportedPairing,
  kBadParams,
  kMissingGroupProfile,
  kInstanceTooLarge,
  kUnreachable,
  kInfeasibleMarginals,
  kDivergentIntegrand,
  kBadLambda,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace subsamp

#endif  // SUBSAMP_ERROR_HPP_
