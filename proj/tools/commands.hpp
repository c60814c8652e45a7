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

#ifndef SUBSAMP_TOOLS_COMMANDS_HPP_
#define SUBSAMP_TOOLS_COMMANDS_HPP_

namespace subsamp {
namespace cli {

// Parses argv, merges an optional JSON config file (flags win), and runs the
// selected subcommand. Exit codes: 0 success, 1 verification failure,
// 2 configuration error, 3 unsupported pairing or numeric-domain error.
int dispatch(int argc, char** argv);

}  // namespace cli
}  // namespace subsamp

#endif  // SUBSAMP_TOOLS_COMMANDS_HPP_
