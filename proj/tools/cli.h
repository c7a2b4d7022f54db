// Copyright 2026 The kvote Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The kvote command line: gen, solve, sweep and bench subcommands.

#ifndef KVOTE_TOOLS_CLI_H_
#define KVOTE_TOOLS_CLI_H_

#include <iosfwd>

namespace kvote::cli {

inline constexpr int kExitOk = 0;
// A sweep broke a bound-chain invariant.
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
// A node, time or enumeration budget ran out.
inline constexpr int kExitPartial = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kvote::cli

#endif  // KVOTE_TOOLS_CLI_H_
