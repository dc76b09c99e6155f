// Copyright 2026 The InfoLaw Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Kept in the library so it can be driven in-process.

#ifndef INFOLAW_CLI_HPP_
#define INFOLAW_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace infolaw {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitLawQuality = 3;
inline constexpr int kExitIo = 4;

// args excludes the program name. Output paths of "-" go to out; input
// paths of "-" read from in. Failures print {"error": {...}} to err.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err);

}  // namespace infolaw

#endif  // INFOLAW_CLI_HPP_
