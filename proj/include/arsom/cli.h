// Copyright 2026 The ARSOM Authors
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

#ifndef ARSOM_CLI_H_
#define ARSOM_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace arsom {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitEmptyCandidates = 4;

// Runs one of the `mine`, `select`, `evaluate` or `cv` subcommands. Reports
// go to `out` as JSON; diagnostics and the human-readable summary go to
// `err`. Failures print one JSON line {"error": {"kind", "message"}}.
// args[0] is the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arsom

#endif  // ARSOM_CLI_H_
