//
// Copyright 2026 The nerbt Authors
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
//

#ifndef NERBT_TOOLS_CLI_H_
#define NERBT_TOOLS_CLI_H_

#include <iosfwd>

namespace nerbt {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidData = 1,
  kExitUsage = 2,
  kExitBackend = 3,
};

// Entry point of the nerbt command line. `in` backs "-" inputs; normal
// output goes to `out`, diagnostics and summaries to `err`.
int RunCli(int argc, const char* const* argv, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace nerbt

#endif  // NERBT_TOOLS_CLI_H_
