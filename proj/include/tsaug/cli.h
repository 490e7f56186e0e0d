// Copyright 2026 The tsaug Authors.
//
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

#ifndef TSAUG_CLI_H_
#define TSAUG_CLI_H_

namespace tsaug {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // I/O and other unexpected failures
  kExitConfig = 2,
  kExitInput = 3,
  kExitBackend = 4,
};

// Entry point of the `tsaug` tool. Subcommands: simplify, augment,
// prepare-eval, report, filter-stats.
int RunCli(int argc, const char* const* argv);

}  // namespace tsaug

#endif  // TSAUG_CLI_H_
