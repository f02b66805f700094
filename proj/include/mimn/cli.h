// Copyright 2026 The MIMN Authors. All Rights Reserved.
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

// Command-line front end. Subcommands: train, predict, eval, cv, synth,
// selfcheck.
//
// Exit codes: 0 success, 1 selfcheck failure, 2 usage, 3 data or model
// error, 4 training error. Logs go to `err`; data products go to files or
// `out`.

#ifndef MIMN_CLI_H_
#define MIMN_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "mimn/error.h"

namespace mimn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSelfCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitTraining = 4;

int ExitCodeFor(ErrorCode code);

// args excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace mimn

#endif  // MIMN_CLI_H_
