// Copyright 2026 The Flowmech Authors.
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

#ifndef FLOWMECH_CLI_H_
#define FLOWMECH_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace flowmech::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kInvalidInput = 2,
  kInfeasibleParameters = 3,
  kOracleLimit = 4,
};

// Runs one command. `args` excludes the program name. Result documents go to
// `out` (or the --output file); diagnostics go to `err`, warnings as one
// JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flowmech::cli

#endif  // FLOWMECH_CLI_H_
