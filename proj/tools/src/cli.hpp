// Copyright 2026 The GESN Authors.
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

#ifndef GESN_TOOLS_CLI_HPP_
#define GESN_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace gesn::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidArgs = 2;
inline constexpr int kExitLoadError = 3;
inline constexpr int kExitNumericError = 4;

// Name of the environment variable holding the default output root.
inline constexpr const char* kOutputDirEnv = "GESN_OUTPUT_DIR";

// Runs the tool on `args` (without the program name) and returns the exit
// code. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gesn::cli

#endif  // GESN_TOOLS_CLI_HPP_
