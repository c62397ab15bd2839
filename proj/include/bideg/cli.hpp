// Copyright 2026 The bideg Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bideg::cli {

// Exit statuses.
constexpr int kOk = 0;
constexpr int kGateFailed = 1;
constexpr int kUsageError = 2;

// Environment variable naming the default output directory.
constexpr const char* kOutputDirEnv = "BIDEG_OUTPUT_DIR";

// Parses `args` (args[0] is the program name) and runs the subcommand.
// Normal output goes to `out`, diagnostics and usage text to `err`.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);
int parse_and_dispatch(int argc, const char* const* argv);

}  // namespace bideg::cli
