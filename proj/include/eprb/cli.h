// Copyright 2026 The eprb Authors
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

#ifndef EPRB_CLI_H
#define EPRB_CLI_H

#include <array>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eprb/experiment.h"

namespace eprb {

/// Bad command line or config input; maps to exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

/// "a,a',b,b'" in the angle grammar. Throws UsageError on wrong arity or
/// malformed angles.
std::array<Angle, 4> parse_angle_list(std::string_view text);

/// CSV with header "theta,phi". Blank lines and lines starting with '#'
/// are skipped.
std::vector<Context> parse_contexts_csv(std::string_view text);
std::vector<Context> read_contexts_file(const std::filesystem::path& path);

/// Arguments of `simulate` (without the subcommand name). A --config JSON
/// file is applied first and flags override it.
RunConfig parse_config(const std::vector<std::string>& args);

/// Entry point shared by the eprb binary and the tests. `args` excludes
/// the program name. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eprb

#endif  // EPRB_CLI_H
