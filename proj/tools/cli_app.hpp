// Copyright 2026 The opfid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPFID_TOOLS_CLI_APP_HPP
#define OPFID_TOOLS_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace opfid::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kToleranceBreach = 1,
  kUsage = 2,
  kIo = 3,
  kResource = 4,
};

/// Header of every sweep CSV.
inline constexpr const char* kCsvHeader =
    "model,n,t,method,param_name,param_value,chi,chi_secular,chi_oscillatory,"
    "chi_derivative,degeneracy,epsilon";

/// Runs the opfid command line; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opfid::cli

#endif  // OPFID_TOOLS_CLI_APP_HPP
