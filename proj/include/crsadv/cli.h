//
// Copyright 2026 The crsadv Authors
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

#ifndef CRSADV_CLI_H_
#define CRSADV_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace crsadv::cli {

inline constexpr const char* kVersion = "1.0.0";

// Runs the command line `args` (args[0] is the program name) and returns
// the process exit code: 0 success, 1 usage, 2 data, 3 adapter.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace crsadv::cli

#endif  // CRSADV_CLI_H_
