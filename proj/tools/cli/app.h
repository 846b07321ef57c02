// Copyright 2026 The hdclone Authors
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

#ifndef HDCLONE_CLI_APP_H
#define HDCLONE_CLI_APP_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hdclone::cli {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitContract = 3;

/// `args` excludes the program name. Returns the process exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// "1e5" -> 100000. Rejects negatives, fractions and values past 2^63.
bool parse_count(const std::string &text, uint64_t &value);

}  // namespace hdclone::cli

#endif
