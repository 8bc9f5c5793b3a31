// Copyright 2026 The rowpoly Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROWPOLY_CLI_H_
#define ROWPOLY_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rowpoly::cli {

enum ExitStatus : int {
  kOk = 0,          // every input typechecks
  kTypeError = 1,   // type, kind or parse error
  kUsageError = 2,  // bad flags or unreadable input
};

/** Outcome of checking one source text. */
struct CheckResult {
  bool ok = false;
  std::string text;  // principal scheme, or a located diagnostic
};

/**
 * `<path>: <scheme>` on success; `<path>:<line>:<col>: error: <message>`
 * on failure (without the trailing newline).
 */
CheckResult check_source(std::string_view path, std::string_view src);

int cmd_check(const std::vector<std::string> &paths, std::ostream &out,
              std::ostream &err);

/** Reads one term per line until EOF or `:quit`. */
int cmd_repl(std::istream &in, std::ostream &out, bool prompt);

struct OracleFlags {
  int labels = 4;
  int types = 3;
  int max_size = 3;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
};

int cmd_oracle(const OracleFlags &flags, std::ostream &out, std::ostream &err);

/** Parses argv and dispatches to a subcommand. */
int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err);

}  // namespace rowpoly::cli

#endif  // ROWPOLY_CLI_H_
