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

#include "rowpoly/cli.h"

#include <fmt/format.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rowpoly/infer.h"
#include "rowpoly/oracle.h"
#include "rowpoly/parser.h"
#include "rowpoly/printer.h"

namespace rowpoly::cli {

namespace {

std::string located(std::string_view path, const SourceSpan &span,
                    const std::string &message) {
  return fmt::format("{}:{}:{}: error: {}", path, span.line, span.column,
                     message);
}

std::string_view trim(std::string_view s) {
  const char *ws = " \t\r\n";
  auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

}  // namespace

CheckResult check_source(std::string_view path, std::string_view src) {
  try {
    Scheme s = infer_program(src);
    return {true, fmt::format("{}: {}", path, print_scheme(s))};
  } catch (const ParseError &e) {
    return {false, located(path, e.span(), e.what())};
  } catch (const TypeError &e) {
    return {false, located(path, e.span(), e.what())};
  }
}

int cmd_check(const std::vector<std::string> &paths, std::ostream &out,
              std::ostream &err) {
  int status = kOk;
  for (const auto &path : paths) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
      err << fmt::format("rowpoly: cannot read `{}`\n", path);
      status = kUsageError;
      continue;
    }
    std::ostringstream buf;
    buf << file.rdbuf();
    CheckResult r = check_source(path, buf.str());
    if (r.ok) {
      out << r.text << '\n';
    } else {
      err << r.text << '\n';
      if (status == kOk) status = kTypeError;
    }
  }
  out.flush();
  err.flush();
  return status;
}

int cmd_repl(std::istream &in, std::ostream &out, bool prompt) {
  std::string line;
  for (;;) {
    if (prompt) out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    std::string_view input = trim(line);
    if (input.empty()) continue;
    if (input == ":quit" || input == ":q") break;
    if (input.starts_with(":type")) {
      input = trim(input.substr(5));
    } else if (input.starts_with(":")) {
      out << fmt::format("error: unknown command `{}`\n", input);
      continue;
    }
    try {
      out << print_scheme(infer_program(input)) << '\n';
    } catch (const ParseError &e) {
      out << located("<repl>", e.span(), e.what()) << '\n';
    } catch (const TypeError &e) {
      out << located("<repl>", e.span(), e.what()) << '\n';
    }
  }
  return kOk;
}

int cmd_oracle(const OracleFlags &flags, std::ostream &out, std::ostream &err) {
  oracle::GroundSpace space;
  try {
    space = oracle::GroundSpace::make(flags.labels, flags.types, flags.max_size);
  } catch (const std::invalid_argument &e) {
    err << "rowpoly: " << e.what() << '\n';
    return kUsageError;
  }
  oracle::CampaignResult r =
      oracle::run_campaign(space, flags.samples, flags.seed);
  out << fmt::format("{} problems, {} failures\n", r.problems, r.failures);
  if (r.first_failure) {
    const oracle::Verdict &v = *r.first_verdict;
    out << "first counterexample: " << oracle::describe(*r.first_failure)
        << '\n';
    if (v.subst) {
      out << "  unifier answered with " << v.subst->size() << " binding(s); "
          << v.instances.size() << " ground instance(s)\n";
    } else {
      out << "  unifier failed: " << v.unifier_error << '\n';
    }
    out << "  oracle found " << v.oracle.size() << " ground solution(s)";
    if (!v.oracle.empty()) {
      out << ", e.g. "
          << oracle::describe(*r.first_failure, *v.oracle.begin(), space);
    }
    out << '\n';
  }
  return r.failures == 0 ? kOk : kTypeError;
}

int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Type inference for a core language with extensible records",
               "rowpoly"};
  app.require_subcommand(1);

  std::vector<std::string> paths;
  auto *check = app.add_subcommand("check", "Print the principal type of each file");
  check->add_option("files", paths, "Source files")->required();

  auto *repl = app.add_subcommand("repl", "Read terms interactively");

  OracleFlags flags;
  auto *oracle_cmd = app.add_subcommand(
      "oracle", "Compare row unification with a brute-force oracle");
  oracle_cmd->add_option("--labels", flags.labels, "Label alphabet size")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--types", flags.types, "Number of base types (<= 3)")
      ->check(CLI::Range(1, 3));
  oracle_cmd->add_option("--max-size", flags.max_size, "Largest ground row")
      ->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--samples", flags.samples, "Random problems");
  oracle_cmd->add_option("--seed", flags.seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    // Prints help or the error message to the matching stream.
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  if (check->parsed()) return cmd_check(paths, out, err);
  if (repl->parsed()) {
    return cmd_repl(in, out, &in == &std::cin && isatty(STDIN_FILENO) != 0);
  }
  return cmd_oracle(flags, out, err);
}

}  // namespace rowpoly::cli
