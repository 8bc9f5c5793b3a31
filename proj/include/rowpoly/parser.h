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

#ifndef ROWPOLY_PARSER_H_
#define ROWPOLY_PARSER_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rowpoly/syntax.h"

namespace rowpoly {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourceSpan span, std::vector<std::string> expected,
             std::string found);

  const SourceSpan &span() const { return span_; }
  const std::vector<std::string> &expected() const { return expected_; }
  const std::string &found() const { return found_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
  std::string found_;
};

/*
 * Surface syntax:
 *
 *   term   := "\" ident "." term | "let" ident "=" term "in" term | atom+
 *   atom   := primary ("." ident | "-" ident)*
 *   primary:= ident | int | string | "(" term [":" scheme] ")"
 *           | "{" [ident "=" term ("," ident "=" term)*] ["|" term] "}"
 *
 *   scheme := ("forall" | "∀") (ident ":" kind)+ "." type | type
 *   type   := tapp ["->" type]
 *   tapp   := tatom+
 *   tatom  := Ident | ident | "(" type ")"
 *           | "{" [ident ":" type ("," ident ":" type)*] ["|" ident] "}"
 *   kind   := ("*" | "row" | "(" kind ")") ["->" kind]
 *
 * `--` starts a comment running to the end of the line. Lowercase type
 * names are variables; those not bound by a quantifier get fresh ids,
 * kind row in tail position and kind * elsewhere.
 */

/**
 * Parses a whole program. Constructor kinds in annotations are taken
 * from `constructors`; fresh type variable ids come from `supply`.
 */
Term parse_term(std::string_view src, VarSupply &supply,
                const KindEnv &constructors = builtin_kinds());
Term parse_term(std::string_view src);

Type parse_type(std::string_view src, VarSupply &supply,
                const KindEnv &constructors = builtin_kinds());
Type parse_type(std::string_view src);

Scheme parse_scheme(std::string_view src, VarSupply &supply,
                    const KindEnv &constructors = builtin_kinds());
Scheme parse_scheme(std::string_view src);

Kind parse_kind(std::string_view src);

}  // namespace rowpoly

#endif  // ROWPOLY_PARSER_H_
