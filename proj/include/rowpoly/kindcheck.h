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

#ifndef ROWPOLY_KINDCHECK_H_
#define ROWPOLY_KINDCHECK_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "rowpoly/syntax.h"

namespace rowpoly {

/**
 * A kinding failure. `Mismatch::expected_arrow_from` is set when a type
 * in function position was required to have some kind `k -> _` but did
 * not; `expected` is then unused.
 */
class KindError : public std::runtime_error {
 public:
  struct Mismatch {
    Type offender;
    Kind expected;
    Kind actual;
    std::optional<Kind> expected_arrow_from;
  };
  struct UnboundConstructor {
    std::string name;
  };
  struct UnboundVariable {
    TypeVar var;
  };
  using Detail = std::variant<Mismatch, UnboundConstructor, UnboundVariable>;

  explicit KindError(Detail detail);

  const Detail &detail() const { return detail_; }

 private:
  Detail detail_;
};

/** The unique kind of `tau` under `delta`; throws KindError. */
Kind kind_of(const KindEnv &delta, const Type &tau);

/** Binds the quantified variables and requires the body to have kind *. */
void check_scheme(const KindEnv &delta, const Scheme &s);

}  // namespace rowpoly

#endif  // ROWPOLY_KINDCHECK_H_
