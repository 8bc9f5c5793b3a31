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

#ifndef ROWPOLY_INFER_H_
#define ROWPOLY_INFER_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "rowpoly/kindcheck.h"
#include "rowpoly/syntax.h"
#include "rowpoly/unify.h"

namespace rowpoly {

class TypeError : public std::runtime_error {
 public:
  struct UnboundVariable {
    std::string name;
  };
  struct UnifyFailure {
    UnifyError error;
  };
  struct KindFailure {
    KindError error;
  };
  struct NotARecord {
    Type type;
  };
  using Detail =
      std::variant<UnboundVariable, UnifyFailure, KindFailure, NotARecord>;

  TypeError(Detail detail, SourceSpan span);

  const Detail &detail() const { return detail_; }
  const SourceSpan &span() const { return span_; }

 private:
  Detail detail_;
  SourceSpan span_;
};

struct InferOptions {
  // Bind the built-in prelude (pair, true, false, nil, cons, cond).
  bool prelude = true;
  // Check every successful unification for soundness; see InferStats.
  bool audit_unifiers = false;
};

struct InferStats {
  std::size_t unify_calls = 0;
  std::size_t audited = 0;
  std::size_t soundness_violations = 0;
};

/**
 * One inference run. Owns the accumulated substitution; fresh variables
 * come from the supply shared with the parser, so ids never collide.
 */
class InferSession {
 public:
  InferSession(VarSupply &supply, KindEnv delta, bool audit = false);

  Type fresh(Kind kind);

  /** Replaces each quantified variable with a fresh one of the same kind. */
  Type instantiate(const Scheme &s);

  /**
   * Infers the type of `t` under `gamma`. The result may mention variables
   * bound in subst(); use resolve() for the fully substituted type.
   */
  Type infer_term(const TypeEnv &gamma, const Term &t);

  /** Generalizes `tau` over the variables not free in `gamma`. */
  Scheme generalize_in(const TypeEnv &gamma, const Type &tau);

  Type resolve(const Type &t) const;
  const Subst &subst() const { return subst_; }
  const KindEnv &delta() const { return delta_; }
  const InferStats &stats() const { return stats_; }

 private:
  void unify_at(const Type &expected, const Type &actual,
                const SourceSpan &span);
  void require_record(const Type &t, const SourceSpan &span) const;
  Type infer_node(const TypeEnv &gamma, const Term &t);

  VarSupply &supply_;
  KindEnv delta_;
  Subst subst_;
  bool audit_;
  InferStats stats_;
};

/**
 * Quantifies the free variables of `tau` not free in `gamma`, in order of
 * first occurrence. Both arguments must already be fully substituted.
 */
Scheme generalize(const TypeEnv &gamma, const Type &tau);

/**
 * Stage 1: kind-checks every annotation in `t`. Throws TypeError with a
 * KindFailure located at the offending annotation.
 */
void check_annotations(const KindEnv &delta, const Term &t);

/** The built-in prelude, kind-checked against `delta`. */
TypeEnv prelude_env(VarSupply &supply, const KindEnv &delta);

/** Source of the prelude signatures, one `name : scheme` per line. */
std::string_view prelude_source();

/**
 * Runs both stages on an already parsed term and returns its canonical
 * principal scheme. Throws TypeError.
 */
Scheme infer_closed_term(const Term &t, VarSupply &supply,
                         const InferOptions &options = {},
                         InferStats *stats = nullptr);

/**
 * Parse, kind-check annotations, infer, generalize, canonicalize.
 * Throws ParseError or TypeError.
 */
Scheme infer_program(std::string_view src, const InferOptions &options = {},
                     InferStats *stats = nullptr);

}  // namespace rowpoly

#endif  // ROWPOLY_INFER_H_
