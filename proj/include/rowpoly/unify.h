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

#ifndef ROWPOLY_UNIFY_H_
#define ROWPOLY_UNIFY_H_

#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "rowpoly/syntax.h"

namespace rowpoly {

/**
 * An idempotent, kind-respecting substitution. Row variables are bound
 * to row types; a row variable renamed to another is bound to `{| r}`.
 */
class Subst {
 public:
  Subst() = default;

  /** Adds v |-> t. Identity bindings are dropped. */
  void bind(const TypeVar &v, Type t);

  const Type *lookup(const TypeVar &v) const;
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }

  const std::map<TypeVar, Type> &bindings() const { return map_; }

 private:
  std::map<TypeVar, Type> map_;
};

class UnifyError : public std::runtime_error {
 public:
  struct Mismatch {
    Type left;
    Type right;
  };
  struct OccursCheck {
    TypeVar var;
    Type in;
  };
  struct RowMissingLabel {
    Label label;
    RowType closed_row;
  };
  struct RowTailEscape {
    TypeVar var;
    RowType row;
  };
  /** Substituting a row tail produced a row with `label` twice. */
  struct DuplicateLabel {
    Label label;
    RowType row;
  };
  using Detail = std::variant<Mismatch, OccursCheck, RowMissingLabel,
                              RowTailEscape, DuplicateLabel>;

  explicit UnifyError(Detail detail);

  const Detail &detail() const { return detail_; }

 private:
  Detail detail_;
};

Type apply(const Subst &s, const Type &tau);
RowType apply(const Subst &s, const RowType &row);
Scheme apply(const Subst &s, const Scheme &scheme);
TypeEnv apply(const Subst &s, const TypeEnv &env);

/** apply(compose(outer, inner), t) == apply(outer, apply(inner, t)). */
Subst compose(const Subst &outer, const Subst &inner);

bool is_idempotent(const Subst &s);

/**
 * Most general unifier of two types of equal kind, treating rows modulo
 * field order. Fresh row variables come from `supply`.
 */
Subst unify(const Type &t1, const Type &t2, VarSupply &supply);

/** Unification of two rows of possibly unknown size. */
Subst unify_rows(const RowType &r1, const RowType &r2, VarSupply &supply);

}  // namespace rowpoly

#endif  // ROWPOLY_UNIFY_H_
