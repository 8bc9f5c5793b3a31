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

#ifndef ROWPOLY_SYNTAX_H_
#define ROWPOLY_SYNTAX_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rowpoly {

/**
 * A kind: `*` classifies value types, `row` classifies rows, and
 * `k1 -> k2` classifies type constructors.
 */
class Kind {
 public:
  enum class Tag { kStar, kRow, kArrow };

  static Kind star() { return Kind(Tag::kStar); }
  static Kind row() { return Kind(Tag::kRow); }
  static Kind arrow(Kind param, Kind result);

  Tag tag() const { return tag_; }
  bool is_star() const { return tag_ == Tag::kStar; }
  bool is_row() const { return tag_ == Tag::kRow; }
  bool is_arrow() const { return tag_ == Tag::kArrow; }

  // Only valid on arrow kinds.
  const Kind &param() const { return arrow_->first; }
  const Kind &result() const { return arrow_->second; }

  friend bool operator==(const Kind &a, const Kind &b);
  friend bool operator!=(const Kind &a, const Kind &b) { return !(a == b); }

 private:
  explicit Kind(Tag tag) : tag_(tag) {}

  Tag tag_;
  std::shared_ptr<const std::pair<Kind, Kind>> arrow_;
};

using Label = std::string;

/** True if `s` is a lowercase-initial identifier usable as a label. */
bool is_valid_label(const std::string &s);

/**
 * A type variable. Identity is the id alone; `name` is the user-written
 * spelling, kept only for diagnostics about annotations.
 */
struct TypeVar {
  std::int64_t id = 0;
  Kind kind = Kind::star();
  std::string name;

  friend bool operator==(const TypeVar &a, const TypeVar &b) {
    return a.id == b.id;
  }
  friend bool operator<(const TypeVar &a, const TypeVar &b) {
    return a.id < b.id;
  }
};

using TypeVarSet = std::set<TypeVar>;

/** Monotone supply of fresh type variable ids. */
class VarSupply {
 public:
  explicit VarSupply(std::int64_t next = 0) : next_(next) {}

  TypeVar fresh(Kind kind) { return TypeVar{next_++, std::move(kind), {}}; }
  TypeVar fresh_named(Kind kind, std::string name) {
    return TypeVar{next_++, std::move(kind), std::move(name)};
  }
  std::int64_t peek() const { return next_; }
  // Ensures every future id is strictly greater than `id`.
  void reserve_above(std::int64_t id) {
    if (next_ <= id) next_ = id + 1;
  }

 private:
  std::int64_t next_;
};

class Type;
struct RowType;

struct VarNode;
struct ConNode;
struct AppNode;
struct FunNode;
struct RowNode;
struct RecConNode {};

/**
 * A type expression. Immutable; copies share structure.
 */
class Type {
 public:
  using Node =
      std::variant<VarNode, ConNode, AppNode, FunNode, RowNode, RecConNode>;

  static Type var(TypeVar v);
  static Type con(std::string name, Kind kind);
  static Type app(Type fun, Type arg);
  static Type fun(Type dom, Type cod);
  static Type row(RowType row);
  static Type rec_con();
  /** Rec applied to `row`. */
  static Type record(RowType row);

  const Node &node() const;

  template <typename T>
  const T *get_if() const;
  template <typename T>
  bool is() const;

 private:
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/**
 * A row: a duplicate-free collection of labelled fields plus an optional
 * tail variable of kind row. Field order is not significant; the stored
 * order is whatever the producer used until canonicalize_row sorts it.
 */
struct RowType {
  std::vector<std::pair<Label, Type>> fields;
  std::optional<TypeVar> tail;

  const Type *find(const Label &label) const;
  bool has(const Label &label) const { return find(label) != nullptr; }
  bool closed() const { return !tail.has_value(); }
};

struct VarNode {
  TypeVar var;
};
struct ConNode {
  std::string name;
  Kind kind;
};
struct AppNode {
  Type fun;
  Type arg;
};
struct FunNode {
  Type dom;
  Type cod;
};
struct RowNode {
  RowType row;
};

inline const Type::Node &Type::node() const { return *node_; }
template <typename T>
const T *Type::get_if() const {
  return std::get_if<T>(node_.get());
}
template <typename T>
bool Type::is() const {
  return std::holds_alternative<T>(*node_);
}

/** A type quantified over kinded variables. */
struct Scheme {
  std::vector<TypeVar> quantified;
  Type body;

  static Scheme mono(Type t) { return Scheme{{}, std::move(t)}; }
};

/** Rows with fields in lexicographic label order; tail preserved. */
RowType canonicalize_row(const RowType &row);
/** Canonicalizes every row node in `t`. */
Type canonicalize(const Type &t);
Scheme canonicalize(const Scheme &s);

/**
 * Structural equality, except that rows compare as label maps (order of
 * fields is irrelevant). Variables compare by id.
 */
bool row_equivalent(const Type &a, const Type &b);

/**
 * Equality up to renaming of quantified variables and reordering of row
 * fields. Free variables must coincide exactly.
 */
bool alpha_equal(const Scheme &a, const Scheme &b);

/**
 * Kind of a type computed from the kinds carried by its variables and
 * constructors, without consulting an environment. Returns nullopt for
 * ill-kinded types.
 */
std::optional<Kind> carried_kind(const Type &t);

/** Variables in order of first occurrence (fields visited in label order). */
std::vector<TypeVar> vars_in_order(const Type &t);
TypeVarSet free_type_vars(const Type &t);
TypeVarSet free_type_vars(const Scheme &s);
bool occurs_in(const TypeVar &v, const Type &t);

/** Term variable environment; lookup finds the innermost binding. */
class TypeEnv {
 public:
  TypeEnv() = default;

  TypeEnv extend(std::string name, Scheme scheme) const;
  const Scheme *lookup(const std::string &name) const;
  bool empty() const { return head_ == nullptr; }

  /** Bindings, innermost first. */
  std::vector<std::pair<std::string, Scheme>> bindings() const;

 private:
  struct Binding {
    std::string name;
    Scheme scheme;
    std::shared_ptr<const Binding> next;
  };
  explicit TypeEnv(std::shared_ptr<const Binding> head)
      : head_(std::move(head)) {}

  std::shared_ptr<const Binding> head_;
};

TypeVarSet free_type_vars(const TypeEnv &env);

/** Kinds of type constructors and type variables in scope. */
class KindEnv {
 public:
  void bind_constructor(const std::string &name, Kind kind);
  void bind_var(const TypeVar &v);

  const Kind *constructor(const std::string &name) const;
  const Kind *var(std::int64_t id) const;

  const std::map<std::string, Kind> &constructors() const {
    return constructors_;
  }

 private:
  std::map<std::string, Kind> constructors_;
  std::map<std::int64_t, Kind> vars_;
};

/** Int, String, Bool : *, List : * -> *, Rec : row -> *. */
const KindEnv &builtin_kinds();

inline constexpr char kRecName[] = "Rec";

Type int_type();
Type string_type();
Type bool_type();
Type list_of(Type elem);

/** Byte offsets plus 1-based line/column of the start. */
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

class Term;

struct TermVar {
  std::string name;
};
struct TermLam {
  std::string param;
  std::shared_ptr<const Term> body;
};
struct TermApp {
  std::shared_ptr<const Term> fun;
  std::shared_ptr<const Term> arg;
};
struct TermLet {
  std::string name;
  std::shared_ptr<const Term> bound;
  std::shared_ptr<const Term> body;
};
struct TermLit {
  std::variant<std::int64_t, std::string> value;
};
struct TermRecord {
  std::vector<std::pair<Label, Term>> fields;
};
struct TermSelect {
  std::shared_ptr<const Term> record;
  Label label;
};
struct TermExtend {
  Label label;
  std::shared_ptr<const Term> value;
  std::shared_ptr<const Term> record;
};
struct TermRestrict {
  std::shared_ptr<const Term> record;
  Label label;
};
/** `(e : T)`; `type_span` locates T for kind diagnostics. */
struct TermAnnot {
  std::shared_ptr<const Term> term;
  Scheme type;
  SourceSpan type_span;
};

class Term {
 public:
  using Node = std::variant<TermVar, TermLam, TermApp, TermLet, TermLit,
                            TermRecord, TermSelect, TermExtend, TermRestrict,
                            TermAnnot>;

  Term(Node node, SourceSpan span = {})
      : node_(std::move(node)), span_(span) {}

  const Node &node() const { return node_; }
  const SourceSpan &span() const { return span_; }

  template <typename T>
  const T *get_if() const {
    return std::get_if<T>(&node_);
  }

 private:
  Node node_;
  SourceSpan span_;
};

namespace term {
Term var(std::string name, SourceSpan span = {});
Term lam(std::string param, Term body, SourceSpan span = {});
Term app(Term fun, Term arg, SourceSpan span = {});
Term let(std::string name, Term bound, Term body, SourceSpan span = {});
Term int_lit(std::int64_t value, SourceSpan span = {});
Term string_lit(std::string value, SourceSpan span = {});
Term record(std::vector<std::pair<Label, Term>> fields, SourceSpan span = {});
Term select(Term record, Label label, SourceSpan span = {});
Term extend(Label label, Term value, Term record, SourceSpan span = {});
Term restrict(Term record, Label label, SourceSpan span = {});
Term annot(Term term, Scheme type, SourceSpan span = {},
           SourceSpan type_span = {});
}  // namespace term

/** Structural equality of terms, ignoring spans; record fields by order. */
bool same_term(const Term &a, const Term &b);

}  // namespace rowpoly

#endif  // ROWPOLY_SYNTAX_H_
