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

#include "rowpoly/infer.h"

#include <fmt/format.h>

#include <algorithm>
#include <cassert>
#include <set>

#include "rowpoly/parser.h"
#include "rowpoly/printer.h"

namespace rowpoly {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string message(const TypeError::Detail &detail) {
  return std::visit(
      overloaded{
          [](const TypeError::UnboundVariable &u) {
            return fmt::format("unbound variable `{}`", u.name);
          },
          [](const TypeError::UnifyFailure &u) {
            return std::string(u.error.what());
          },
          [](const TypeError::KindFailure &k) {
            return std::string(k.error.what());
          },
          [](const TypeError::NotARecord &n) {
            return fmt::format("expected a record, found `{}`",
                               print_type(n.type));
          },
      },
      detail);
}

// Head of an application spine.
const Type &head_of(const Type &t) {
  const Type *cur = &t;
  while (const auto *a = cur->get_if<AppNode>()) cur = &a->fun;
  return *cur;
}

}  // namespace

TypeError::TypeError(Detail detail, SourceSpan span)
    : std::runtime_error(message(detail)),
      detail_(std::move(detail)),
      span_(span) {}

InferSession::InferSession(VarSupply &supply, KindEnv delta, bool audit)
    : supply_(supply), delta_(std::move(delta)), audit_(audit) {}

Type InferSession::fresh(Kind kind) {
  return Type::var(supply_.fresh(std::move(kind)));
}

Type InferSession::instantiate(const Scheme &s) {
  if (s.quantified.empty()) return s.body;
  Subst copy;
  for (const auto &q : s.quantified) copy.bind(q, fresh(q.kind));
  return apply(copy, s.body);
}

Type InferSession::resolve(const Type &t) const { return apply(subst_, t); }

void InferSession::unify_at(const Type &expected, const Type &actual,
                            const SourceSpan &span) {
  ++stats_.unify_calls;
  try {
    Type left = resolve(expected);
    Type right = resolve(actual);
    Subst step = unify(left, right, supply_);
    if (audit_) {
      ++stats_.audited;
      if (!row_equivalent(apply(step, left), apply(step, right))) {
        ++stats_.soundness_violations;
      }
    }
    subst_ = compose(step, subst_);
  } catch (const UnifyError &e) {
    throw TypeError(TypeError::UnifyFailure{e}, span);
  }
}

void InferSession::require_record(const Type &t, const SourceSpan &span) const {
  Type resolved = resolve(t);
  const Type &head = head_of(resolved);
  if (head.is<VarNode>()) return;
  if (head.is<RecConNode>() && resolved.is<AppNode>()) return;
  throw TypeError(TypeError::NotARecord{resolved}, span);
}

Scheme generalize(const TypeEnv &gamma, const Type &tau) {
  TypeVarSet in_env = free_type_vars(gamma);
  Scheme out{{}, tau};
  for (const auto &v : vars_in_order(tau)) {
    if (!in_env.contains(v)) out.quantified.push_back(v);
  }
  return out;
}

Scheme InferSession::generalize_in(const TypeEnv &gamma, const Type &tau) {
  return generalize(apply(subst_, gamma), resolve(tau));
}

Type InferSession::infer_term(const TypeEnv &gamma, const Term &t) {
  try {
    return infer_node(gamma, t);
  } catch (const UnifyError &e) {
    // Substitution merges that duplicate a label surface here, attributed
    // to the innermost node whose own work triggered them.
    throw TypeError(TypeError::UnifyFailure{e}, t.span());
  }
}

Type InferSession::infer_node(const TypeEnv &gamma, const Term &t) {
  const SourceSpan &span = t.span();
  return std::visit(
      overloaded{
          [&](const TermVar &n) -> Type {
            const Scheme *s = gamma.lookup(n.name);
            if (s == nullptr) {
              throw TypeError(TypeError::UnboundVariable{n.name}, span);
            }
            return instantiate(*s);
          },
          [&](const TermLit &n) -> Type {
            return std::holds_alternative<std::int64_t>(n.value)
                       ? int_type()
                       : string_type();
          },
          [&](const TermLam &n) -> Type {
            Type param = fresh(Kind::star());
            Type body =
                infer_term(gamma.extend(n.param, Scheme::mono(param)), *n.body);
            return Type::fun(param, body);
          },
          [&](const TermApp &n) -> Type {
            Type fun = infer_term(gamma, *n.fun);
            Type arg = infer_term(gamma, *n.arg);
            Type result = fresh(Kind::star());
            // The only rule whose unification compares rows modulo order.
            unify_at(fun, Type::fun(arg, result), span);
            return result;
          },
          [&](const TermLet &n) -> Type {
            Type bound = infer_term(gamma, *n.bound);
            Scheme s = generalize_in(gamma, bound);
            return infer_term(gamma.extend(n.name, std::move(s)), *n.body);
          },
          [&](const TermRecord &n) -> Type {
            RowType row;
            for (const auto &[label, value] : n.fields) {
              assert(!row.has(label));
              row.fields.emplace_back(label, infer_term(gamma, value));
            }
            return Type::record(canonicalize_row(row));
          },
          [&](const TermSelect &n) -> Type {
            Type rec = infer_term(gamma, *n.record);
            require_record(rec, span);
            Type field = fresh(Kind::star());
            TypeVar rest = supply_.fresh(Kind::row());
            unify_at(rec, Type::record(RowType{{{n.label, field}}, rest}),
                     span);
            return field;
          },
          [&](const TermExtend &n) -> Type {
            Type value = infer_term(gamma, *n.value);
            Type rec = infer_term(gamma, *n.record);
            require_record(rec, span);
            TypeVar rest = supply_.fresh(Kind::row());
            unify_at(rec, Type::record(RowType{{}, rest}), span);
            // Resolving now reports a label that the record already has.
            return resolve(Type::record(RowType{{{n.label, value}}, rest}));
          },
          [&](const TermRestrict &n) -> Type {
            Type rec = infer_term(gamma, *n.record);
            require_record(rec, span);
            Type field = fresh(Kind::star());
            TypeVar rest = supply_.fresh(Kind::row());
            unify_at(rec, Type::record(RowType{{{n.label, field}}, rest}),
                     span);
            return Type::record(RowType{{}, rest});
          },
          [&](const TermAnnot &n) -> Type {
            Type inner = infer_term(gamma, *n.term);
            Type declared = instantiate(n.type);
            unify_at(declared, inner, span);
            return declared;
          },
      },
      t.node());
}

void check_annotations(const KindEnv &delta, const Term &t) {
  std::visit(overloaded{
                 [](const TermVar &) {},
                 [](const TermLit &) {},
                 [&](const TermLam &n) { check_annotations(delta, *n.body); },
                 [&](const TermApp &n) {
                   check_annotations(delta, *n.fun);
                   check_annotations(delta, *n.arg);
                 },
                 [&](const TermLet &n) {
                   check_annotations(delta, *n.bound);
                   check_annotations(delta, *n.body);
                 },
                 [&](const TermRecord &n) {
                   for (const auto &[l, v] : n.fields) check_annotations(delta, v);
                 },
                 [&](const TermSelect &n) { check_annotations(delta, *n.record); },
                 [&](const TermExtend &n) {
                   check_annotations(delta, *n.value);
                   check_annotations(delta, *n.record);
                 },
                 [&](const TermRestrict &n) {
                   check_annotations(delta, *n.record);
                 },
                 [&](const TermAnnot &n) {
                   try {
                     check_scheme(delta, n.type);
                   } catch (const KindError &e) {
                     throw TypeError(TypeError::KindFailure{e}, n.type_span);
                   }
                   check_annotations(delta, *n.term);
                 },
             },
             t.node());
}

std::string_view prelude_source() {
  return "pair : ∀a:* b:*. a -> b -> Rec {fst:a, snd:b}\n"
         "true : Bool\n"
         "false : Bool\n"
         "nil : ∀a:*. List a\n"
         "cons : ∀a:*. a -> List a -> List a\n"
         "cond : ∀a:*. Bool -> a -> a -> a\n";
}

TypeEnv prelude_env(VarSupply &supply, const KindEnv &delta) {
  TypeEnv env;
  std::string_view src = prelude_source();
  while (!src.empty()) {
    std::size_t eol = src.find('\n');
    std::string_view line = src.substr(0, eol);
    src.remove_prefix(eol == std::string_view::npos ? src.size() : eol + 1);
    std::size_t colon = line.find(" : ");
    std::string name(line.substr(0, colon));
    Scheme s = parse_scheme(line.substr(colon + 3), supply, delta);
    check_scheme(delta, s);
    env = env.extend(std::move(name), std::move(s));
  }
  return env;
}

Scheme infer_closed_term(const Term &t, VarSupply &supply,
                         const InferOptions &options, InferStats *stats) {
  if (stats != nullptr) *stats = {};
  const KindEnv &delta = builtin_kinds();
  TypeEnv gamma = options.prelude ? prelude_env(supply, delta) : TypeEnv{};

  // Stage 1: kinding. No unification happens before this succeeds.
  check_annotations(delta, t);

  // Stage 2: typing.
  InferSession session(supply, delta, options.audit_unifiers);
  try {
    Type tau = session.infer_term(gamma, t);
    Scheme result = canonicalize(session.generalize_in(gamma, tau));
    if (stats != nullptr) *stats = session.stats();
    return result;
  } catch (...) {
    if (stats != nullptr) *stats = session.stats();
    throw;
  }
}

Scheme infer_program(std::string_view src, const InferOptions &options,
                     InferStats *stats) {
  VarSupply supply;
  Term t = parse_term(src, supply);
  return infer_closed_term(t, supply, options, stats);
}

}  // namespace rowpoly
