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

#include "rowpoly/unify.h"

#include <fmt/format.h>

#include <algorithm>
#include <optional>

#include "rowpoly/printer.h"

namespace rowpoly {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string message(const UnifyError::Detail &detail) {
  TypePrinter p;
  return std::visit(
      overloaded{
          [&](const UnifyError::Mismatch &m) {
            std::string left = p.type(m.left);
            return fmt::format("cannot unify `{}` with `{}`", left,
                               p.type(m.right));
          },
          [&](const UnifyError::OccursCheck &o) {
            std::string var = p.var(o.var);
            return fmt::format("occurs check: `{}` occurs in `{}`", var,
                               p.type(o.in));
          },
          [&](const UnifyError::RowMissingLabel &m) {
            return fmt::format("missing label `{}` in closed row `{}`", m.label,
                               p.row(m.closed_row));
          },
          [&](const UnifyError::RowTailEscape &e) {
            std::string var = p.var(e.var);
            return fmt::format(
                "row variable `{}` would have to contain itself to unify with "
                "`{}`",
                var, p.row(e.row));
          },
          [&](const UnifyError::DuplicateLabel &d) {
            return fmt::format("duplicate label `{}` in row `{}`", d.label,
                               p.row(d.row));
          },
      },
      detail);
}

bool is_row_like(const Type &t) {
  if (t.is<RowNode>()) return true;
  const auto *v = t.get_if<VarNode>();
  return v != nullptr && v->var.kind.is_row();
}

RowType as_row(const Type &t) {
  if (const auto *r = t.get_if<RowNode>()) return r->row;
  return RowType{{}, t.get_if<VarNode>()->var};
}

std::optional<Label> first_label(
    const std::vector<std::pair<Label, Type>> &fields) {
  std::optional<Label> best;
  for (const auto &[l, t] : fields) {
    if (!best || l < *best) best = l;
  }
  return best;
}

void erase_label(RowType &r, const Label &l) {
  std::erase_if(r.fields, [&](const auto &f) { return f.first == l; });
}

bool occurs_in_fields(const TypeVar &v,
                      const std::vector<std::pair<Label, Type>> &fields) {
  return std::any_of(fields.begin(), fields.end(),
                     [&](const auto &f) { return occurs_in(v, f.second); });
}

Subst single(const TypeVar &v, Type t) {
  Subst s;
  s.bind(v, std::move(t));
  return s;
}

Subst bind_var(const TypeVar &v, const Type &t) {
  if (const auto *tv = t.get_if<VarNode>(); tv && tv->var == v) return {};
  auto k = carried_kind(t);
  if (!k || *k != v.kind) {
    throw UnifyError(UnifyError::Mismatch{Type::var(v), t});
  }
  if (occurs_in(v, t)) throw UnifyError(UnifyError::OccursCheck{v, t});
  return single(v, t);
}

}  // namespace

UnifyError::UnifyError(Detail detail)
    : std::runtime_error(message(detail)), detail_(std::move(detail)) {}

void Subst::bind(const TypeVar &v, Type t) {
  if (v.kind.is_row()) {
    if (const auto *tv = t.get_if<VarNode>()) {
      t = Type::row(RowType{{}, tv->var});
    }
    const auto *r = t.get_if<RowNode>();
    if (r != nullptr && r->row.fields.empty() && r->row.tail == v) return;
  } else if (const auto *tv = t.get_if<VarNode>(); tv && tv->var == v) {
    return;
  }
  map_.insert_or_assign(v, std::move(t));
}

const Type *Subst::lookup(const TypeVar &v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

RowType apply(const Subst &s, const RowType &row) {
  RowType out;
  out.fields.reserve(row.fields.size());
  for (const auto &[l, t] : row.fields) out.fields.emplace_back(l, apply(s, t));
  out.tail = row.tail;
  if (!row.tail) return out;
  const Type *bound = s.lookup(*row.tail);
  if (bound == nullptr) return out;
  RowType ext = as_row(*bound);
  for (const auto &[l, t] : ext.fields) {
    if (out.has(l)) {
      RowType merged = out;
      merged.fields.insert(merged.fields.end(), ext.fields.begin(),
                           ext.fields.end());
      merged.tail = ext.tail;
      throw UnifyError(UnifyError::DuplicateLabel{l, canonicalize_row(merged)});
    }
  }
  out.fields.insert(out.fields.end(), ext.fields.begin(), ext.fields.end());
  out.tail = ext.tail;
  return canonicalize_row(out);
}

Type apply(const Subst &s, const Type &tau) {
  if (s.empty()) return tau;
  return std::visit(
      overloaded{
          [&](const VarNode &n) {
            const Type *bound = s.lookup(n.var);
            return bound ? *bound : tau;
          },
          [&](const ConNode &) { return tau; },
          [&](const RecConNode &) { return tau; },
          [&](const AppNode &n) {
            return Type::app(apply(s, n.fun), apply(s, n.arg));
          },
          [&](const FunNode &n) {
            return Type::fun(apply(s, n.dom), apply(s, n.cod));
          },
          [&](const RowNode &n) { return Type::row(apply(s, n.row)); },
      },
      tau.node());
}

Scheme apply(const Subst &s, const Scheme &scheme) {
  if (scheme.quantified.empty()) return Scheme{{}, apply(s, scheme.body)};
  Subst restricted;
  for (const auto &[v, t] : s.bindings()) {
    if (std::find(scheme.quantified.begin(), scheme.quantified.end(), v) ==
        scheme.quantified.end()) {
      restricted.bind(v, t);
    }
  }
  return Scheme{scheme.quantified, apply(restricted, scheme.body)};
}

TypeEnv apply(const Subst &s, const TypeEnv &env) {
  auto bindings = env.bindings();
  TypeEnv out;
  for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
    out = out.extend(it->first, apply(s, it->second));
  }
  return out;
}

Subst compose(const Subst &outer, const Subst &inner) {
  Subst out;
  for (const auto &[v, t] : inner.bindings()) out.bind(v, apply(outer, t));
  for (const auto &[v, t] : outer.bindings()) {
    if (inner.lookup(v) == nullptr) out.bind(v, t);
  }
  return out;
}

bool is_idempotent(const Subst &s) {
  for (const auto &[v, t] : s.bindings()) {
    for (const auto &fv : free_type_vars(t)) {
      if (s.lookup(fv) != nullptr) return false;
    }
  }
  return true;
}

namespace {

Subst unify_rows_impl(const RowType &r1, const RowType &r2, VarSupply &supply);

Subst unify_impl(const Type &t1, const Type &t2, VarSupply &supply) {
  if (is_row_like(t1) && is_row_like(t2)) {
    return unify_rows_impl(as_row(t1), as_row(t2), supply);
  }
  if (const auto *v = t1.get_if<VarNode>()) return bind_var(v->var, t2);
  if (const auto *v = t2.get_if<VarNode>()) return bind_var(v->var, t1);
  if (t1.node().index() != t2.node().index()) {
    throw UnifyError(UnifyError::Mismatch{t1, t2});
  }
  return std::visit(
      overloaded{
          [&](const ConNode &c) {
            const auto *d = t2.get_if<ConNode>();
            if (c.name != d->name || c.kind != d->kind) {
              throw UnifyError(UnifyError::Mismatch{t1, t2});
            }
            return Subst{};
          },
          [&](const RecConNode &) { return Subst{}; },
          [&](const AppNode &a) {
            const auto *b = t2.get_if<AppNode>();
            Subst s1 = unify_impl(a.fun, b->fun, supply);
            Subst s2 = unify_impl(apply(s1, a.arg), apply(s1, b->arg), supply);
            return compose(s2, s1);
          },
          [&](const FunNode &a) {
            const auto *b = t2.get_if<FunNode>();
            Subst s1 = unify_impl(a.dom, b->dom, supply);
            Subst s2 = unify_impl(apply(s1, a.cod), apply(s1, b->cod), supply);
            return compose(s2, s1);
          },
          [&](const auto &) -> Subst {
            // Var and Row nodes are handled above.
            throw UnifyError(UnifyError::Mismatch{t1, t2});
          },
      },
      t1.node());
}

Subst unify_rows_impl(const RowType &r1, const RowType &r2, VarSupply &supply) {
  Subst s;
  RowType a = r1;
  RowType b = r2;

  // Fields present on both sides, one label at a time. Re-applying the
  // substitution may grow either row when a tail gets bound, exposing
  // further common labels.
  for (;;) {
    std::optional<Label> common;
    for (const auto &[l, t] : a.fields) {
      if (b.has(l) && (!common || l < *common)) common = l;
    }
    if (!common) break;
    Type fa = *a.find(*common);
    Type fb = *b.find(*common);
    erase_label(a, *common);
    erase_label(b, *common);
    Subst step = unify_impl(fa, fb, supply);
    a = apply(step, a);
    b = apply(step, b);
    s = compose(step, s);
  }

  const auto &only1 = a.fields;
  const auto &only2 = b.fields;
  if (!only2.empty() && a.closed()) {
    throw UnifyError(
        UnifyError::RowMissingLabel{*first_label(only2), apply(s, r1)});
  }
  if (!only1.empty() && b.closed()) {
    throw UnifyError(
        UnifyError::RowMissingLabel{*first_label(only1), apply(s, r2)});
  }
  if (a.closed() && b.closed()) return s;

  if (a.tail && b.tail && *a.tail == *b.tail) {
    if (only1.empty() && only2.empty()) return s;
    throw UnifyError(UnifyError::RowTailEscape{*a.tail, apply(s, r1)});
  }

  // Binds `tail` to `row` after an occurs check on the row's contents.
  auto bind_tail = [&](const TypeVar &tail, RowType row) {
    row = apply(s, row);
    if (occurs_in_fields(tail, row.fields)) {
      throw UnifyError(UnifyError::OccursCheck{tail, Type::row(row)});
    }
    s = compose(single(tail, Type::row(canonicalize_row(row))), s);
  };

  if (b.closed()) {
    bind_tail(*a.tail, RowType{only2, std::nullopt});
  } else if (a.closed()) {
    bind_tail(*b.tail, RowType{only1, std::nullopt});
  } else if (only1.empty()) {
    // {| r1} against {only2 | r2}: r1 absorbs the other side.
    bind_tail(*a.tail, RowType{only2, b.tail});
  } else if (only2.empty()) {
    bind_tail(*b.tail, RowType{only1, a.tail});
  } else {
    TypeVar rest = supply.fresh(Kind::row());
    TypeVar tail1 = *a.tail;
    TypeVar tail2 = *b.tail;
    RowType for2{only1, rest};
    bind_tail(tail1, RowType{only2, rest});
    bind_tail(tail2, for2);
  }
  return s;
}

}  // namespace

// Rows carry no lacks constraints, so a binding can be locally consistent
// yet merge a duplicate label elsewhere in the inputs. Applying the answer
// to both sides surfaces that as DuplicateLabel instead of returning a
// substitution with no well-formed instance.
Subst unify(const Type &t1, const Type &t2, VarSupply &supply) {
  Subst s = unify_impl(t1, t2, supply);
  apply(s, t1);
  apply(s, t2);
  return s;
}

Subst unify_rows(const RowType &r1, const RowType &r2, VarSupply &supply) {
  Subst s = unify_rows_impl(r1, r2, supply);
  apply(s, r1);
  apply(s, r2);
  return s;
}

}  // namespace rowpoly
