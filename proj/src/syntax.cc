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

#include "rowpoly/syntax.h"

#include <algorithm>
#include <cctype>
#include <functional>

namespace rowpoly {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

Kind Kind::arrow(Kind param, Kind result) {
  Kind k(Tag::kArrow);
  k.arrow_ = std::make_shared<const std::pair<Kind, Kind>>(std::move(param),
                                                           std::move(result));
  return k;
}

bool operator==(const Kind &a, const Kind &b) {
  if (a.tag_ != b.tag_) return false;
  if (!a.is_arrow()) return true;
  return a.param() == b.param() && a.result() == b.result();
}

bool is_valid_label(const std::string &s) {
  if (s.empty()) return false;
  auto c0 = static_cast<unsigned char>(s[0]);
  if (!(std::islower(c0) || c0 == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_' || c == '\'';
  });
}

Type Type::var(TypeVar v) {
  return Type(std::make_shared<const Node>(VarNode{std::move(v)}));
}
Type Type::con(std::string name, Kind kind) {
  return Type(std::make_shared<const Node>(
      ConNode{std::move(name), std::move(kind)}));
}
Type Type::app(Type fun, Type arg) {
  return Type(std::make_shared<const Node>(
      AppNode{std::move(fun), std::move(arg)}));
}
Type Type::fun(Type dom, Type cod) {
  return Type(std::make_shared<const Node>(
      FunNode{std::move(dom), std::move(cod)}));
}
Type Type::row(RowType row) {
  return Type(std::make_shared<const Node>(RowNode{std::move(row)}));
}
Type Type::rec_con() {
  static const Type rec(std::make_shared<const Node>(RecConNode{}));
  return rec;
}
Type Type::record(RowType row) {
  return Type::app(Type::rec_con(), Type::row(std::move(row)));
}

const Type *RowType::find(const Label &label) const {
  for (const auto &[l, t] : fields) {
    if (l == label) return &t;
  }
  return nullptr;
}

RowType canonicalize_row(const RowType &row) {
  RowType out = row;
  std::stable_sort(
      out.fields.begin(), out.fields.end(),
      [](const auto &a, const auto &b) { return a.first < b.first; });
  return out;
}

Type canonicalize(const Type &t) {
  return std::visit(
      overloaded{
          [&](const VarNode &) { return t; },
          [&](const ConNode &) { return t; },
          [&](const RecConNode &) { return t; },
          [](const AppNode &n) {
            return Type::app(canonicalize(n.fun), canonicalize(n.arg));
          },
          [](const FunNode &n) {
            return Type::fun(canonicalize(n.dom), canonicalize(n.cod));
          },
          [](const RowNode &n) {
            RowType r = canonicalize_row(n.row);
            for (auto &field : r.fields) field.second = canonicalize(field.second);
            return Type::row(std::move(r));
          },
      },
      t.node());
}

Scheme canonicalize(const Scheme &s) {
  return Scheme{s.quantified, canonicalize(s.body)};
}

namespace {

// Parallel walk comparing two types. Variables are related through
// `related`, which decides (and may record) whether a pair of variables
// corresponds.
bool equal_walk(const Type &a, const Type &b,
                const std::function<bool(const TypeVar &, const TypeVar &)>
                    &related) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      overloaded{
          [&](const VarNode &x) {
            return related(x.var, b.get_if<VarNode>()->var);
          },
          [&](const ConNode &x) {
            const auto *y = b.get_if<ConNode>();
            return x.name == y->name && x.kind == y->kind;
          },
          [&](const RecConNode &) { return true; },
          [&](const AppNode &x) {
            const auto *y = b.get_if<AppNode>();
            return equal_walk(x.fun, y->fun, related) &&
                   equal_walk(x.arg, y->arg, related);
          },
          [&](const FunNode &x) {
            const auto *y = b.get_if<FunNode>();
            return equal_walk(x.dom, y->dom, related) &&
                   equal_walk(x.cod, y->cod, related);
          },
          [&](const RowNode &x) {
            const RowType &ra = x.row;
            const RowType &rb = b.get_if<RowNode>()->row;
            if (ra.fields.size() != rb.fields.size()) return false;
            if (ra.tail.has_value() != rb.tail.has_value()) return false;
            RowType ca = canonicalize_row(ra);
            RowType cb = canonicalize_row(rb);
            for (std::size_t i = 0; i < ca.fields.size(); ++i) {
              if (ca.fields[i].first != cb.fields[i].first) return false;
              if (!equal_walk(ca.fields[i].second, cb.fields[i].second,
                              related))
                return false;
            }
            if (ra.tail && !related(*ra.tail, *rb.tail)) return false;
            return true;
          },
      },
      a.node());
}

}  // namespace

bool row_equivalent(const Type &a, const Type &b) {
  return equal_walk(a, b, [](const TypeVar &x, const TypeVar &y) {
    return x.id == y.id;
  });
}

bool alpha_equal(const Scheme &a, const Scheme &b) {
  std::map<std::int64_t, const TypeVar *> qa, qb;
  for (const auto &v : a.quantified) qa[v.id] = &v;
  for (const auto &v : b.quantified) qb[v.id] = &v;
  std::map<std::int64_t, std::int64_t> a_to_b, b_to_a;
  auto related = [&](const TypeVar &x, const TypeVar &y) {
    auto ix = qa.find(x.id);
    auto iy = qb.find(y.id);
    bool bound_x = ix != qa.end();
    bool bound_y = iy != qb.end();
    if (bound_x != bound_y) return false;
    if (!bound_x) return x.id == y.id;
    if (ix->second->kind != iy->second->kind) return false;
    auto [fwd, fwd_new] = a_to_b.emplace(x.id, y.id);
    auto [bwd, bwd_new] = b_to_a.emplace(y.id, x.id);
    return fwd->second == y.id && bwd->second == x.id;
  };
  return equal_walk(a.body, b.body, related);
}

std::optional<Kind> carried_kind(const Type &t) {
  return std::visit(
      overloaded{
          [](const VarNode &n) -> std::optional<Kind> { return n.var.kind; },
          [](const ConNode &n) -> std::optional<Kind> { return n.kind; },
          [](const RecConNode &) -> std::optional<Kind> {
            return Kind::arrow(Kind::row(), Kind::star());
          },
          [](const AppNode &n) -> std::optional<Kind> {
            auto f = carried_kind(n.fun);
            auto a = carried_kind(n.arg);
            if (!f || !a || !f->is_arrow() || f->param() != *a)
              return std::nullopt;
            return f->result();
          },
          [](const FunNode &n) -> std::optional<Kind> {
            auto d = carried_kind(n.dom);
            auto c = carried_kind(n.cod);
            if (!d || !c || !d->is_star() || !c->is_star()) return std::nullopt;
            return Kind::star();
          },
          [](const RowNode &n) -> std::optional<Kind> {
            for (const auto &[l, ft] : n.row.fields) {
              auto k = carried_kind(ft);
              if (!k || !k->is_star()) return std::nullopt;
            }
            if (n.row.tail && !n.row.tail->kind.is_row()) return std::nullopt;
            return Kind::row();
          },
      },
      t.node());
}

namespace {

void collect_vars(const Type &t, std::vector<TypeVar> &out,
                  std::set<std::int64_t> &seen) {
  auto note = [&](const TypeVar &v) {
    if (seen.insert(v.id).second) out.push_back(v);
  };
  std::visit(overloaded{
                 [&](const VarNode &n) { note(n.var); },
                 [](const ConNode &) {},
                 [](const RecConNode &) {},
                 [&](const AppNode &n) {
                   collect_vars(n.fun, out, seen);
                   collect_vars(n.arg, out, seen);
                 },
                 [&](const FunNode &n) {
                   collect_vars(n.dom, out, seen);
                   collect_vars(n.cod, out, seen);
                 },
                 [&](const RowNode &n) {
                   for (const auto &[l, ft] : canonicalize_row(n.row).fields)
                     collect_vars(ft, out, seen);
                   if (n.row.tail) note(*n.row.tail);
                 },
             },
             t.node());
}

}  // namespace

std::vector<TypeVar> vars_in_order(const Type &t) {
  std::vector<TypeVar> out;
  std::set<std::int64_t> seen;
  collect_vars(t, out, seen);
  return out;
}

TypeVarSet free_type_vars(const Type &t) {
  auto vs = vars_in_order(t);
  return TypeVarSet(vs.begin(), vs.end());
}

TypeVarSet free_type_vars(const Scheme &s) {
  TypeVarSet out = free_type_vars(s.body);
  for (const auto &q : s.quantified) out.erase(q);
  return out;
}

bool occurs_in(const TypeVar &v, const Type &t) {
  return std::visit(overloaded{
                        [&](const VarNode &n) { return n.var == v; },
                        [](const ConNode &) { return false; },
                        [](const RecConNode &) { return false; },
                        [&](const AppNode &n) {
                          return occurs_in(v, n.fun) || occurs_in(v, n.arg);
                        },
                        [&](const FunNode &n) {
                          return occurs_in(v, n.dom) || occurs_in(v, n.cod);
                        },
                        [&](const RowNode &n) {
                          if (n.row.tail && *n.row.tail == v) return true;
                          return std::any_of(
                              n.row.fields.begin(), n.row.fields.end(),
                              [&](const auto &f) {
                                return occurs_in(v, f.second);
                              });
                        },
                    },
                    t.node());
}

TypeEnv TypeEnv::extend(std::string name, Scheme scheme) const {
  return TypeEnv(std::make_shared<const Binding>(
      Binding{std::move(name), std::move(scheme), head_}));
}

const Scheme *TypeEnv::lookup(const std::string &name) const {
  for (const Binding *b = head_.get(); b != nullptr; b = b->next.get()) {
    if (b->name == name) return &b->scheme;
  }
  return nullptr;
}

std::vector<std::pair<std::string, Scheme>> TypeEnv::bindings() const {
  std::vector<std::pair<std::string, Scheme>> out;
  for (const Binding *b = head_.get(); b != nullptr; b = b->next.get()) {
    out.emplace_back(b->name, b->scheme);
  }
  return out;
}

TypeVarSet free_type_vars(const TypeEnv &env) {
  TypeVarSet out;
  for (const auto &[name, scheme] : env.bindings()) {
    auto fv = free_type_vars(scheme);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

void KindEnv::bind_constructor(const std::string &name, Kind kind) {
  constructors_.insert_or_assign(name, std::move(kind));
}

void KindEnv::bind_var(const TypeVar &v) { vars_.insert_or_assign(v.id, v.kind); }

const Kind *KindEnv::constructor(const std::string &name) const {
  auto it = constructors_.find(name);
  return it == constructors_.end() ? nullptr : &it->second;
}

const Kind *KindEnv::var(std::int64_t id) const {
  auto it = vars_.find(id);
  return it == vars_.end() ? nullptr : &it->second;
}

const KindEnv &builtin_kinds() {
  static const KindEnv env = [] {
    KindEnv e;
    e.bind_constructor("Int", Kind::star());
    e.bind_constructor("String", Kind::star());
    e.bind_constructor("Bool", Kind::star());
    e.bind_constructor("List", Kind::arrow(Kind::star(), Kind::star()));
    e.bind_constructor(kRecName, Kind::arrow(Kind::row(), Kind::star()));
    return e;
  }();
  return env;
}

Type int_type() { return Type::con("Int", Kind::star()); }
Type string_type() { return Type::con("String", Kind::star()); }
Type bool_type() { return Type::con("Bool", Kind::star()); }
Type list_of(Type elem) {
  return Type::app(Type::con("List", Kind::arrow(Kind::star(), Kind::star())),
                   std::move(elem));
}

namespace term {

namespace {
std::shared_ptr<const Term> share(Term t) {
  return std::make_shared<const Term>(std::move(t));
}
}  // namespace

Term var(std::string name, SourceSpan span) {
  return Term(TermVar{std::move(name)}, span);
}
Term lam(std::string param, Term body, SourceSpan span) {
  return Term(TermLam{std::move(param), share(std::move(body))}, span);
}
Term app(Term fun, Term arg, SourceSpan span) {
  return Term(TermApp{share(std::move(fun)), share(std::move(arg))}, span);
}
Term let(std::string name, Term bound, Term body, SourceSpan span) {
  return Term(TermLet{std::move(name), share(std::move(bound)),
                      share(std::move(body))},
              span);
}
Term int_lit(std::int64_t value, SourceSpan span) {
  return Term(TermLit{value}, span);
}
Term string_lit(std::string value, SourceSpan span) {
  return Term(TermLit{std::move(value)}, span);
}
Term record(std::vector<std::pair<Label, Term>> fields, SourceSpan span) {
  return Term(TermRecord{std::move(fields)}, span);
}
Term select(Term record, Label label, SourceSpan span) {
  return Term(TermSelect{share(std::move(record)), std::move(label)}, span);
}
Term extend(Label label, Term value, Term record, SourceSpan span) {
  return Term(TermExtend{std::move(label), share(std::move(value)),
                         share(std::move(record))},
              span);
}
Term restrict(Term record, Label label, SourceSpan span) {
  return Term(TermRestrict{share(std::move(record)), std::move(label)}, span);
}
Term annot(Term t, Scheme type, SourceSpan span, SourceSpan type_span) {
  return Term(TermAnnot{share(std::move(t)), std::move(type), type_span}, span);
}

}  // namespace term

bool same_term(const Term &a, const Term &b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      overloaded{
          [&](const TermVar &x) { return x.name == b.get_if<TermVar>()->name; },
          [&](const TermLam &x) {
            const auto *y = b.get_if<TermLam>();
            return x.param == y->param && same_term(*x.body, *y->body);
          },
          [&](const TermApp &x) {
            const auto *y = b.get_if<TermApp>();
            return same_term(*x.fun, *y->fun) && same_term(*x.arg, *y->arg);
          },
          [&](const TermLet &x) {
            const auto *y = b.get_if<TermLet>();
            return x.name == y->name && same_term(*x.bound, *y->bound) &&
                   same_term(*x.body, *y->body);
          },
          [&](const TermLit &x) {
            return x.value == b.get_if<TermLit>()->value;
          },
          [&](const TermRecord &x) {
            const auto *y = b.get_if<TermRecord>();
            if (x.fields.size() != y->fields.size()) return false;
            for (std::size_t i = 0; i < x.fields.size(); ++i) {
              if (x.fields[i].first != y->fields[i].first ||
                  !same_term(x.fields[i].second, y->fields[i].second))
                return false;
            }
            return true;
          },
          [&](const TermSelect &x) {
            const auto *y = b.get_if<TermSelect>();
            return x.label == y->label && same_term(*x.record, *y->record);
          },
          [&](const TermExtend &x) {
            const auto *y = b.get_if<TermExtend>();
            return x.label == y->label && same_term(*x.value, *y->value) &&
                   same_term(*x.record, *y->record);
          },
          [&](const TermRestrict &x) {
            const auto *y = b.get_if<TermRestrict>();
            return x.label == y->label && same_term(*x.record, *y->record);
          },
          [&](const TermAnnot &x) {
            const auto *y = b.get_if<TermAnnot>();
            return same_term(*x.term, *y->term) && alpha_equal(x.type, y->type);
          },
      },
      a.node());
}

}  // namespace rowpoly
