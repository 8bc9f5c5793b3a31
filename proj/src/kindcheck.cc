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

#include "rowpoly/kindcheck.h"

#include <fmt/format.h>

#include "rowpoly/printer.h"

namespace rowpoly {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string message(const KindError::Detail &detail) {
  return std::visit(
      overloaded{
          [](const KindError::Mismatch &m) {
            std::string expected =
                m.expected_arrow_from
                    ? fmt::format("{} -> _", print_kind(*m.expected_arrow_from))
                    : print_kind(m.expected);
            return fmt::format("kind mismatch in `{}`: expected {}, found {}",
                               TypePrinter(true).type(m.offender), expected,
                               print_kind(m.actual));
          },
          [](const KindError::UnboundConstructor &u) {
            return fmt::format("unbound type constructor `{}`", u.name);
          },
          [](const KindError::UnboundVariable &u) {
            return fmt::format("unbound type variable `{}`",
                               u.var.name.empty() ? "_" : u.var.name);
          },
      },
      detail);
}

void require(const Type &offender, const Kind &expected, const Kind &actual) {
  if (expected != actual) {
    throw KindError(KindError::Mismatch{offender, expected, actual, {}});
  }
}

Kind var_kind(const KindEnv &delta, const TypeVar &v, const Type &offender) {
  const Kind *k = delta.var(v.id);
  if (k == nullptr) throw KindError(KindError::UnboundVariable{v});
  require(offender, *k, v.kind);
  return *k;
}

}  // namespace

KindError::KindError(Detail detail)
    : std::runtime_error(message(detail)), detail_(std::move(detail)) {}

Kind kind_of(const KindEnv &delta, const Type &tau) {
  return std::visit(
      overloaded{
          [&](const VarNode &n) { return var_kind(delta, n.var, tau); },
          [&](const ConNode &n) {
            const Kind *k = delta.constructor(n.name);
            if (k == nullptr) throw KindError(KindError::UnboundConstructor{n.name});
            require(tau, *k, n.kind);
            return *k;
          },
          [&](const RecConNode &) {
            const Kind *k = delta.constructor(kRecName);
            if (k == nullptr) {
              throw KindError(KindError::UnboundConstructor{kRecName});
            }
            return *k;
          },
          [&](const AppNode &n) {
            Kind fun = kind_of(delta, n.fun);
            Kind arg = kind_of(delta, n.arg);
            if (!fun.is_arrow()) {
              throw KindError(
                  KindError::Mismatch{n.fun, Kind::star(), fun, arg});
            }
            require(n.arg, fun.param(), arg);
            return fun.result();
          },
          [&](const FunNode &n) {
            require(n.dom, Kind::star(), kind_of(delta, n.dom));
            require(n.cod, Kind::star(), kind_of(delta, n.cod));
            return Kind::star();
          },
          [&](const RowNode &n) {
            for (const auto &[label, field] : n.row.fields) {
              require(field, Kind::star(), kind_of(delta, field));
            }
            if (n.row.tail) {
              Type tail = Type::var(*n.row.tail);
              require(tail, Kind::row(), var_kind(delta, *n.row.tail, tail));
            }
            return Kind::row();
          },
      },
      tau.node());
}

void check_scheme(const KindEnv &delta, const Scheme &s) {
  KindEnv scoped = delta;
  for (const auto &q : s.quantified) scoped.bind_var(q);
  require(s.body, Kind::star(), kind_of(scoped, s.body));
}

}  // namespace rowpoly
