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

#include "rowpoly/printer.h"

#include <fmt/format.h>

namespace rowpoly {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string nth_name(std::size_t n) {
  std::string base(1, static_cast<char>('a' + n % 26));
  if (n < 26) return base;
  return base + std::to_string(n / 26);
}
}  // namespace

std::string print_kind(const Kind &k) {
  switch (k.tag()) {
    case Kind::Tag::kStar:
      return "*";
    case Kind::Tag::kRow:
      return "row";
    case Kind::Tag::kArrow: {
      std::string param = print_kind(k.param());
      if (k.param().is_arrow()) param = "(" + param + ")";
      return param + " -> " + print_kind(k.result());
    }
  }
  return "?";
}

std::string TypePrinter::var(const TypeVar &v) {
  auto it = names_.find(v.id);
  if (it != names_.end()) return it->second;
  std::string name;
  if (source_names_ && !v.name.empty()) {
    name = v.name;
    for (int i = 1; used_.contains(name); ++i) name = v.name + std::to_string(i);
  } else {
    for (std::size_t i = names_.size(); name.empty() || used_.contains(name); ++i) {
      name = nth_name(i);
    }
  }
  names_.emplace(v.id, name);
  used_.insert(name);
  return name;
}

std::string TypePrinter::type(const Type &t) {
  std::string out;
  print(t, Prec::kArrow, out);
  return out;
}

std::string TypePrinter::row(const RowType &r) {
  std::string out;
  print_row(r, out);
  return out;
}

std::string TypePrinter::scheme(const Scheme &s) {
  // Name body variables by first occurrence so that the printed text is
  // independent of the quantifier list's internal ids.
  for (const auto &v : vars_in_order(s.body)) var(v);
  std::string out;
  if (!s.quantified.empty()) {
    out += "∀";
    bool first = true;
    for (const auto &q : s.quantified) {
      if (!first) out += ' ';
      first = false;
      out += fmt::format("{}:{}", var(q), print_kind(q.kind));
    }
    out += ". ";
  }
  print(s.body, Prec::kArrow, out);
  return out;
}

void TypePrinter::print_row(const RowType &r, std::string &out) {
  RowType sorted = canonicalize_row(r);
  out += '{';
  bool first = true;
  for (const auto &[label, field] : sorted.fields) {
    if (!first) out += ", ";
    first = false;
    out += label;
    out += ':';
    print(field, Prec::kArrow, out);
  }
  if (sorted.tail) {
    out += sorted.fields.empty() ? "| " : " | ";
    out += var(*sorted.tail);
  }
  out += '}';
}

void TypePrinter::print(const Type &t, Prec prec, std::string &out) {
  std::visit(overloaded{
                 [&](const VarNode &n) { out += var(n.var); },
                 [&](const ConNode &n) { out += n.name; },
                 [&](const RecConNode &) { out += kRecName; },
                 [&](const RowNode &n) { print_row(n.row, out); },
                 [&](const AppNode &n) {
                   bool parens = prec == Prec::kAtom;
                   if (parens) out += '(';
                   print(n.fun, Prec::kApp, out);
                   out += ' ';
                   print(n.arg, Prec::kAtom, out);
                   if (parens) out += ')';
                 },
                 [&](const FunNode &n) {
                   bool parens = prec != Prec::kArrow;
                   if (parens) out += '(';
                   print(n.dom, Prec::kApp, out);
                   out += " -> ";
                   print(n.cod, Prec::kArrow, out);
                   if (parens) out += ')';
                 },
             },
             t.node());
}

std::string print_type(const Type &t) { return TypePrinter().type(t); }

std::string print_scheme(const Scheme &s) { return TypePrinter().scheme(s); }

namespace {

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  return out + "\"";
}

enum class TermPrec { kTop, kApp, kAtom };

void print_term(const Term &t, TermPrec prec, std::string &out);

void print_postfix_target(const Term &t, std::string &out) {
  print_term(t, TermPrec::kAtom, out);
}

void print_term(const Term &t, TermPrec prec, std::string &out) {
  auto open = [&](bool p) {
    if (p) out += '(';
  };
  auto close = [&](bool p) {
    if (p) out += ')';
  };
  std::visit(
      overloaded{
          [&](const TermVar &n) { out += n.name; },
          [&](const TermLit &n) {
            if (const auto *i = std::get_if<std::int64_t>(&n.value)) {
              out += std::to_string(*i);
            } else {
              out += quote(std::get<std::string>(n.value));
            }
          },
          [&](const TermLam &n) {
            bool p = prec != TermPrec::kTop;
            open(p);
            out += "\\" + n.param + ". ";
            print_term(*n.body, TermPrec::kTop, out);
            close(p);
          },
          [&](const TermLet &n) {
            bool p = prec != TermPrec::kTop;
            open(p);
            out += "let " + n.name + " = ";
            print_term(*n.bound, TermPrec::kTop, out);
            out += " in ";
            print_term(*n.body, TermPrec::kTop, out);
            close(p);
          },
          [&](const TermApp &n) {
            bool p = prec == TermPrec::kAtom;
            open(p);
            print_term(*n.fun, TermPrec::kApp, out);
            out += ' ';
            print_term(*n.arg, TermPrec::kAtom, out);
            close(p);
          },
          [&](const TermRecord &n) {
            out += '{';
            bool first = true;
            for (const auto &[label, value] : n.fields) {
              if (!first) out += ", ";
              first = false;
              out += label + " = ";
              print_term(value, TermPrec::kTop, out);
            }
            out += '}';
          },
          [&](const TermExtend &n) {
            out += "{" + n.label + " = ";
            print_term(*n.value, TermPrec::kTop, out);
            out += " | ";
            print_term(*n.record, TermPrec::kTop, out);
            out += '}';
          },
          [&](const TermSelect &n) {
            print_postfix_target(*n.record, out);
            out += "." + n.label;
          },
          [&](const TermRestrict &n) {
            print_postfix_target(*n.record, out);
            out += " - " + n.label;
          },
          [&](const TermAnnot &n) {
            out += '(';
            print_term(*n.term, TermPrec::kTop, out);
            out += " : " + print_scheme(n.type) + ")";
          },
      },
      t.node());
}

}  // namespace

std::string print_term(const Term &t) {
  std::string out;
  print_term(t, TermPrec::kTop, out);
  return out;
}

}  // namespace rowpoly
