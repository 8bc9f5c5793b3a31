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

#include "rowpoly/parser.h"

#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>

namespace rowpoly {

namespace {

std::string join_expected(const std::vector<std::string> &expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

}  // namespace

ParseError::ParseError(SourceSpan span, std::vector<std::string> expected,
                       std::string found)
    : std::runtime_error(
          fmt::format("expected {}, found {}", join_expected(expected), found)),
      span_(span),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
  kIdent,
  kInt,
  kString,
  kBackslash,
  kDot,
  kEq,
  kComma,
  kLBrace,
  kRBrace,
  kBar,
  kLParen,
  kRParen,
  kMinus,
  kArrow,
  kColon,
  kStar,
  kForall,
  kLet,
  kIn,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::string describe(Tok kind) {
  switch (kind) {
    case Tok::kIdent:
      return "identifier";
    case Tok::kInt:
      return "integer literal";
    case Tok::kString:
      return "string literal";
    case Tok::kBackslash:
      return "`\\`";
    case Tok::kDot:
      return "`.`";
    case Tok::kEq:
      return "`=`";
    case Tok::kComma:
      return "`,`";
    case Tok::kLBrace:
      return "`{`";
    case Tok::kRBrace:
      return "`}`";
    case Tok::kBar:
      return "`|`";
    case Tok::kLParen:
      return "`(`";
    case Tok::kRParen:
      return "`)`";
    case Tok::kMinus:
      return "`-`";
    case Tok::kArrow:
      return "`->`";
    case Tok::kColon:
      return "`:`";
    case Tok::kStar:
      return "`*`";
    case Tok::kForall:
      return "`forall`";
    case Tok::kLet:
      return "`let`";
    case Tok::kIn:
      return "`in`";
    case Tok::kEnd:
      return "end of input";
  }
  return "token";
}

std::string describe(const Token &t) {
  switch (t.kind) {
    case Tok::kIdent:
      return fmt::format("identifier `{}`", t.text);
    case Tok::kInt:
      return fmt::format("integer `{}`", t.text);
    case Tok::kString:
      return "string literal";
    default:
      return describe(t.kind);
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::kEnd) return out;
    }
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const {
    return src_.substr(pos_, s.size()) == s;
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && !at_end(); ++i) {
      char c = src_[pos_++];
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        // Columns count code points, not continuation bytes.
        ++column_;
      }
    }
  }

  void skip_space() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (starts_with("--")) {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  SourceSpan here() const { return SourceSpan{pos_, pos_, line_, column_}; }

  Token make(Tok kind, SourceSpan start, std::string text = {}) {
    start.end = pos_;
    return Token{kind, std::move(text), start};
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '\'';
  }

  Token next() {
    SourceSpan start = here();
    if (at_end()) return make(Tok::kEnd, start);
    char c = peek();
    if (ident_start(c)) {
      std::size_t begin = pos_;
      while (!at_end() && ident_char(peek())) advance();
      std::string text(src_.substr(begin, pos_ - begin));
      if (text == "let") return make(Tok::kLet, start, text);
      if (text == "in") return make(Tok::kIn, start, text);
      if (text == "forall") return make(Tok::kForall, start, text);
      return make(Tok::kIdent, start, text);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t begin = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
        advance();
      return make(Tok::kInt, start, std::string(src_.substr(begin, pos_ - begin)));
    }
    if (c == '"') return string_literal(start);
    if (starts_with("->")) {
      advance(2);
      return make(Tok::kArrow, start);
    }
    if (starts_with("∀")) {
      advance(std::string_view("∀").size());
      return make(Tok::kForall, start, "∀");
    }
    if (starts_with("λ")) {
      advance(std::string_view("λ").size());
      return make(Tok::kBackslash, start);
    }
    static const std::map<char, Tok> kSingle = {
        {'\\', Tok::kBackslash}, {'.', Tok::kDot},    {'=', Tok::kEq},
        {',', Tok::kComma},      {'{', Tok::kLBrace}, {'}', Tok::kRBrace},
        {'|', Tok::kBar},        {'(', Tok::kLParen}, {')', Tok::kRParen},
        {'-', Tok::kMinus},      {':', Tok::kColon},  {'*', Tok::kStar},
    };
    if (auto it = kSingle.find(c); it != kSingle.end()) {
      advance();
      return make(it->second, start);
    }
    advance();
    SourceSpan span = start;
    span.end = pos_;
    throw ParseError(span, {"token"}, fmt::format("character `{}`", c));
  }

  Token string_literal(SourceSpan start) {
    advance();  // opening quote
    std::string value;
    for (;;) {
      if (at_end() || peek() == '\n') {
        SourceSpan span = start;
        span.end = pos_;
        throw ParseError(span, {"`\"`"},
                         at_end() ? "end of input" : "end of line");
      }
      char c = peek();
      if (c == '"') {
        advance();
        return make(Tok::kString, start, value);
      }
      if (c == '\\') {
        SourceSpan esc = here();
        advance();
        char e = peek();
        switch (e) {
          case '"':
            value += '"';
            break;
          case '\\':
            value += '\\';
            break;
          case 'n':
            value += '\n';
            break;
          case 't':
            value += '\t';
            break;
          default:
            esc.end = pos_ + 1;
            throw ParseError(esc, {"escape sequence"},
                             fmt::format("`\\{}`", e));
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, VarSupply &supply, const KindEnv &constructors)
      : tokens_(Lexer(src).run()), supply_(supply), constructors_(constructors) {}

  Term program() {
    Term t = term();
    expect(Tok::kEnd);
    return t;
  }

  Type whole_type() {
    Type t = type();
    expect(Tok::kEnd);
    return t;
  }

  Scheme whole_scheme() {
    Scheme s = scheme();
    expect(Tok::kEnd);
    return s;
  }

  Kind whole_kind() {
    Kind k = kind();
    expect(Tok::kEnd);
    return k;
  }

 private:
  const Token &peek() const { return tokens_[pos_]; }
  bool at(Tok kind) const { return peek().kind == kind; }
  const Token &take() {
    const Token &t = tokens_[pos_];
    if (t.kind != Tok::kEnd) ++pos_;
    prev_end_ = t.span.end;
    return t;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().span, std::move(expected), describe(peek()));
  }

  const Token &expect(Tok kind) {
    if (!at(kind)) fail({describe(kind)});
    return take();
  }

  std::string ident() { return expect(Tok::kIdent).text; }

  Label label() {
    const Token &t = peek();
    if (t.kind != Tok::kIdent || !is_valid_label(t.text)) fail({"label"});
    return take().text;
  }

  SourceSpan from(const SourceSpan &start) const {
    SourceSpan s = start;
    s.end = prev_end_;
    return s;
  }

  // ---- terms ----

  Term term() {
    SourceSpan start = peek().span;
    if (at(Tok::kBackslash)) {
      take();
      std::string param = ident();
      expect(Tok::kDot);
      Term body = term();
      return term::lam(std::move(param), std::move(body), from(start));
    }
    if (at(Tok::kLet)) {
      take();
      std::string name = ident();
      expect(Tok::kEq);
      Term bound = term();
      expect(Tok::kIn);
      Term body = term();
      return term::let(std::move(name), std::move(bound), std::move(body),
                       from(start));
    }
    Term fun = atom();
    while (starts_atom()) {
      Term arg = atom();
      fun = term::app(std::move(fun), std::move(arg), from(start));
    }
    return fun;
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::kIdent:
      case Tok::kInt:
      case Tok::kString:
      case Tok::kLParen:
      case Tok::kLBrace:
        return true;
      default:
        return false;
    }
  }

  Term atom() {
    SourceSpan start = peek().span;
    Term t = primary();
    for (;;) {
      if (at(Tok::kDot)) {
        take();
        Label l = label();
        t = term::select(std::move(t), std::move(l), from(start));
      } else if (at(Tok::kMinus)) {
        take();
        Label l = label();
        t = term::restrict(std::move(t), std::move(l), from(start));
      } else {
        return t;
      }
    }
  }

  Term primary() {
    SourceSpan start = peek().span;
    switch (peek().kind) {
      case Tok::kIdent: {
        std::string name = take().text;
        return term::var(std::move(name), from(start));
      }
      case Tok::kInt: {
        const Token &t = take();
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(),
                                         t.text.data() + t.text.size(), value);
        if (ec != std::errc()) {
          throw ParseError(t.span, {"integer in 64-bit range"}, describe(t));
        }
        return term::int_lit(value, from(start));
      }
      case Tok::kString: {
        std::string value = take().text;
        return term::string_lit(std::move(value), from(start));
      }
      case Tok::kLParen: {
        take();
        Term inner = term();
        if (at(Tok::kColon)) {
          take();
          SourceSpan type_start = peek().span;
          Scheme s = scheme();
          SourceSpan type_span = from(type_start);
          expect(Tok::kRParen);
          return term::annot(std::move(inner), std::move(s), from(start),
                             type_span);
        }
        if (!at(Tok::kRParen)) fail({describe(Tok::kRParen), describe(Tok::kColon)});
        take();
        return inner;
      }
      case Tok::kLBrace:
        return record();
      default:
        fail({"expression"});
    }
  }

  Term record() {
    SourceSpan start = expect(Tok::kLBrace).span;
    std::vector<std::pair<Label, Term>> fields;
    std::vector<SourceSpan> field_starts;
    std::set<Label> seen;
    if (!at(Tok::kRBrace) && !at(Tok::kBar)) {
      for (;;) {
        const Token &lt = peek();
        SourceSpan field_start = lt.span;
        Label l = label();
        if (!seen.insert(l).second) {
          throw ParseError(lt.span, {"distinct label"},
                           fmt::format("duplicate label `{}`", l));
        }
        expect(Tok::kEq);
        Term value = term();
        fields.emplace_back(std::move(l), std::move(value));
        field_starts.push_back(field_start);
        if (!at(Tok::kComma)) break;
        take();
      }
    }
    if (at(Tok::kBar)) {
      take();
      Term rest = term();
      expect(Tok::kRBrace);
      SourceSpan whole = from(start);
      // {l1 = e1, ..., ln = en | r} extends r by ln first, l1 last.
      for (std::size_t i = fields.size(); i-- > 0;) {
        SourceSpan span = i == 0 ? whole : from(field_starts[i]);
        rest = term::extend(fields[i].first, std::move(fields[i].second),
                            std::move(rest), span);
      }
      return rest;
    }
    if (!at(Tok::kRBrace)) {
      fail({describe(Tok::kComma), describe(Tok::kBar), describe(Tok::kRBrace)});
    }
    take();
    return term::record(std::move(fields), from(start));
  }

  // ---- types ----

  Scheme scheme() {
    if (!at(Tok::kForall)) return Scheme{{}, type()};
    take();
    std::vector<TypeVar> quantified;
    std::set<std::string> names;
    do {
      const Token &name_tok = peek();
      std::string name = ident();
      if (!names.insert(name).second) {
        throw ParseError(name_tok.span, {"distinct type variable"},
                         fmt::format("duplicate binder `{}`", name));
      }
      expect(Tok::kColon);
      Kind k = kind();
      quantified.push_back(supply_.fresh_named(k, name));
    } while (at(Tok::kIdent));
    expect(Tok::kDot);
    for (const auto &q : quantified) bound_.insert_or_assign(q.name, q);
    Type body = type();
    for (const auto &q : quantified) bound_.erase(q.name);
    return Scheme{std::move(quantified), std::move(body)};
  }

  Kind kind() {
    Kind k = Kind::star();
    if (at(Tok::kStar)) {
      take();
    } else if (at(Tok::kIdent) && peek().text == "row") {
      take();
      k = Kind::row();
    } else if (at(Tok::kLParen)) {
      take();
      k = kind();
      expect(Tok::kRParen);
    } else {
      fail({"`*`", "`row`", describe(Tok::kLParen)});
    }
    if (at(Tok::kArrow)) {
      take();
      return Kind::arrow(k, kind());
    }
    return k;
  }

  Type type() {
    Type dom = type_app();
    if (at(Tok::kArrow)) {
      take();
      return Type::fun(std::move(dom), type());
    }
    return dom;
  }

  bool starts_type_atom() const {
    return at(Tok::kIdent) || at(Tok::kLParen) || at(Tok::kLBrace);
  }

  Type type_app() {
    if (!starts_type_atom()) fail({"type"});
    Type t = type_atom();
    while (starts_type_atom()) t = Type::app(std::move(t), type_atom());
    return t;
  }

  TypeVar type_var(const std::string &name, Kind kind_if_free) {
    if (auto it = bound_.find(name); it != bound_.end()) return it->second;
    if (auto it = free_.find(name); it != free_.end()) return it->second;
    TypeVar v = supply_.fresh_named(std::move(kind_if_free), name);
    free_.emplace(name, v);
    return v;
  }

  Type type_atom() {
    if (at(Tok::kLParen)) {
      take();
      Type t = type();
      expect(Tok::kRParen);
      return t;
    }
    if (at(Tok::kLBrace)) return Type::row(row());
    std::string name = ident();
    if (std::isupper(static_cast<unsigned char>(name[0]))) {
      if (name == kRecName) return Type::rec_con();
      // Unknown constructors get a placeholder kind; the kind checker
      // reports them as unbound.
      const Kind *k = constructors_.constructor(name);
      return Type::con(name, k ? *k : Kind::star());
    }
    return Type::var(type_var(name, Kind::star()));
  }

  RowType row() {
    expect(Tok::kLBrace);
    RowType r;
    std::set<Label> seen;
    if (!at(Tok::kRBrace) && !at(Tok::kBar)) {
      for (;;) {
        const Token &lt = peek();
        Label l = label();
        if (!seen.insert(l).second) {
          throw ParseError(lt.span, {"distinct label"},
                           fmt::format("duplicate label `{}`", l));
        }
        expect(Tok::kColon);
        Type t = type();
        r.fields.emplace_back(std::move(l), std::move(t));
        if (!at(Tok::kComma)) break;
        take();
      }
    }
    if (at(Tok::kBar)) {
      take();
      const Token &tail_tok = peek();
      if (tail_tok.kind != Tok::kIdent || !is_valid_label(tail_tok.text)) {
        fail({"row variable"});
      }
      r.tail = type_var(take().text, Kind::row());
    }
    if (!at(Tok::kRBrace)) {
      fail({describe(Tok::kComma), describe(Tok::kBar), describe(Tok::kRBrace)});
    }
    take();
    return r;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t prev_end_ = 0;
  VarSupply &supply_;
  const KindEnv &constructors_;
  std::map<std::string, TypeVar> bound_;
  std::map<std::string, TypeVar> free_;
};

VarSupply &scratch_supply() {
  // Ids well above anything a session allocates, so standalone parses
  // never collide with inference variables.
  thread_local VarSupply supply(std::int64_t{1} << 40);
  return supply;
}

}  // namespace

Term parse_term(std::string_view src, VarSupply &supply,
                const KindEnv &constructors) {
  return Parser(src, supply, constructors).program();
}

Term parse_term(std::string_view src) {
  return parse_term(src, scratch_supply());
}

Type parse_type(std::string_view src, VarSupply &supply,
                const KindEnv &constructors) {
  return Parser(src, supply, constructors).whole_type();
}

Type parse_type(std::string_view src) {
  return parse_type(src, scratch_supply());
}

Scheme parse_scheme(std::string_view src, VarSupply &supply,
                    const KindEnv &constructors) {
  return Parser(src, supply, constructors).whole_scheme();
}

Scheme parse_scheme(std::string_view src) {
  return parse_scheme(src, scratch_supply());
}

Kind parse_kind(std::string_view src) {
  return Parser(src, scratch_supply(), builtin_kinds()).whole_kind();
}

}  // namespace rowpoly
