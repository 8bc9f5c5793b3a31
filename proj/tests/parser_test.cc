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

#include <gtest/gtest.h>

#include "generators.h"
#include "rowpoly/printer.h"

namespace rowpoly {
namespace {

TEST(ParseTermTest, Lambda) {
  Term t = parse_term("\\x. x");
  const auto *lam = t.get_if<TermLam>();
  ASSERT_NE(lam, nullptr);
  EXPECT_EQ(lam->param, "x");
  ASSERT_NE(lam->body->get_if<TermVar>(), nullptr);
  EXPECT_EQ(lam->body->get_if<TermVar>()->name, "x");
}

TEST(ParseTermTest, UnicodeLambda) {
  EXPECT_TRUE(same_term(parse_term("λx. x"), parse_term("\\x. x")));
}

TEST(ParseTermTest, RecordLiteral) {
  Term t = parse_term("{name = \"Ana\", age = 7}");
  EXPECT_TRUE(same_term(
      t, term::record({{"name", term::string_lit("Ana")},
                       {"age", term::int_lit(7)}})));
}

TEST(ParseTermTest, Select) {
  EXPECT_TRUE(same_term(parse_term("r.name"),
                        term::select(term::var("r"), "name")));
}

TEST(ParseTermTest, ExtendAndRestrict) {
  EXPECT_TRUE(same_term(
      parse_term("{a = 1, b = 2 | r}"),
      term::extend("a", term::int_lit(1),
                   term::extend("b", term::int_lit(2), term::var("r")))));
  EXPECT_TRUE(same_term(parse_term("r - a"),
                        term::restrict(term::var("r"), "a")));
}

TEST(ParseTermTest, ApplicationIsLeftAssociative) {
  EXPECT_TRUE(same_term(
      parse_term("f x y"),
      term::app(term::app(term::var("f"), term::var("x")), term::var("y"))));
}

TEST(ParseTermTest, LetAndComments) {
  EXPECT_TRUE(same_term(
      parse_term("-- identity\nlet id = \\x. x in id 1 -- trailing"),
      term::let("id", term::lam("x", term::var("x")),
                term::app(term::var("id"), term::int_lit(1)))));
}

TEST(ParseTermTest, AnnotationCarriesScheme) {
  Term t = parse_term("(nil : forall a:*. List a)");
  const auto *annot = t.get_if<TermAnnot>();
  ASSERT_NE(annot, nullptr);
  EXPECT_EQ(print_scheme(annot->type), "∀a:*. List a");
  EXPECT_EQ(annot->type_span.column, 8);
}

TEST(ParseTermTest, SpansAreOneBased) {
  Term t = parse_term("f\n  x");
  const auto *app = t.get_if<TermApp>();
  ASSERT_NE(app, nullptr);
  EXPECT_EQ(app->arg->span().line, 2);
  EXPECT_EQ(app->arg->span().column, 3);
  EXPECT_EQ(app->arg->span().start, 4u);
  EXPECT_EQ(app->arg->span().end, 5u);
}

TEST(ParseTypeTest, ListInt) {
  Type t = parse_type("List Int");
  const auto *app = t.get_if<AppNode>();
  ASSERT_NE(app, nullptr);
  ASSERT_NE(app->fun.get_if<ConNode>(), nullptr);
  EXPECT_EQ(app->fun.get_if<ConNode>()->name, "List");
  EXPECT_EQ(app->arg.get_if<ConNode>()->name, "Int");
}

TEST(ParseTypeTest, OpenRecord) {
  Type t = parse_type("Rec {name:String | r}");
  const auto *app = t.get_if<AppNode>();
  ASSERT_NE(app, nullptr);
  EXPECT_TRUE(app->fun.is<RecConNode>());
  const auto *row = app->arg.get_if<RowNode>();
  ASSERT_NE(row, nullptr);
  ASSERT_EQ(row->row.fields.size(), 1u);
  EXPECT_EQ(row->row.fields[0].first, "name");
  ASSERT_TRUE(row->row.tail.has_value());
  EXPECT_TRUE(row->row.tail->kind.is_row());
}

TEST(ParseTypeTest, EmptyRow) {
  Type t = parse_type("{}");
  const auto *row = t.get_if<RowNode>();
  ASSERT_NE(row, nullptr);
  EXPECT_TRUE(row->row.fields.empty());
  EXPECT_FALSE(row->row.tail.has_value());
}

TEST(ParseTypeTest, ArrowsAreRightAssociative) {
  EXPECT_EQ(print_type(parse_type("Int -> Int -> Int")), "Int -> Int -> Int");
  EXPECT_EQ(print_type(parse_type("(Int -> Int) -> Int")),
            "(Int -> Int) -> Int");
}

TEST(ParseTypeTest, SameNameSameVariable) {
  Type t = parse_type("a -> a");
  const auto *f = t.get_if<FunNode>();
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->dom.get_if<VarNode>()->var, f->cod.get_if<VarNode>()->var);
}

TEST(ParseKindTest, Forms) {
  EXPECT_EQ(parse_kind("*"), Kind::star());
  EXPECT_EQ(parse_kind("row"), Kind::row());
  EXPECT_EQ(parse_kind("row -> *"), Kind::arrow(Kind::row(), Kind::star()));
  EXPECT_EQ(parse_kind("(* -> *) -> *"),
            Kind::arrow(Kind::arrow(Kind::star(), Kind::star()), Kind::star()));
}

TEST(ParseSchemeTest, Quantifiers) {
  Scheme s = parse_scheme("∀a:* r:row. Rec {x:a | r} -> a");
  ASSERT_EQ(s.quantified.size(), 2u);
  EXPECT_TRUE(s.quantified[0].kind.is_star());
  EXPECT_TRUE(s.quantified[1].kind.is_row());
  EXPECT_EQ(print_scheme(s), "∀a:* b:row. Rec {x:a | b} -> a");
}

struct BadInput {
  const char *src;
  int column;
};

void PrintTo(const BadInput &in, std::ostream *os) { *os << in.src; }

class ParseErrorTest : public ::testing::TestWithParam<BadInput> {};

TEST_P(ParseErrorTest, ReportsLocatedError) {
  const BadInput &in = GetParam();
  try {
    parse_term(in.src);
    FAIL() << "expected a parse error for " << in.src;
  } catch (const ParseError &e) {
    EXPECT_FALSE(e.expected().empty());
    EXPECT_EQ(e.span().column, in.column) << e.what();
    EXPECT_LE(e.span().start, std::string_view(in.src).size());
    EXPECT_LE(e.span().start, e.span().end);
    EXPECT_NE(std::string(e.what()).find("expected"), std::string::npos);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Inputs, ParseErrorTest,
    ::testing::Values(BadInput{"\\x x", 4}, BadInput{"", 1},
                      BadInput{"(x", 3}, BadInput{"{a = 1, a = 2}", 9},
                      BadInput{"let x = 1 x", 12}, BadInput{"x.", 3},
                      BadInput{"\"unterminated", 1}, BadInput{"f )", 3},
                      BadInput{"(x : Rec {a:Int, a:Int})", 18},
                      BadInput{"(x : forall a. a)", 14}));

TEST(ParseErrorTest, DuplicateTypeLabel) {
  EXPECT_THROW(parse_type("{a:Int, a:Bool}"), ParseError);
}

TEST(ParseErrorTest, MessageNamesFoundToken) {
  try {
    parse_term("\\x x");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.found(), "identifier `x`");
  }
}

class RoundTripTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RoundTripTest, PrintedTermsParseBack) {
  testing::TermGen gen(GetParam());
  for (int i = 0; i < 300; ++i) {
    Term t = gen.term(4);
    std::string printed = print_term(t);
    Term back = parse_term(printed);
    EXPECT_TRUE(same_term(t, back)) << printed << "\n" << print_term(back);
  }
}

TEST_P(RoundTripTest, PrintedTypesParseBack) {
  VarSupply supply;
  testing::TypeGen gen(GetParam(), testing::VarPool::make(supply));
  for (int i = 0; i < 300; ++i) {
    Type t = gen.star(3);
    Scheme closed{vars_in_order(t), t};
    std::string printed = print_type(t);
    Type back = parse_type(printed);
    Scheme back_closed{vars_in_order(back), back};
    EXPECT_TRUE(alpha_equal(closed, back_closed)) << printed;
    EXPECT_EQ(print_type(back), printed);
  }
}

TEST_P(RoundTripTest, PrintedSchemesParseBack) {
  VarSupply supply;
  testing::TypeGen gen(GetParam(), testing::VarPool::make(supply));
  for (int i = 0; i < 300; ++i) {
    Type body = gen.star(3);
    Scheme s{vars_in_order(body), body};
    std::string printed = print_scheme(s);
    Scheme back = parse_scheme(printed);
    EXPECT_TRUE(alpha_equal(s, back)) << printed;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RoundTripTest,
                         ::testing::Values(7u, 8u, 9u, 1234u));

}  // namespace
}  // namespace rowpoly
