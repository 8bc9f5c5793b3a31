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

#include <gtest/gtest.h>

#include "generators.h"
#include "rowpoly/oracle.h"
#include "rowpoly/parser.h"
#include "rowpoly/printer.h"

namespace rowpoly {
namespace {

// Parses two types in one scope so equally named variables coincide.
std::pair<Type, Type> parse_pair(const std::string &a, const std::string &b,
                                 VarSupply &supply) {
  Type t = parse_type("(" + a + ") -> (" + b + ")", supply);
  const auto *f = t.get_if<FunNode>();
  return {f->dom, f->cod};
}

RowType row_of(const Type &t) { return t.get_if<RowNode>()->row; }

TypeVar var_of(const Type &t) { return t.get_if<VarNode>()->var; }

// Prints both sides with shared variable names.
std::string show(const Type &t, TypePrinter &p) { return p.type(t); }

class UnifyTest : public ::testing::Test {
 protected:
  VarSupply supply_{100};
};

TEST_F(UnifyTest, ClassicFunctionCase) {
  auto [t1, t2] = parse_pair("a -> a", "Int -> b", supply_);
  Subst s = unify(t1, t2, supply_);
  EXPECT_EQ(s.size(), 2u);
  TypeVar a = var_of(t1.get_if<FunNode>()->dom);
  TypeVar b = var_of(t2.get_if<FunNode>()->cod);
  ASSERT_NE(s.lookup(a), nullptr);
  ASSERT_NE(s.lookup(b), nullptr);
  EXPECT_EQ(print_type(*s.lookup(a)), "Int");
  EXPECT_EQ(print_type(*s.lookup(b)), "Int");
}

TEST_F(UnifyTest, RecordInstantiation) {
  auto [t1, t2] =
      parse_pair("Rec {name:String | r}", "Rec {age:Int, name:String}", supply_);
  Subst s = unify(t1, t2, supply_);
  ASSERT_EQ(s.size(), 1u);
  TypeVar r = *row_of(t1.get_if<AppNode>()->arg).tail;
  ASSERT_NE(s.lookup(r), nullptr);
  EXPECT_EQ(print_type(*s.lookup(r)), "{age:Int}");
}

TEST_F(UnifyTest, HeadMismatch) {
  try {
    unify(int_type(), bool_type(), supply_);
    FAIL();
  } catch (const UnifyError &e) {
    EXPECT_NE(std::get_if<UnifyError::Mismatch>(&e.detail()), nullptr);
    EXPECT_STREQ(e.what(), "cannot unify `Int` with `Bool`");
  }
}

TEST_F(UnifyTest, OccursCheck) {
  auto [t1, t2] = parse_pair("a", "List a", supply_);
  try {
    unify(t1, t2, supply_);
    FAIL();
  } catch (const UnifyError &e) {
    const auto *o = std::get_if<UnifyError::OccursCheck>(&e.detail());
    ASSERT_NE(o, nullptr);
    EXPECT_EQ(o->var, var_of(t1));
  }
}

TEST_F(UnifyTest, RowTailOccursCheck) {
  auto [t1, t2] = parse_pair("Rec {| r}", "Rec {a:Rec {| r} | s}", supply_);
  // r := {a:Rec {| r} | s'} would be infinite.
  EXPECT_THROW(unify(t1, t2, supply_), UnifyError);
}

TEST_F(UnifyTest, RowsOfUnknownSizeInsideFunctions) {
  auto [t1, t2] = parse_pair("Rec {a:x | r} -> x", "Rec {b:Bool, a:Int} -> y",
                             supply_);
  Subst s = unify(t1, t2, supply_);
  EXPECT_TRUE(row_equivalent(apply(s, t1), apply(s, t2)));
  TypePrinter p;
  EXPECT_EQ(show(apply(s, t1), p), "Rec {a:Int, b:Bool} -> Int");
}

TEST_F(UnifyTest, EmptyRows) {
  Subst s = unify_rows(RowType{}, RowType{}, supply_);
  EXPECT_TRUE(s.empty());
}

TEST_F(UnifyTest, OpenAgainstClosed) {
  auto [t1, t2] = parse_pair("{name:String | r}", "{name:String, age:Int}", supply_);
  Subst s = unify_rows(row_of(t1), row_of(t2), supply_);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(print_type(*s.lookup(*row_of(t1).tail)), "{age:Int}");
}

TEST_F(UnifyTest, TwoOpenRowsShareAFreshTail) {
  auto [t1, t2] = parse_pair("{a:Int | r1}", "{b:Bool | r2}", supply_);
  std::int64_t before = supply_.peek();
  Subst s = unify_rows(row_of(t1), row_of(t2), supply_);
  ASSERT_EQ(s.size(), 2u);
  const Type *r1 = s.lookup(*row_of(t1).tail);
  const Type *r2 = s.lookup(*row_of(t2).tail);
  ASSERT_NE(r1, nullptr);
  ASSERT_NE(r2, nullptr);
  RowType b1 = row_of(*r1);
  RowType b2 = row_of(*r2);
  ASSERT_TRUE(b1.tail && b2.tail);
  EXPECT_EQ(*b1.tail, *b2.tail);
  EXPECT_GE(b1.tail->id, before);
  EXPECT_TRUE(b1.tail->kind.is_row());
  TypePrinter p;
  EXPECT_EQ(p.type(*r1), "{b:Bool | a}");
  EXPECT_EQ(p.type(*r2), "{a:Int | a}");
  // Agreement with brute force over the default space.
  oracle::RowProblem problem{
      RowType{{{"a", int_type()}}, oracle::row_var(1)},
      RowType{{{"b", bool_type()}}, oracle::row_var(2)}};
  EXPECT_TRUE(oracle::oracle_agrees(problem, oracle::GroundSpace{}));
}

TEST_F(UnifyTest, ClosedRowMissingLabel) {
  auto [t1, t2] = parse_pair("{a:Int}", "{a:Int, b:Bool}", supply_);
  try {
    unify_rows(row_of(t1), row_of(t2), supply_);
    FAIL();
  } catch (const UnifyError &e) {
    const auto *m = std::get_if<UnifyError::RowMissingLabel>(&e.detail());
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(m->label, "b");
    EXPECT_STREQ(e.what(), "missing label `b` in closed row `{a:Int}`");
  }
}

TEST_F(UnifyTest, FieldMismatch) {
  auto [t1, t2] = parse_pair("{name:Int | r}", "{name:String, age:Int}", supply_);
  try {
    unify_rows(row_of(t1), row_of(t2), supply_);
    FAIL();
  } catch (const UnifyError &e) {
    const auto *m = std::get_if<UnifyError::Mismatch>(&e.detail());
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(print_type(m->left), "Int");
    EXPECT_EQ(print_type(m->right), "String");
  }
  oracle::RowProblem problem{
      RowType{{{"b", int_type()}}, oracle::row_var(1)},
      RowType{{{"b", string_type()}, {"a", int_type()}}, std::nullopt}};
  EXPECT_TRUE(oracle::ground_solutions(problem, oracle::GroundSpace{}).empty());
}

TEST_F(UnifyTest, SameTailDifferentFieldsEscapes) {
  auto [t1, t2] = parse_pair("{a:Int | r}", "{b:Bool | r}", supply_);
  try {
    unify_rows(row_of(t1), row_of(t2), supply_);
    FAIL();
  } catch (const UnifyError &e) {
    EXPECT_NE(std::get_if<UnifyError::RowTailEscape>(&e.detail()), nullptr);
  }
}

TEST_F(UnifyTest, SameTailSameFieldsSucceeds) {
  auto [t1, t2] = parse_pair("{a:x | r}", "{a:Int | r}", supply_);
  Subst s = unify_rows(row_of(t1), row_of(t2), supply_);
  EXPECT_EQ(s.size(), 1u);
}

TEST_F(UnifyTest, EmptyOpenRowUnifiesWithAnyRow) {
  auto [t1, t2] = parse_pair("{| r}", "{a:Int, b:Bool | s}", supply_);
  Subst s = unify_rows(row_of(t1), row_of(t2), supply_);
  EXPECT_TRUE(row_equivalent(apply(s, t1), apply(s, t2)));
  EXPECT_EQ(s.size(), 1u);
}

TEST_F(UnifyTest, ApplyMergesRowTail) {
  auto [t1, t2] = parse_pair("Rec {name:String | r}", "{age:Int}", supply_);
  Subst s;
  s.bind(*row_of(t1.get_if<AppNode>()->arg).tail, t2);
  EXPECT_EQ(print_type(apply(s, t1)), "Rec {age:Int, name:String}");

  Subst empty_row;
  empty_row.bind(*row_of(t1.get_if<AppNode>()->arg).tail, Type::row(RowType{}));
  EXPECT_EQ(print_type(apply(empty_row, t1)), "Rec {name:String}");

  EXPECT_EQ(print_type(apply(Subst{}, t1)), print_type(t1));
}

TEST_F(UnifyTest, ApplyRejectsDuplicateMerge) {
  auto [t1, t2] = parse_pair("{a:Bool | r}", "{a:Int}", supply_);
  Subst s;
  s.bind(*row_of(t1).tail, t2);
  try {
    apply(s, t1);
    FAIL();
  } catch (const UnifyError &e) {
    const auto *d = std::get_if<UnifyError::DuplicateLabel>(&e.detail());
    ASSERT_NE(d, nullptr);
    EXPECT_EQ(d->label, "a");
  }
}

TEST_F(UnifyTest, ComposeWithEmptyIsIdentity) {
  auto [t1, t2] = parse_pair("a -> a", "Int -> b", supply_);
  Subst s = unify(t1, t2, supply_);
  Subst c = compose(Subst{}, s);
  EXPECT_EQ(c.bindings().size(), s.bindings().size());
  EXPECT_EQ(print_type(apply(c, t1)), print_type(apply(s, t1)));
}

TEST_F(UnifyTest, ComposeTransitiveBinding) {
  auto [alpha, beta] = parse_pair("a", "b", supply_);
  Subst inner;
  inner.bind(var_of(alpha), beta);
  Subst outer;
  outer.bind(var_of(beta), int_type());
  Subst c = compose(outer, inner);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(print_type(*c.lookup(var_of(alpha))), "Int");
  EXPECT_EQ(print_type(*c.lookup(var_of(beta))), "Int");
  EXPECT_TRUE(is_idempotent(c));
}

TEST_F(UnifyTest, ComposeRowBindings) {
  auto [probe, image] = parse_pair("Rec {a:Int | r1}", "{b:Bool | r3}", supply_);
  TypeVar r1 = *row_of(probe.get_if<AppNode>()->arg).tail;
  TypeVar r3 = *row_of(image).tail;
  Subst inner;
  inner.bind(r1, image);
  Subst outer;
  outer.bind(r3, Type::row(RowType{}));
  Subst c = compose(outer, inner);
  EXPECT_EQ(print_type(*c.lookup(r1)), "{b:Bool}");
  EXPECT_EQ(print_type(*c.lookup(r3)), "{}");
  EXPECT_EQ(print_type(apply(c, probe)), print_type(apply(outer, apply(inner, probe))));
  EXPECT_EQ(print_type(apply(c, probe)), "Rec {a:Int, b:Bool}");
}

TEST_F(UnifyTest, BindDropsIdentity) {
  TypeVar v = supply_.fresh(Kind::star());
  Subst s;
  s.bind(v, Type::var(v));
  EXPECT_TRUE(s.empty());
}

// Closes a type over all its variables so that renamings compare equal.
Scheme closed(const Type &t) { return Scheme{vars_in_order(t), t}; }

class UnifyPropertyTest : public ::testing::TestWithParam<std::uint64_t> {
 protected:
  VarSupply supply_{0};
  testing::TypeGen gen_{GetParam(), testing::VarPool::make(supply_)};

  Type probe() const {
    const auto &pool = gen_.pool();
    Type t = Type::record(RowType{{}, pool.rows[0]});
    t = Type::fun(Type::record(RowType{{}, pool.rows[1]}), t);
    for (const auto &v : pool.stars) t = Type::fun(Type::var(v), t);
    return t;
  }
};

TEST_P(UnifyPropertyTest, SoundIdempotentAndSymmetric) {
  int successes = 0;
  for (int i = 0; i < 500; ++i) {
    Type t1 = gen_.star(2);
    Type t2 = gen_.star(2);
    std::optional<Subst> forward, backward;
    try {
      forward = unify(t1, t2, supply_);
    } catch (const UnifyError &) {
    }
    try {
      backward = unify(t2, t1, supply_);
    } catch (const UnifyError &) {
    }
    ASSERT_EQ(forward.has_value(), backward.has_value())
        << print_type(t1) << " =?= " << print_type(t2);
    if (!forward) continue;
    ++successes;
    EXPECT_TRUE(row_equivalent(apply(*forward, t1), apply(*forward, t2)));
    EXPECT_TRUE(row_equivalent(apply(*backward, t1), apply(*backward, t2)));
    EXPECT_TRUE(is_idempotent(*forward));
    EXPECT_TRUE(is_idempotent(*backward));
    // Both answers are most general, hence equal up to renaming.
    EXPECT_TRUE(alpha_equal(closed(apply(*forward, probe())),
                            closed(apply(*backward, probe()))));
  }
  EXPECT_GT(successes, 50);
}

TEST_P(UnifyPropertyTest, FieldOrderIsIrrelevant) {
  for (int i = 0; i < 500; ++i) {
    Type t1 = gen_.star(2);
    Type t2 = gen_.star(2);
    Type u1 = testing::shuffle_rows(t1, gen_.rng());
    Type u2 = testing::shuffle_rows(t2, gen_.rng());
    std::optional<Subst> a, b;
    try {
      a = unify(t1, t2, supply_);
    } catch (const UnifyError &) {
    }
    try {
      b = unify(u1, u2, supply_);
    } catch (const UnifyError &) {
    }
    ASSERT_EQ(a.has_value(), b.has_value());
    if (!a) continue;
    EXPECT_TRUE(alpha_equal(closed(apply(*a, probe())), closed(apply(*b, probe()))));
  }
}

TEST_P(UnifyPropertyTest, ComposeAgreesWithSequentialApplication) {
  for (int i = 0; i < 300; ++i) {
    Type t1 = gen_.star(2), t2 = gen_.star(2);
    Type t3 = gen_.star(2), t4 = gen_.star(2);
    try {
      Subst inner = unify(t1, t2, supply_);
      Subst outer = unify(apply(inner, t3), apply(inner, t4), supply_);
      Subst c = compose(outer, inner);
      EXPECT_TRUE(is_idempotent(c));
      for (const Type &t : {t1, t2, t3, t4, probe()}) {
        EXPECT_TRUE(row_equivalent(apply(c, t), apply(outer, apply(inner, t))));
      }
    } catch (const UnifyError &) {
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, UnifyPropertyTest,
                         ::testing::Values(21u, 22u, 23u, 24u));

}  // namespace
}  // namespace rowpoly
