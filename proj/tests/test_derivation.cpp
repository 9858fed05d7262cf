#include <gtest/gtest.h>

#include <random>

#include "arrange_oracle.hpp"
#include "garrow/derivation.hpp"
#include "garrow/eval.hpp"
#include "garrow/flatten.hpp"
#include "garrow/sample.hpp"
#include "garrow/stack.hpp"
#include "support.hpp"

using namespace garrow;

namespace {

const ShapeTree E = ShapeTree::Empty();
const ShapeTree I = ShapeTree::Leaf(GuestType::Int());
const ShapeTree Bo = ShapeTree::Leaf(GuestType::Bool());
ShapeTree B(ShapeTree l, ShapeTree r) { return ShapeTree::Branch(l, r); }

// Body of the first bracket in the single definition of src.
TypedProgram program(const std::string& src) { return typecheck(parse_program(src)); }

const TypedTerm& bracket_body(const TypedProgram& p) {
  const TypedTerm* t = p.defs[0].body.get();
  while (t->kind != Expr::Kind::Brak) t = t->kids[0].get();
  return *t->kids[0];
}

}  // namespace

TEST(Arrange, Identity) {
  EXPECT_EQ(arrange(B(I, Bo), B(I, Bo)), Arrangement::Id(B(I, Bo)));
  EXPECT_EQ(arrange(E, E), Arrangement::Id(E));
}

TEST(Arrange, Contraction) {
  Arrangement a = arrange(B(I, I), I);
  EXPECT_EQ(a, Arrangement::Cont(I));
  EXPECT_EQ(interp_arrangement(a), ga::copy(I));
}

TEST(Arrange, Projection) {
  Arrangement a = arrange(I, B(I, Bo));
  EXPECT_EQ(a, Arrangement::Comp(Arrangement::UCanR(I), Arrangement::Left(Arrangement::Weak(Bo), I)));
  Value out = eval_interpret(interp_arrangement(a), Value::Pair(Value::Int(7), Value::Bool(true)));
  EXPECT_EQ(out.as_int(), 7);
}

TEST(Arrange, Weakening) {
  EXPECT_EQ(arrange(E, I), Arrangement::Weak(I));
  EXPECT_EQ(interp_arrangement(Arrangement::Weak(I)), ga::drop(I));
}

TEST(Arrange, MissingLeaf) {
  try {
    arrange(Bo, B(I, I));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingLeaf);
  }
}

TEST(Arrange, InterpretationRules) {
  EXPECT_EQ(interp_arrangement(Arrangement::Exch(I, Bo)), ga::swap(Bo, I));
  EXPECT_EQ(interp_arrangement(Arrangement::CanL(I)), ga::uncancel_l(I));
  EXPECT_EQ(interp_arrangement(Arrangement::UCanR(I)), ga::cancel_r(I));
  EXPECT_EQ(interp_arrangement(Arrangement::Assoc(I, Bo, I)), ga::unassoc(I, Bo, I));
  EXPECT_EQ(interp_arrangement(Arrangement::UAssoc(I, Bo, I)), ga::assoc(I, Bo, I));
  EXPECT_EQ(arr_src(Arrangement::Cont(I)), B(I, I));
  EXPECT_EQ(arr_tgt(Arrangement::Cont(I)), I);
  EXPECT_EQ(arr_src(Arrangement::Weak(I)), E);
  EXPECT_EQ(arr_src(Arrangement::Exch(I, Bo)), B(I, Bo));
  EXPECT_EQ(arr_tgt(Arrangement::Exch(I, Bo)), B(Bo, I));
}

// Every pair of small trees, including ones with empty tips.
TEST(Arrange, BruteForceSmallTrees) {
  auto trees = arrange_oracle::all_trees(3, {E, I, Bo}, false);
  std::mt19937_64 rng(7);
  std::size_t pairs = 0;
  with_large_stack([&] {
    for (const auto& n : trees) {
      for (const auto& g : trees) {
        if (!arrange_oracle::reachable(n, g)) continue;
        ++pairs;
        Arrangement a = arrange(n, g);
        ASSERT_EQ(arr_src(a), n);
        ASSERT_EQ(arr_tgt(a), g);
        GaTerm t = interp_arrangement(a);
        Signature sig = ga_type_of(t);
        ASSERT_EQ(sig.dom, g);
        ASSERT_EQ(sig.cod, n);
        for (int k = 0; k < 3; ++k) {
          Value v = random_value(g, rng);
          Value got = eval_interpret(t, v);
          Value want = arrange_oracle::expected(n, g, v);
          ASSERT_TRUE(structurally_equal(got, want))
              << n.to_string() << " <~ " << g.to_string() << " on " << v.to_string() << ": " << got.to_string()
              << " vs " << want.to_string();
        }
      }
    }
  });
  EXPECT_GT(pairs, 1000u);
}

TEST(Derivation, RequiredContext) {
  TypedProgram p = program(support::read_sample("pow.ml"));
  // else-branch body: \x -> x * ~(pow (n - 1)) x
  const TypedTerm& lam = *p.defs[0].body->kids[0]->kids[2]->kids[0];
  ASSERT_EQ(lam.kind, Expr::Kind::Lam);
  const TypedTerm& mult = *lam.kids[0];
  EXPECT_EQ(required_context(mult), B(I, I));
  EXPECT_EQ(required_context(*mult.kids[0]), I);
  EXPECT_EQ(required_context(*p.defs[0].body->kids[0]->kids[1]->kids[0]->kids[0]), E);  // literal 1
}

TEST(Derivation, ConstantBodyWeakens) {
  TypedProgram p = program("k = <[ \\x -> 1 ]>");
  DerivPtr d = elaborate(bracket_body(p));
  ASSERT_EQ(d->rule, Derivation::Rule::Abs);
  EXPECT_EQ(d->absorbed, std::vector<std::string>{"x"});
  const Derivation& arr = *d->kids[0];
  ASSERT_EQ(arr.rule, Derivation::Rule::Arrange);
  EXPECT_EQ(*arr.arrangement, Arrangement::Weak(I));
  ASSERT_EQ(arr.kids[0]->rule, Derivation::Rule::Lit);
  EXPECT_TRUE(arr.kids[0]->transport);
  EXPECT_EQ(arr.kids[0]->ctx, E);
}

TEST(Derivation, InnerLambdaExtendsOnTheRight) {
  TypedProgram p = program("k = <[ let g = \\x -> x in g 3 ]>");
  DerivPtr d = elaborate(bracket_body(p));
  // Let <- (bound: Abs <- Arrange(AuCanL) <- Var)
  std::string text = dump(*d);
  EXPECT_NE(text.find("Abs x"), std::string::npos) << text;
  EXPECT_NE(text.find("Arrange AuCanL(<Int>)"), std::string::npos) << text;
}

TEST(Derivation, PowBodyContracts) {
  TypedProgram p = program(support::read_sample("pow.ml"));
  const TypedTerm& lam = *p.defs[0].body->kids[0]->kids[2]->kids[0];
  DerivPtr d = elaborate(lam);
  ASSERT_EQ(d->rule, Derivation::Rule::Abs);
  const Derivation& arr = *d->kids[0];
  ASSERT_EQ(arr.rule, Derivation::Rule::Arrange);
  EXPECT_EQ(*arr.arrangement, Arrangement::Cont(I));
  EXPECT_EQ(arr.kids[0]->rule, Derivation::Rule::Prim);
  EXPECT_EQ(arr.kids[0]->ctx, B(I, I));
}

TEST(Derivation, ErasureRecoversTerm) {
  for (const char* file : {"pow.ml", "guest.ml", "let.ml", "letrec.ml", "pipeline.ml", "twice.ml", "pairs.ml", "curried.ml"}) {
    TypedProgram p = program(support::read_sample(file));
    for (const auto& def : p.defs) {
      std::function<void(const TypedTerm&)> visit = [&](const TypedTerm& t) {
        if (t.kind == Expr::Kind::Brak) {
          DerivPtr d = elaborate(*t.kids[0]);
          EXPECT_EQ(erase(*d), show(*t.kids[0])) << file << " " << def.name;
          return;
        }
        for (const auto& k : t.kids) visit(*k);
      };
      visit(*def.body);
    }
  }
}

TEST(Derivation, NestedBracketRejected) {
  TypedProgram p = program("nest = <[ <[ 1 ]> ]>");
  try {
    elaborate(bracket_body(p));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NestedBracketUnsupported);
  }
}
