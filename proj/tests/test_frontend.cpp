#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "garrow/syntax.hpp"
#include "garrow/typecheck.hpp"
#include "support.hpp"

using namespace garrow;

namespace {

ErrorCode check_error(const std::string& src) {
  try {
    typecheck(parse_program(src));
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << src;
  return ErrorCode::Internal;
}

std::string type_of(const std::string& src, const std::string& name) {
  TypedProgram p = typecheck(parse_program(src));
  return print_type(p.find(name)->scheme.type);
}

}  // namespace

TEST(Parse, Brackets) {
  Program p = parse_program("guest_id = <[ \\x -> x ]>");
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].name, "guest_id");
  EXPECT_EQ(show(*p[0].body), "Brak(Lam(x, Var x))");
}

TEST(Parse, EscapeBindsTighterThanApplication) {
  Program p = parse_program("guest_comp f g = <[ \\x -> ~f (~g x) ]>");
  EXPECT_EQ(show(*p[0].body), "Lam(f, Lam(g, Brak(Lam(x, App(Esc(Var f), App(Esc(Var g), Var x))))))");
}

TEST(Parse, EmptyProgram) {
  EXPECT_TRUE(parse_program("").empty());
  EXPECT_TRUE(parse_program("-- only a comment\n").empty());
}

TEST(Parse, LayoutAndOperators) {
  Program p = parse_program(support::read_sample("pow.ml"));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(show(*p[0].body),
            "Lam(n, If(Prim(eq, Var n, Lit 0), Brak(Lam(x, Lit 1)), "
            "Brak(Lam(x, Prim(mult, Var x, App(Esc(App(Var pow, Prim(sub, Var n, Lit 1))), Var x))))))");
  Program two = parse_program("a = 1\nb = a +\n  2 * 3 - 4\n");
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(show(*two[1].body), "Prim(sub, Prim(add, Var a, Prim(mult, Lit 2, Lit 3)), Lit 4)");
}

TEST(Parse, TuplesProjectionsAndTypes) {
  EXPECT_EQ(show(*parse_expr("(1, (true, ()))")), "Prim(pair, Lit 1, Prim(pair, Lit true, Lit ()))");
  EXPECT_EQ(show(*parse_expr("fst (snd p)")), "Prim(fst, Prim(snd, Var p))");
  EXPECT_EQ(show(*parse_expr("letrec k : (Int * ()) -> <[Bool]>@c = k in k")),
            "LetRec(k : ((Int * ()) -> <[Bool]>@c), Var k, Var k)");
  EXPECT_EQ(show(parse_type("Int -> Int -> Int")), "(Int -> (Int -> Int))");
  EXPECT_EQ(show(parse_type("Int * Bool * ()")), "(Int * (Bool * ()))");
}

TEST(Parse, Errors) {
  for (const char* bad : {"f = ", "f = <[ 1", "f = (1 ,", "= 1", "f = 1 == 2 == 3", "f = let x 1 in x", "f = $"}) {
    try {
      parse_program(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::SyntaxError) << bad;
      EXPECT_TRUE(e.pos().has_value()) << bad;
    }
  }
}

TEST(Parse, Values) {
  EXPECT_EQ(parse_value("-3").as_int(), -3);
  EXPECT_TRUE(parse_value("true").as_bool());
  EXPECT_EQ(parse_value(" ( 1 , (false, ()) ) ").to_string(), Value::Pair(Value::Int(1), Value::Pair(Value::Bool(false), Value::Unit())).to_string());
  EXPECT_THROW(parse_value("1 2"), Error);
  EXPECT_THROW(parse_value("x"), Error);
}

TEST(Typecheck, GuestComp) {
  std::string got = type_of(support::read_sample("guest.ml"), "guest_comp");
  EXPECT_EQ(support::canonical(got), support::canonical("forall c. <[y -> z]>@c -> <[x -> y]>@c -> <[x -> z]>@c")) << got;
  EXPECT_EQ(type_of(support::read_sample("guest.ml"), "guest_id"), "forall c. <[x -> x]>@c");
}

TEST(Typecheck, Pow) {
  EXPECT_EQ(type_of(support::read_sample("pow.ml"), "pow"), "forall c. Int -> <[Int -> Int]>@c");
}

TEST(Typecheck, LevelsRecorded) {
  TypedProgram p = typecheck(parse_program(support::read_sample("pow.ml")));
  // Every node's level equals its bracket depth, and variables sit at the
  // level of their binder.
  std::function<void(const TypedTerm&, std::size_t)> walk = [&](const TypedTerm& t, std::size_t depth) {
    EXPECT_EQ(t.level.size(), depth) << show(t);
    std::size_t inner = t.kind == Expr::Kind::Brak ? depth + 1 : t.kind == Expr::Kind::Esc ? depth - 1 : depth;
    for (const auto& k : t.kids) walk(*k, inner);
  };
  walk(*p.defs[0].body, 0);
}

TEST(Typecheck, OneLevelProgramsAgreeWithSimpleTypes) {
  EXPECT_EQ(type_of("f x = x + 1", "f"), "Int -> Int");
  EXPECT_EQ(type_of("f p = (snd p, fst p)", "f"), "x * y -> y * x");
  EXPECT_EQ(type_of("f g x = g (g x)", "f"), "(x -> x) -> x -> x");
  EXPECT_EQ(type_of("f = letrec g : Int -> Int = \\n -> if n == 0 then 1 else n * g (n - 1) in g 5", "f"), "Int");
  EXPECT_EQ(type_of("f n = if n == 0 then 0 else f (n - 1)", "f"), "Int -> Int");
}

TEST(Typecheck, NegativeCorpus) {
  const std::map<std::string, ErrorCode> expected = {
      {"bad/escape.ml", ErrorCode::EscapeAtLevelZero},
      {"bad/unbound.ml", ErrorCode::UnboundVar},
      {"bad/level.ml", ErrorCode::LevelMismatch},
      {"bad/level1_in_level0.ml", ErrorCode::LevelMismatch},
      {"bad/classifier.ml", ErrorCode::ClassifierMismatch},
      {"bad/classifier_letrec.ml", ErrorCode::ClassifierMismatch},
      {"bad/mismatch.ml", ErrorCode::TypeMismatch},
      {"bad/occurs.ml", ErrorCode::OccursCheck},
      {"bad/branches.ml", ErrorCode::TypeMismatch},
      {"bad/splice_int.ml", ErrorCode::TypeMismatch},
  };
  for (const auto& [file, code] : expected) {
    EXPECT_EQ(check_error(support::read_sample(file)), code) << file;
  }
}

TEST(Typecheck, SplicesShareOneClassifier) {
  // Two code values spliced into one bracket get the same classifier.
  std::string t = type_of("both f g = <[ \\x -> ~f (~g x) ]>", "both");
  EXPECT_EQ(t.find("c1"), std::string::npos) << t;
  // ...and distinct brackets stay independent.
  EXPECT_EQ(type_of("pair_up = (<[ 1 ]>, <[ true ]>)", "pair_up"), "forall c c1. <[Int]>@c * <[Bool]>@c1");
}

TEST(Typecheck, NestedBracketsTypecheck) {
  EXPECT_EQ(type_of("nest = <[ <[ 1 ]> ]>", "nest"), "forall c c1. <[<[Int]>@c1]>@c");
}

TEST(Typecheck, FreeVars) {
  TypedProgram p = typecheck(parse_program("f = <[ \\x -> \\y -> x + y ]>"));
  const TypedTerm& inner = *p.defs[0].body->kids[0]->kids[0];  // \y -> x + y
  auto fv = free_vars(inner);
  ASSERT_EQ(fv.size(), 1u);
  EXPECT_EQ(fv[0].name, "x");
  EXPECT_EQ(fv[0].level.size(), 1u);
  EXPECT_TRUE(free_vars(*p.defs[0].body).empty());
}
