#include <gtest/gtest.h>

#include "garrow/error.hpp"
#include "garrow/eval.hpp"
#include "garrow/ir.hpp"
#include "garrow/ir_text.hpp"
#include "garrow/sample.hpp"

using namespace garrow;

namespace {

ShapeTree E() { return ShapeTree::Empty(); }
ShapeTree L(GuestType t) { return ShapeTree::Leaf(std::move(t)); }
ShapeTree B(ShapeTree l, ShapeTree r) { return ShapeTree::Branch(std::move(l), std::move(r)); }
GuestType Int() { return GuestType::Int(); }
GuestType Bool() { return GuestType::Bool(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST(Shape, LeavesSkipEmpty) {
  ShapeTree s = B(B(E(), L(Int())), B(L(Bool()), E()));
  ASSERT_EQ(s.leaves().size(), 2u);
  EXPECT_EQ(s.leaves()[0], Int());
  EXPECT_EQ(s.leaves()[1], Bool());
  EXPECT_NE(B(E(), L(Int())), L(Int()));
}

TEST(Shape, Rendering) {
  EXPECT_EQ(E().to_string(), "<>");
  EXPECT_EQ(B(L(Int()), L(GuestType::Exp(Int(), Bool()))).to_string(), "<<Int>, <(Int -> Bool)>>");
  EXPECT_EQ(parse_shape("<<Int>, <(Int -> Bool)>>"), B(L(Int()), L(GuestType::Exp(Int(), Bool()))));
  EXPECT_EQ(parse_guest_type("Int -> Int -> Bool"),
            GuestType::Exp(Int(), GuestType::Exp(Int(), Bool())));
}

TEST(TypeOf, Basics) {
  EXPECT_EQ(ga_type_of(ga::id(L(Int()))), (Signature{L(Int()), L(Int())}));
  EXPECT_EQ(ga_type_of(ga::copy(L(Int()))), (Signature{L(Int()), B(L(Int()), L(Int()))}));
  EXPECT_EQ(ga_type_of(ga::comp(ga::drop(L(Int())), ga::constant(Literal::Int(1), Int()))),
            (Signature{L(Int()), L(Int())}));
  EXPECT_EQ(ga_type_of(ga::cancel_l(L(Int()))), (Signature{B(E(), L(Int())), L(Int())}));
  GaTerm body = ga::cancel_l(L(Int()));
  EXPECT_EQ(ga_type_of(ga::curry_r(body)), (Signature{E(), L(GuestType::Exp(Int(), Int()))}));
  EXPECT_EQ(ga_type_of(ga::apply_r(Int(), Bool())),
            (Signature{B(L(Int()), L(GuestType::Exp(Int(), Bool()))), L(Bool())}));
}

TEST(TypeOf, CompositionMismatchIsIllTyped) {
  GaTerm bad = ga::comp(ga::copy(L(Int())), ga::prim("succ", L(Int()), L(Int())));
  try {
    ga_type_of(bad);
    FAIL() << "expected IllTyped";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllTyped);
    EXPECT_NE(std::string(e.what()).find("root"), std::string::npos);
  }
}

TEST(TypeOf, InjectionOrientation) {
  // uncancell then first never lands the input on the right of the sum
  // tensor, i.e. it behaves as a right injection.
  GuestType x = Int(), y = Bool();
  GaTerm derived = ga::comp(ga::uncancel_l(L(x)), ga::first(ga::never(y), L(x)));
  EXPECT_EQ(ga_type_of(derived).cod, B(L(y), L(x)));
  EXPECT_EQ(ga_type_of(ga::inj_r(y, x)).cod, L(GuestType::Sum(y, x)));
}

TEST(Normalize, Examples) {
  ShapeTree s = L(Int());
  EXPECT_EQ(normalize(ga::comp(ga::id(s), ga::copy(s))), ga::copy(s));
  ShapeTree a = L(Int()), b = L(Bool());
  EXPECT_EQ(normalize(ga::comp(ga::swap(a, b), ga::swap(b, a))), ga::id(B(a, b)));
  EXPECT_EQ(normalize(ga::comp(ga::uncancel_l(s), ga::cancel_l(s))), ga::id(s));
  EXPECT_EQ(normalize(ga::first(ga::id(s), s)), ga::first(ga::id(s), s));
  EXPECT_EQ(normalize(ga::first(ga::id(s), s), {true}), ga::id(B(s, s)));
}

TEST(Normalize, RightNests) {
  ShapeTree s = L(Int());
  GaTerm succ = ga::prim("succ", s, s);
  GaTerm t = ga::comp(ga::comp(succ, succ), ga::comp(succ, succ));
  GaTerm n = normalize(t);
  ASSERT_TRUE(n.is(GaTerm::Kind::Comp));
  EXPECT_FALSE(n.kid(0).is(GaTerm::Kind::Comp));
  EXPECT_EQ(render_ir(n), "(comp (prim succ) (comp (prim succ) (comp (prim succ) (prim succ))))");
}

TEST(Normalize, UncancelCancelMatchesEvalOnRandomValues) {
  Rng rng(7);
  ShapeTree s = B(L(Int()), L(Bool()));
  GaTerm t = ga::comp(ga::uncancel_l(s), ga::cancel_l(s));
  for (int i = 0; i < 100; ++i) {
    Value v = random_value(s, rng);
    EXPECT_TRUE(structurally_equal(eval_interpret(t, v), eval_interpret(normalize(t), v)));
  }
}

TEST(IrText, RenderExamples) {
  EXPECT_EQ(render_ir(ga::comp(ga::drop(L(Int())), ga::constant(Literal::Int(1), Int()))),
            "(comp (drop) (constant 1))");
  EXPECT_EQ(render_ir(ga::id(E())), "(id)");
  EXPECT_EQ(render_ir(ga::copy(L(Int()))), "(copy)");
}

TEST(IrText, ParseExamples) {
  EXPECT_EQ(parse_ir("(id)", L(Int())), ga::id(L(Int())));
  EXPECT_EQ(parse_ir("(comp (drop) (constant 1))", L(Int())),
            ga::comp(ga::drop(L(Int())), ga::constant(Literal::Int(1), Int())));
  ShapeTree i = L(Int()), ii = B(i, i);
  GaTerm expected = ga::comp(
      ga::copy(i),
      ga::comp(ga::first(ga::id(i), i), ga::comp(ga::second(ga::id(i), i), ga::prim("mult", ii, i))));
  EXPECT_EQ(parse_ir("(comp (copy) (comp (first (id)) (comp (second (id)) (prim mult))))", i), expected);
  // mult wrapped in second would need a pair in the right wire, which copy
  // of a single Int does not provide.
  EXPECT_EQ(code_of([&] { parse_ir("(comp (copy) (comp (first (id)) (comp (second (prim mult)) (id))))", i); }),
            ErrorCode::IllTyped);
}

TEST(IrText, ReconstructsCurryArgumentFromUse) {
  // \x -> x * a, curried over an Int environment.
  GaTerm t = parse_ir("(curryr (prim mult))", L(Int()));
  EXPECT_EQ(ga_type_of(t).cod, L(GuestType::Exp(Int(), Int())));
  GaTerm header = parse_ir(";; dom: <> ;; cod: <Bool>\n(never)");
  EXPECT_EQ(ga_type_of(header).cod, L(Bool()));
}

TEST(IrText, Errors) {
  EXPECT_EQ(code_of([] { parse_ir("(comp (copy)", L(Int())); }), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { parse_ir("(frobnicate)", L(Int())); }), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { parse_ir("(cancell)", L(Int())); }), ErrorCode::IllTyped);
  EXPECT_EQ(code_of([] { parse_ir("(prim nope)", L(Int())); }), ErrorCode::PrimUndefined);
}

TEST(IrText, RoundTripWithHeader) {
  ShapeTree i = L(Int());
  GaTerm t = ga::chain({ga::copy(i), ga::swap(i, i), ga::prim("sub", B(i, i), i),
                        ga::curry_r(ga::prim("add", B(i, i), i)), ga::uncancel_l(L(GuestType::Exp(Int(), Int())))},
                       i);
  GaTerm back = parse_ir(render_ir_with_header(t));
  EXPECT_EQ(normalize(back), normalize(t));
}
