#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "garrow/ir_text.hpp"
#include "garrow/sample.hpp"
#include "garrow/stack.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace garrow;
using GK = GaTerm::Kind;

namespace {

const ShapeTree I = ShapeTree::Leaf(GuestType::Int());

GaTerm pow_term(int n) {
  auto code = support::stage(support::read_sample("pow.ml"), "pow", {Value::Int(n)});
  return code->term();
}

Error error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return Error(ErrorCode::Internal, "none");
}

// Guest inputs for a staged code value, one per absorbed argument.
std::vector<Value> random_args(const StagedCode& code, std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  std::vector<Value> out;
  for (const auto& t : split_arrows(code.default_type()).first) out.push_back(support::random_data(t, rng, lo, hi));
  return out;
}

}  // namespace

TEST(Flatten, PowZeroIsDropThenConstant) {
  EXPECT_EQ(render_ir(pow_term(0)), "(comp (drop) (constant 1))");
  EXPECT_EQ(pow_term(0), ga::comp(ga::drop(I), ga::constant(Literal::Int(1), GuestType::Int())));
}

TEST(Flatten, PowSkeleton) {
  for (int n = 1; n <= 4; ++n) {
    GaTerm t = pow_term(n);
    // copy >>> first id >>> second (pow (n-1)) >>> mult
    ASSERT_TRUE(t.is(GK::Comp)) << render_ir(t);
    EXPECT_EQ(t.kid(0), ga::copy(I));
    const GaTerm& rest = t.kid(1);
    ASSERT_TRUE(rest.is(GK::Comp));
    EXPECT_EQ(rest.kid(0), ga::first(ga::id(I), I));
    ASSERT_TRUE(rest.kid(1).is(GK::Comp));
    EXPECT_EQ(rest.kid(1).kid(0), ga::second(pow_term(n - 1), I));
    EXPECT_EQ(rest.kid(1).kid(1), ga::prim("mult", ShapeTree::Branch(I, I), I));
  }
}

TEST(Flatten, PowGoldenFiles) {
  for (int n = 0; n <= 3; ++n) {
    std::string golden = support::read_sample("golden/pow" + std::to_string(n) + ".ir");
    while (!golden.empty() && golden.back() == '\n') golden.pop_back();
    EXPECT_EQ(render_ir(pow_term(n)), golden) << n;
  }
}

TEST(Flatten, PowComputesPowers) {
  garrow::Program prog = parse_program(support::read_sample("pow.ml"));
  for (int n = 0; n <= 6; ++n) {
    GaTerm t = pow_term(n);
    for (int x = -3; x <= 3; ++x) {
      std::int64_t want = 1;
      for (int i = 0; i < n; ++i) want *= x;
      EXPECT_EQ(eval_interpret(t, Value::Int(x)).as_int(), want);
      EXPECT_EQ(oracle::run(prog, "pow", {Value::Int(n)}, {Value::Int(x)}).as_int(), want);
    }
  }
}

TEST(Flatten, GuestCompComposes) {
  std::string src = support::read_sample("guest.ml");
  auto composed = support::stage(src, "inc_after_dbl");
  GaTerm inc = support::stage(src, "inc")->term();
  GaTerm dbl = support::stage(src, "dbl")->term();
  GaTerm direct = ga::comp(dbl, inc);
  EXPECT_EQ(ga_type_of(composed->term()), ga_type_of(direct));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Value x = random_value(I, rng);
    EXPECT_TRUE(structurally_equal(eval_interpret(composed->term(), x), eval_interpret(direct, x)));
  }
}

TEST(Flatten, IdentityWire) {
  auto code = support::stage(support::read_sample("guest.ml"), "guest_id");
  EXPECT_EQ(normalize(code->term()), ga::id(I));
}

TEST(Flatten, PolymorphicSpliceAtTwoTypes) {
  auto code = support::stage(support::read_sample("guest.ml"), "id_pair");
  Value out = eval_interpret(code->term(), Value::Pair(Value::Int(0), Value::Int(9)));
  EXPECT_EQ(out.to_string(), Value::Pair(Value::Int(9), Value::Bool(true)).to_string());
}

TEST(Flatten, TypePreservation) {
  for (const auto& c : corpus::programs()) {
    auto code = support::stage(support::read_sample(c.file), c.entry, c.stage_args);
    auto [args, result] = split_arrows(code->default_type());
    Signature sig = ga_type_of(code->term());
    EXPECT_EQ(sig.dom, absorbed_shape(args)) << c.label();
    EXPECT_EQ(sig.cod, ShapeTree::Leaf(result)) << c.label();
  }
}

TEST(Flatten, CorpusAgreesWithOracle) {
  std::mt19937_64 rng(11);
  for (const auto& c : corpus::programs()) {
    std::string src = support::read_sample(c.file);
    garrow::Program prog = parse_program(src);
    auto code = support::stage(src, c.entry, c.stage_args);
    std::string text = residualize(code->term());
    for (int i = 0; i < 20; ++i) {
      std::vector<Value> args = random_args(*code, rng, c.lo, c.hi);
      Value want = oracle::run(prog, c.entry, c.stage_args, args);
      Value input = support::absorbed_value(args);
      EXPECT_TRUE(structurally_equal(eval_interpret(code->term(), input), want)) << c.label();
      EXPECT_TRUE(structurally_equal(support::run_residual_text(text, input), want)) << c.label();
    }
  }
}

TEST(Flatten, LetRecBecomesLoop) {
  auto code = support::stage(support::read_sample("letrec.ml"), "fact");
  std::function<bool(const GaTerm&)> has_loop = [&](const GaTerm& t) {
    if (t.is(GK::LoopR)) return true;
    for (std::size_t i = 0; i < t.kid_count(); ++i) {
      if (has_loop(t.kid(i))) return true;
    }
    return false;
  };
  EXPECT_TRUE(has_loop(code->term()));
  EXPECT_EQ(eval_interpret(code->term(), Value::Int(5)).as_int(), 120);
}

TEST(Flatten, NestedBracketUnsupported) {
  auto code = support::stage("nest = <[ <[ 1 ]> ]>", "nest");
  EXPECT_EQ(error_of([&] { code->term(); }).code(), ErrorCode::NestedBracketUnsupported);
}

TEST(Flatten, OpenCodeRejected) {
  // The inner bracket would capture a level-1 variable of the outer one.
  std::string src = "outer = <[ \\x -> ~(let c = <[ x ]> in c) ]>";
  Error e = error_of([&] { support::stage(src, "outer"); });
  EXPECT_TRUE(e.code() == ErrorCode::LevelMismatch || e.code() == ErrorCode::EscapeAtLevelZero) << e.what();
}

TEST(Flatten, EntryMustBeCode) {
  EXPECT_EQ(error_of([&] { support::stage("f x = x + 1", "f", {Value::Int(2)}); }).code(), ErrorCode::SpliceNotCode);
  EXPECT_EQ(error_of([&] { support::stage(support::read_sample("pow.ml"), "pow", {Value::Bool(true)}); }).code(),
            ErrorCode::TypeMismatch);
}

TEST(Flatten, LevelZeroFuel) {
  StageOptions opts;
  opts.steps = 10'000;
  StageEnv env(typecheck(parse_program("loop n = loop (n + 1)\nk = loop 0")), opts);
  EXPECT_EQ(error_of([&] { env.global("k"); }).code(), ErrorCode::FuelExhausted);
}

TEST(Flatten, LevelZeroOverflow) {
  StageEnv env(typecheck(parse_program("big = 9223372036854775807 + 1")));
  EXPECT_EQ(error_of([&] { env.global("big"); }).code(), ErrorCode::Overflow);
}
