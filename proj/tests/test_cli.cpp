#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome garrowc(std::vector<std::string> args) {
  args.insert(args.begin(), "garrowc");
  std::ostringstream out, err;
  int code = garrow::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string pow_ml() { return support::sample_path("pow.ml"); }

}  // namespace

TEST(Cli, FlattenPowZero) {
  Outcome r = garrowc({"flatten", pow_ml(), "--entry", "pow", "--args", "0"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "(comp (drop) (constant 1))\n");
}

TEST(Cli, FlattenMatchesGoldens) {
  for (int n = 1; n <= 3; ++n) {
    Outcome r = garrowc({"flatten", pow_ml(), "--entry", "pow", "--args", std::to_string(n)});
    EXPECT_EQ(r.out, support::read_sample("golden/pow" + std::to_string(n) + ".ir"));
  }
}

TEST(Cli, RunEveryBackend) {
  for (const char* backend : {"eval", "residual", "bi"}) {
    Outcome r = garrowc({"run", pow_ml(), "--entry", "pow", "--args", "3", "--input", "2", "--backend", backend});
    EXPECT_EQ(r.code, 0) << backend << r.err;
    EXPECT_EQ(r.out, "8\n") << backend;
  }
  Outcome neg = garrowc({"run", pow_ml(), "--entry", "pow", "--args", "3", "--input", "-2"});
  EXPECT_EQ(neg.out, "-8\n") << neg.err;
}

TEST(Cli, RunTwoArguments) {
  Outcome r = garrowc({"run", support::sample_path("curried.ml"), "--entry", "flipped_sub", "--input", "(10, 3)"});
  EXPECT_EQ(r.out, "-7\n") << r.err;
}

TEST(Cli, CheckPrintsTypes) {
  Outcome r = garrowc({"check", pow_ml()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "pow : forall c. Int -> <[Int -> Int]>@c\n");
}

TEST(Cli, EscapeAtLevelZeroIsUserError) {
  Outcome r = garrowc({"check", support::sample_path("bad/escape.ml")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("EscapeAtLevelZero"), std::string::npos) << r.err;
  // file:line:col prefix
  EXPECT_EQ(r.err.rfind(support::sample_path("bad/escape.ml") + ":", 0), 0u) << r.err;
}

TEST(Cli, JsonWrapsResults) {
  Outcome ok = garrowc({"flatten", pow_ml(), "--entry", "pow", "--args", "0", "--format", "json"});
  auto j = nlohmann::json::parse(ok.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["result"], "(comp (drop) (constant 1))\n");
  EXPECT_TRUE(j["diagnostics"].empty());

  Outcome bad = garrowc({"check", support::sample_path("bad/unbound.ml"), "--format", "json"});
  EXPECT_EQ(bad.code, 1);
  auto k = nlohmann::json::parse(bad.out);
  EXPECT_FALSE(k["ok"].get<bool>());
  ASSERT_EQ(k["diagnostics"].size(), 1u);
  EXPECT_NE(k["diagnostics"][0].get<std::string>().find("UnboundVar"), std::string::npos);
}

TEST(Cli, FormatsAndDump) {
  Outcome dot = garrowc({"diagram", pow_ml(), "--entry", "pow", "--args", "2"});
  EXPECT_EQ(dot.out.rfind("digraph", 0), 0u);
  Outcome text = garrowc({"flatten", pow_ml(), "--entry", "pow", "--args", "1", "--format", "text"});
  EXPECT_EQ(support::run_residual_text(text.out, garrow::Value::Int(7)).as_int(), 7);
  Outcome d = garrowc({"flatten", pow_ml(), "--entry", "pow", "--args", "1", "--dump-derivation"});
  EXPECT_NE(d.out.find("ACont(<Int>)"), std::string::npos) << d.out;
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args = {"laws", "--backend", "eval", "--seed", "7", "--cases", "10"};
  Outcome a = garrowc(args);
  Outcome b = garrowc(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("LAW L12"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(garrowc({"flatten", pow_ml()}).code, 1);  // no --entry
  EXPECT_EQ(garrowc({"run", pow_ml(), "--entry", "pow", "--args", "1"}).code, 1);  // no --input
  EXPECT_EQ(garrowc({"run", pow_ml(), "--entry", "pow", "--args", "1", "--input", "1", "--backend", "x"}).code, 1);
  EXPECT_EQ(garrowc({"check", "/nonexistent.ml"}).code, 1);
  EXPECT_EQ(garrowc({}).code, 1);
  Outcome shape = garrowc({"run", pow_ml(), "--entry", "pow", "--args", "1", "--input", "true"});
  EXPECT_EQ(shape.code, 1);
  EXPECT_NE(shape.err.find("ShapeMismatch"), std::string::npos) << shape.err;
}
