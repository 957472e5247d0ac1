#include <gtest/gtest.h>

#include <sstream>

#include "printers.hpp"
#include "spinpa/cli.hpp"
#include "spinpa/dsl.hpp"
#include "spinpa/evalfun.hpp"

using namespace spinpa;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Dsl, RoundTrip) {
  const std::vector<std::string> inputs{
      "s(1)",
      "2*s(1) - s(2)",
      "capR(id(1,+))",
      "tr(e[^1_2])",
      "E(3,-,1) * E(3,-,2)",
      "star(rot(inc(e^{1 2}_{2 1})))",
      "expand(id(2,+))",
      "sqrt(3) * id(2,+) + 1/2 * e^1_1",
      "d{colour 2 +; match: (1,2) (3,4); labels: 1=2}",
  };
  for (const auto& text : inputs) {
    const ExprPtr e = parse_expr(text, 3);
    const std::string printed = print_expr(*e);
    const ExprPtr again = parse_expr(printed, 3);
    EXPECT_EQ(print_expr(*again), printed) << text;
    EXPECT_EQ(to_text(eval_text(text, 3)), to_text(eval_text(printed, 3))) << text;
  }
}

TEST(Dsl, Values) {
  EXPECT_EQ(to_text(eval_text("capR(id(1,+))", 2)), to_text(eval_text("sqrtn * id(0,+)", 2)));
  EXPECT_EQ(to_text(eval_text("tr(e[^1_2])", 2)), to_text(Value{Scalar(0)}));
  EXPECT_EQ(to_text(eval_text("tr(e^1_1)", 3)), to_text(Value{Scalar(Rational(1, 3))}));
  const Value e = eval_text("E(3,+,1)", 3);
  const Value ee = eval_text("E(3,+,1) * E(3,+,1)", 3);
  EXPECT_EQ(to_text(e), to_text(ee));
  const Value s = eval_text("s(1) + s(2) + s(3)", 3);
  EXPECT_EQ(to_text(s), to_text(eval_text("expand(id(0,-))", 3)));
}

TEST(Dsl, ErrorPositions) {
  try {
    eval_text("s(1) +\n  s(1) * id(1,+)", 3);
    FAIL() << "expected a type error";
  } catch (const DslError& e) {
    EXPECT_EQ(e.pos.line, 2);
  }
  try {
    parse_expr("s(1) + $", 3);
    FAIL() << "expected a parse error";
  } catch (const DslError& e) {
    EXPECT_EQ(e.pos.line, 1);
    EXPECT_EQ(e.pos.column, 8);
  }
  EXPECT_THROW(eval_text("s(4)", 3), ValidationError);
  EXPECT_THROW(eval_text("sqrt(2) * s(1)", 3), ValidationError);
  EXPECT_THROW(eval_text("capL(id(0,+))", 3), ValidationError);
  EXPECT_THROW(eval_text("id(1,+) + id(1,-)", 3), ValidationError);
}

TEST(Cli, Dims) {
  const CliRun r = cli({"--n", "2", "--max-k", "4", "dims"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("16"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"--n", "2", "eval", "-e", "s(1)"}).code, 0);
  EXPECT_EQ(cli({"--n", "2", "eval", "-e", "s(1"}).code, 2);
  EXPECT_EQ(cli({"--n", "0", "dims"}).code, 2);
  EXPECT_EQ(cli({"dims"}).code, 2);
  EXPECT_EQ(cli({"--n", "2", "verify", "nonsense"}).code, 2);
  EXPECT_EQ(cli({"--n", "2", "gram", "2", "+"}).code, 0);
  EXPECT_EQ(cli({"--n", "2", "iso-check", "2"}).code, 0);
}

TEST(Cli, VerifyDeterministic) {
  const CliRun a = cli({"--n", "2", "--max-k", "3", "--seed", "7", "verify", "multiplicativity"});
  const CliRun b = cli({"--n", "2", "--max-k", "3", "--seed", "7", "verify", "multiplicativity"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, WrongChannelConstantIsCaught) {
  const CliRun r = cli({"--n", "2", "--max-k", "3", "--channel-constant", "1", "verify", "black-channel"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("annulus"), std::string::npos);
}

}  // namespace
