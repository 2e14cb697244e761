#include <gtest/gtest.h>

#include <cmath>

#include "curve.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "prop.hpp"

using namespace mannheim;
using mannheim::testing::Gen;
using mannheim::testing::central_fd;
using mannheim::testing::random_expr;

namespace {

using F = Expr::Func;
using K = Expr::Kind;

}  // namespace

TEST(ParseExpr, Examples) {
  const Expr one = parse_expr("cosh(s)^2 - sinh(s)^2");
  for (double s : {-1.5, 0.0, 0.3, 2.0}) EXPECT_NEAR(one.eval(s), 1.0, 1e-12 * std::cosh(s) * std::cosh(s));
  EXPECT_DOUBLE_EQ(parse_expr("2*s + 1").eval(3), 7.0);
}

TEST(ParseExpr, UnbalancedParenReportsOffset) {
  try {
    parse_expr("(1,2");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(ParseExpr, Precedence) {
  EXPECT_DOUBLE_EQ(parse_expr("2^3^2").eval(0), 512.0);
  EXPECT_DOUBLE_EQ(parse_expr("-2^2").eval(0), 4.0);  // unary minus binds tighter than '^' base
  EXPECT_DOUBLE_EQ(parse_expr("2^-1").eval(0), 0.5);
  EXPECT_DOUBLE_EQ(parse_expr("1 - 2 - 3").eval(0), -4.0);
  EXPECT_DOUBLE_EQ(parse_expr("8 / 4 / 2").eval(0), 1.0);
  EXPECT_DOUBLE_EQ(parse_expr(" 2 *  ( s+1 ) ").eval(1), 4.0);
  EXPECT_NEAR(parse_expr("pi").eval(0), M_PI, 0);
  EXPECT_NEAR(parse_expr("e").eval(0), M_E, 0);
  EXPECT_NEAR(parse_expr("1.5e-3*s").eval(2), 3e-3, 1e-18);
}

TEST(ParseExpr, Errors) {
  EXPECT_THROW(parse_expr("foo(s)"), ParseError);
  EXPECT_THROW(parse_expr("x + 1"), ParseError);
  EXPECT_THROW(parse_expr("2 +"), ParseError);
  EXPECT_THROW(parse_expr(""), ParseError);
  EXPECT_THROW(parse_expr("sin s"), ParseError);
  EXPECT_THROW(parse_expr("1 2"), ParseError);
  EXPECT_THROW(parse_expr("(1,2)"), ParseError);
}

TEST(ExprEval, DomainErrors) {
  EXPECT_THROW(parse_expr("ln(s)").eval(-1), Error);
  EXPECT_THROW(parse_expr("sqrt(s)").eval(-1), Error);
  EXPECT_THROW(parse_expr("1/s").eval(0), Error);
  EXPECT_THROW(parse_expr("acosh(s)").eval(0.5), Error);
  EXPECT_THROW(parse_expr("atanh(s)").eval(1), Error);
  EXPECT_THROW(parse_expr("asin(s)").eval(2), Error);
  EXPECT_THROW(parse_expr("s^0.5").eval(-2), Error);
  EXPECT_DOUBLE_EQ(parse_expr("s^3").eval(-2), -8.0);
  EXPECT_THROW(parse_expr("exp(s)").eval(1000), Error);
}

TEST(Differentiate, Examples) {
  EXPECT_EQ(differentiate(parse_expr("sinh(s)")).to_string(), "cosh(s)");
  EXPECT_EQ(differentiate(parse_expr("s^2")).to_string(), "2*s");
  EXPECT_TRUE(differentiate(parse_expr("3*pi")).is_number(0));
}

TEST(Differentiate, EveryFunctionAgainstFiniteDifference) {
  const char* cases[] = {"sin(s)",  "cos(s)",   "tan(s)",  "sinh(s)",  "cosh(s)",  "tanh(s)",  "exp(s)",  "ln(s)",
                         "sqrt(s)", "asin(s/2)", "acos(s/2)", "atan(s)", "asinh(s)", "acosh(s+1)", "atanh(s/2)",
                         "s^s",     "2^s",      "s^pi",    "1/(1+s^2)"};
  for (const char* c : cases) {
    const Expr e = parse_expr(c);
    const Expr d = differentiate(e);
    for (double s : {0.3, 0.7, 1.2}) {
      const double fd = central_fd(e, s);
      EXPECT_NEAR(d.eval(s), fd, 1e-6 * std::max(1.0, std::abs(fd))) << c << " at s=" << s;
    }
  }
}

TEST(Differentiate, RandomAgainstFiniteDifference) {
  Gen g(7);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const Expr e = random_expr(g, 4);
    const Expr d = differentiate(e);
    const double s = g.uniform(-2, 2);
    double fd;
    try {
      fd = central_fd(e, s);
    } catch (const Error&) {
      continue;
    }
    ++checked;
    EXPECT_NEAR(d.eval(s), fd, 1e-6 * std::max(1.0, std::abs(fd))) << e.to_string() << " at s=" << s;
  }
  EXPECT_GT(checked, 250);
}

TEST(Differentiate, SecondDerivativeConsistency) {
  Gen g(11);
  for (int i = 0; i < 100; ++i) {
    const Expr e = random_expr(g, 3);
    const Expr d2 = differentiate(differentiate(e));
    const Expr d2_again = differentiate(parse_expr(differentiate(e).to_string()));
    for (int k = 0; k < 5; ++k) {
      const double s = g.uniform(-2, 2);
      const double a = d2.eval(s), b = d2_again.eval(s);
      EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST(ExprPrint, RoundTrip) {
  Gen g(3);
  for (int i = 0; i < 200; ++i) {
    const Expr e = random_expr(g, 4);
    const Expr back = parse_expr(e.to_string());
    for (int k = 0; k < 100; ++k) {
      const double s = g.uniform(-3, 3);
      const double a = e.eval(s), b = back.eval(s);
      EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(a))) << e.to_string();
    }
  }
}

TEST(ParseCurve, Examples) {
  const CurveDef line = parse_curve("(0, 0, s)", {0, 1});
  EXPECT_EQ(line.eval(0, 0.5), (LVec3{0, 0, 0.5}));
  EXPECT_NO_THROW(parse_curve("(cosh(s), sinh(s), 0)", {0, 1}));
  EXPECT_THROW(parse_curve("(s, s)", {0, 1}), ParseError);
  EXPECT_THROW(parse_curve("(s, s, s, s)", {0, 1}), ParseError);
  EXPECT_THROW(parse_curve("s", {0, 1}), ParseError);
  EXPECT_THROW(parse_curve("(s, s, s)", {1, 1}), Error);
}

TEST(EvalCurve, Examples) {
  const CurveDef c = parse_curve("(cosh(s), sinh(s), 0)", {-2, 2});
  const LVec3 d1 = eval_curve(c, 1, 0);
  EXPECT_NEAR(d1.x1, 0, 1e-15);
  EXPECT_NEAR(d1.x2, 1, 1e-15);
  const LVec3 v = eval_curve(c, 0, 1);
  EXPECT_DOUBLE_EQ(v.x1, std::cosh(1.0));
  EXPECT_DOUBLE_EQ(v.x2, std::sinh(1.0));
  const CurveDef line = parse_curve("(0,0,s)", {0, 1});
  EXPECT_EQ(eval_curve(line, 2, 0.4), (LVec3{0, 0, 0}));
  EXPECT_THROW(eval_curve(line, 5, 0.4), Error);
  EXPECT_THROW(eval_curve(line, 0, 1.5), Error);
  EXPECT_THROW(eval_curve(parse_curve("(ln(s), 0, 0)", {-1, 1}), 0, -0.5), Error);
  // fourth derivative is available
  EXPECT_NEAR(eval_curve(c, 4, 0.5).x1, std::cosh(0.5), 1e-12);
}

TEST(Arclength, Examples) {
  EXPECT_NEAR(arclength(parse_curve("(0,0,s)", {0, 2}), 0, 2), 2.0, 1e-10);
  EXPECT_NEAR(arclength(parse_curve("(sinh(s),cosh(s),0)", {0, 1}), 0, 1), 1.0, 1e-10);
  EXPECT_NEAR(arclength(parse_curve("(0,2*s,0)", {0, 1}), 0, 1), 2.0, 1e-10);
  EXPECT_THROW(arclength(parse_curve("(s,s,0)", {0, 1}), 0, 1), Error);
}

TEST(Arclength, Additive) {
  const CurveDef c = parse_curve("(0.3*s, cos(s), 2*sin(s))", {-1, 3});
  Gen g(5);
  for (int i = 0; i < 20; ++i) {
    double a = g.uniform(-1, 3), b = g.uniform(-1, 3), e = g.uniform(-1, 3);
    EXPECT_NEAR(arclength(c, a, b) + arclength(c, b, e), arclength(c, a, e), 1e-9);
  }
}
