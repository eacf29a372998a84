#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "cpc/errors.hpp"
#include "cpc/expr.hpp"
#include "cpc/jet.hpp"
#include "oracles.hpp"
#include "random_expr.hpp"

using namespace cpc;

namespace {

std::span<const double> span_of(const std::vector<double>& v) { return {v.data(), v.size()}; }

template <typename T>
const T& as(const Expr& e) {
  return std::get<T>(e.node().data);
}

}  // namespace

TEST(Parse, Atom) {
  const Expr e = parse("x0", 2);
  EXPECT_EQ(as<VariableNode>(e).index, 0);
}

TEST(Parse, StructureOfSumOfProduct) {
  const Expr e = parse("sin(x0)*x1 + 2", 2);
  const auto& add = as<BinaryNode>(e);
  EXPECT_EQ(add.op, BinaryOp::kAdd);
  const auto& mul = std::get<BinaryNode>(add.lhs->data);
  EXPECT_EQ(mul.op, BinaryOp::kMul);
  const auto& sin = std::get<UnaryNode>(mul.lhs->data);
  EXPECT_EQ(sin.op, UnaryOp::kSin);
  EXPECT_EQ(std::get<VariableNode>(sin.arg->data).index, 0);
  EXPECT_EQ(std::get<VariableNode>(mul.rhs->data).index, 1);
  EXPECT_DOUBLE_EQ(std::get<ConstantNode>(add.rhs->data).value, 2.0);
}

TEST(Parse, TruncatedInputReportsOffset) {
  try {
    parse("x0 ^", 1);
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
}

TEST(Parse, Precedence) {
  // pow binds tighter than unary minus, which binds tighter than mul.
  const std::vector<double> x{3.0};
  EXPECT_DOUBLE_EQ(evaluate(parse("-x0^2", 1), span_of(x)), -9.0);
  EXPECT_DOUBLE_EQ(evaluate(parse("2*x0^2 - 1", 1), span_of(x)), 17.0);
  EXPECT_DOUBLE_EQ(evaluate(parse("2^3^2", 1), span_of(x)), 512.0);
  EXPECT_DOUBLE_EQ(evaluate(parse("12/x0/2", 1), span_of(x)), 2.0);
}

TEST(Parse, BuiltinConstants) {
  const std::vector<double> x{0.0};
  EXPECT_DOUBLE_EQ(evaluate(parse("pi", 1), span_of(x)), M_PI);
  EXPECT_DOUBLE_EQ(evaluate(parse("e", 1), span_of(x)), M_E);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse("", 1), SyntaxError);
  EXPECT_THROW(parse("x0 +", 1), SyntaxError);
  EXPECT_THROW(parse("(x0", 1), SyntaxError);
  EXPECT_THROW(parse("x0 x0", 1), SyntaxError);
  EXPECT_THROW(parse("tan(x0)", 1), UnknownSymbol);
  EXPECT_THROW(parse("y", 1), UnknownSymbol);
  EXPECT_THROW(parse("x2", 2), IndexOutOfRange);
  // Exponents must be constant.
  EXPECT_THROW(parse("x0^x1", 2), SyntaxError);
  EXPECT_THROW(parse("x0^(1/0)", 1), SyntaxError);
}

TEST(Parse, UnknownSymbolCarriesPosition) {
  try {
    parse("x0 + foo", 1);
    FAIL();
  } catch (const UnknownSymbol& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_EQ(e.symbol(), "foo");
  }
}

TEST(Jet, Polynomial) {
  const std::vector<double> x{3.0};
  const Jet2 j = eval_jet2(parse("x0^2", 1), span_of(x));
  EXPECT_DOUBLE_EQ(j.value, 9.0);
  EXPECT_DOUBLE_EQ(j.grad(0), 6.0);
  EXPECT_DOUBLE_EQ(j.hess(0, 0), 2.0);
}

TEST(Jet, Sine) {
  const std::vector<double> x{0.0};
  const Jet2 j = eval_jet2(parse("sin(x0)", 1), span_of(x));
  EXPECT_DOUBLE_EQ(j.value, 0.0);
  EXPECT_DOUBLE_EQ(j.grad(0), 1.0);
  EXPECT_DOUBLE_EQ(j.hess(0, 0), 0.0);
}

TEST(Jet, ExpProductAgainstFiniteDifferences) {
  const Expr e = parse("exp(x0*x1)", 2);
  const Vector x{{0.3, -0.7}};
  const Jet2 j = eval_jet2(e, {x.data(), 2});
  const Vector g = oracle::fd_gradient(e, x, 1e-4);
  const Matrix h = oracle::fd_hessian(e, x, 1e-4);
  EXPECT_LT((j.grad - g).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT((j.hess - h).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Jet, DomainErrorsNameSubexpression) {
  const std::vector<double> neg{-1.0};
  const std::vector<double> zero{0.0};
  try {
    eval_jet2(parse("1 + log(x0)", 1), span_of(neg));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(e.subexpression().find("log"), std::string::npos);
  }
  EXPECT_THROW(eval_jet2(parse("sqrt(x0)", 1), span_of(neg)), DomainError);
  EXPECT_THROW(eval_jet2(parse("1/x0", 1), span_of(zero)), DomainError);
  EXPECT_THROW(evaluate(parse("1/x0", 1), span_of(zero)), DomainError);
}

TEST(Jet, NegativeAndFractionalPowers) {
  const Expr e = parse("x0^(-2) + x0^0.5", 1);
  const Vector x{{1.7}};
  const Jet2 j = eval_jet2(e, {x.data(), 1});
  EXPECT_NEAR(j.value, std::pow(1.7, -2) + std::sqrt(1.7), 1e-15);
  EXPECT_NEAR(j.grad(0), -2 * std::pow(1.7, -3) + 0.5 / std::sqrt(1.7), 1e-14);
  EXPECT_NEAR(j.hess(0, 0), 6 * std::pow(1.7, -4) - 0.25 * std::pow(1.7, -1.5), 1e-14);
}

TEST(Print, RoundTripExamples) {
  for (const char* text : {"-x0^2", "(-2)^2", "-2", "x0 - (x1 - 3)", "sin(x0)*cos(x1)/(1 + x0^2)", "-(x0)", "1e-3*x1",
                           "2^3^2", "x0^(-1.5)"}) {
    const Expr e = parse(text, 2);
    const Expr back = parse(e.to_string(), 2);
    EXPECT_TRUE(structurally_equal(e, back)) << text << " -> " << e.to_string();
  }
}

TEST(Print, ValuesSurviveRoundTrip) {
  const Expr e = parse("0.1 + 1/3*x0", 1);
  const Expr back = parse(e.to_string(), 1);
  const std::vector<double> x{0.77};
  EXPECT_EQ(evaluate(e, span_of(x)), evaluate(back, span_of(x)));
}

TEST(Builders, SparseHelpersSkipTrivialConstants) {
  const Expr x = Expr::variable(0);
  EXPECT_TRUE(structurally_equal(sum_of(Expr::constant(0.0), x), x));
  EXPECT_TRUE(structurally_equal(product_of(Expr::constant(1.0), x), x));
  EXPECT_TRUE(product_of(Expr::constant(0.0), x).is_constant());
  EXPECT_EQ(parse("x0*x2", 3).max_variable_index(), 2);
  EXPECT_EQ(parse("pi", 3).max_variable_index(), -1);
}

// ---- properties --------------------------------------------------------------

TEST(ExprProperty, JetsMatchFiniteDifferences) {
  oracle::RandomExprText gen(7, 3);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const std::string text = gen.next();
    const Expr e = parse(text, 3);
    const Vector x{{u(rng), u(rng), u(rng)}};
    const Jet2 j = eval_jet2(e, {x.data(), 3});
    const Vector g = oracle::fd_gradient(e, x);
    const Matrix h = oracle::fd_hessian(e, x);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(j.grad(i), g(i), 1e-6 * std::abs(g(i)) + 1e-8) << text;
      for (int l = 0; l < 3; ++l) EXPECT_NEAR(j.hess(i, l), h(i, l), 1e-6 * std::abs(h(i, l)) + 1e-6) << text;
    }
  }
}

TEST(ExprProperty, PrintParseRoundTrip) {
  oracle::RandomExprText gen(21, 4);
  for (int k = 0; k < 300; ++k) {
    const Expr e = parse(gen.next(5), 4);
    EXPECT_TRUE(structurally_equal(e, parse(e.to_string(), 4))) << e.to_string();
  }
}

TEST(ExprProperty, HessianExactlySymmetric) {
  oracle::RandomExprText gen(5, 3);
  const Vector x{{0.2, -0.4, 0.9}};
  for (int k = 0; k < 200; ++k) {
    const Jet2 j = eval_jet2(parse(gen.next(), 3), {x.data(), 3});
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) EXPECT_EQ(j.hess(a, b), j.hess(b, a));
  }
}
