#include <gtest/gtest.h>

#include "support/print.hpp"
#include "nsjet/expr.hpp"
#include "support/random_expr.hpp"

using namespace nsjet;

namespace {

Expr u(int mu, MultiIndex i) { return JetVariable::u(mu, i); }
Expr p(MultiIndex i) { return JetVariable::p(i); }

}  // namespace

TEST(Expr, ZeroCoefficientsVanish) {
  Expr a = u(1, {0, 0, 0}) + p({1, 0, 0});
  a -= u(1, {0, 0, 0});
  EXPECT_EQ(a, p({1, 0, 0}));
  a -= p({1, 0, 0});
  EXPECT_TRUE(a.is_zero());
  EXPECT_TRUE(Expr(Rational(0)).is_zero());
}

TEST(Expr, ProductsCollectPowers) {
  const Expr x = u(2, {0, 0, 0});
  const Expr sq = (x + Rational(1)) * (x - Rational(1));
  EXPECT_EQ(sq, pow(x, 2) - Rational(1));
  EXPECT_EQ(pow(x, 3).terms().begin()->first.degree(), 3);
  EXPECT_EQ(pow(x, 0), Expr(1));
}

TEST(Expr, PartialDerivative) {
  const Expr x = u(1, {1, 0, 0});
  const Expr y = p({0, 0, 0});
  const Expr f = Rational(3) * pow(x, 2) * y + y;
  EXPECT_EQ(partial_derivative(JetVariable::u(1, {1, 0, 0}), f), Rational(6) * x * y);
  EXPECT_EQ(partial_derivative(JetVariable::p({0, 0, 0}), f), Rational(3) * pow(x, 2) + Rational(1));
  EXPECT_TRUE(partial_derivative(JetVariable::nu(), f).is_zero());
}

TEST(Expr, SubstitutionIsSinglePass) {
  const JetVariable a = JetVariable::u(1, {0, 0});
  const JetVariable b = JetVariable::u(2, {0, 0});
  // a -> b, b -> a swaps rather than collapsing.
  const Expr f = Expr(a) + Rational(2) * Expr(b);
  const Expr g = substitute(f, [&](const JetVariable& v) -> std::optional<Expr> {
    if (v == a) return Expr(b);
    if (v == b) return Expr(a);
    return std::nullopt;
  });
  EXPECT_EQ(g, Expr(b) + Rational(2) * Expr(a));
}

TEST(Expr, EvaluateReportsMissingVariable) {
  const Expr f = u(1, {0, 0}) * Expr(JetVariable::nu());
  Assignment point{{JetVariable::nu(), Rational(1, 2)}};
  try {
    (void)evaluate(point, f);
    FAIL() << "expected MissingVariableError";
  } catch (const MissingVariableError& e) {
    EXPECT_EQ(e.variable(), JetVariable::u(1, {0, 0}));
  }
  point[JetVariable::u(1, {0, 0})] = 4;
  EXPECT_EQ(evaluate(point, f), 2);
}

TEST(Expr, Orders) {
  const Expr f = u(1, {2, 1, 0}) * p({0, 1, 0}) + Expr(JetVariable::x(1));
  const auto o = orders(f);
  EXPECT_EQ(o.u, 3);
  EXPECT_EQ(o.p, 1);
  EXPECT_FALSE(orders(Expr(JetVariable::t())).u.has_value());
}

TEST(Expr, RingLawsOnRandomInputs) {
  testkit::RandomExprGenerator gen(11, {.dim = 3, .max_u_order = 2, .max_p_order = 1, .with_x = true});
  for (int k = 0; k < 40; ++k) {
    const Expr a = gen.expr();
    const Expr b = gen.expr();
    const Expr c = gen.expr();
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a - a, Expr());
  }
}

TEST(Expr, PartialDerivativeIsADerivation) {
  testkit::RandomExprGenerator gen(12, {.dim = 2, .max_u_order = 1, .max_p_order = 1});
  const JetVariable v = JetVariable::u(2, {1, 0});
  for (int k = 0; k < 40; ++k) {
    const Expr a = gen.expr();
    const Expr b = gen.expr();
    EXPECT_EQ(partial_derivative(v, a * b), partial_derivative(v, a) * b + a * partial_derivative(v, b));
  }
}
