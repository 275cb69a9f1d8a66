#include <gtest/gtest.h>

#include "support/print.hpp"
#include "nsjet/exprio.hpp"
#include "nsjet/reduced_complex.hpp"
#include "support/random_expr.hpp"

using namespace nsjet;

namespace {

Expr u(int mu, MultiIndex i) { return JetVariable::u(mu, i); }
Expr x(int mu) { return JetVariable::x(mu); }

ChiTuple constant_chi01(Setting s, int m, Rational c = 1) {
  ChiTuple chi(s, m);
  chi.set_chi01(c);
  return chi;
}

ChiTuple random_chi(testkit::RandomExprGenerator& gen, Setting s, int m) {
  const ReductionContext ctx(s, m);
  ChiTuple chi(s, m);
  chi.set_chi01(ctx.reduce(gen.expr()));
  for (int a = 2; a <= m; ++a) {
    chi.set_alpha(0, a, ctx.reduce(gen.expr()));
    chi.set_alpha(1, a, ctx.reduce(gen.expr()));
  }
  chi.set_pressure(0, ctx.reduce(gen.expr()));
  chi.set_pressure(1, ctx.reduce(gen.expr()));
  return chi;
}

}  // namespace

TEST(ChiTuple, ComponentValidation) {
  ChiTuple cpe(Setting::CPE, 3);
  EXPECT_THROW(cpe.set_alpha(0, 1, Expr(1)), DimensionError);
  EXPECT_THROW(cpe.set_alpha(0, 4, Expr(1)), DimensionError);
  EXPECT_THROW(cpe.set_pressure(2, Expr(1)), std::invalid_argument);
  EXPECT_THROW(ChiTuple(Setting::Free, 3), std::invalid_argument);
  ChiTuple ce(Setting::CE, 3);
  ce.set_pressure(5, Expr(1));
  EXPECT_EQ(ce.components().size(), 1u);
  ce.set_pressure(5, Expr());
  EXPECT_TRUE(ce.is_zero());
}

TEST(FstarCe, Examples) {
  EXPECT_TRUE(fstar_ce(constant_chi01(Setting::CE, 3)).is_zero());

  ChiTuple chi(Setting::CE, 3);
  chi.set_chi01(x(2));
  ChiTuple expected(Setting::CE, 3);
  expected.set_alpha(0, 2, Expr(1));
  EXPECT_EQ(fstar_ce(chi), expected);

  ChiTuple shifted(Setting::CE, 3);
  shifted.set_alpha(0, 3, Expr(Rational(5)));
  shifted.set_pressure(2, x(1));
  ChiTuple image(Setting::CE, 3);
  image.set_alpha(1, 3, Expr(Rational(5)));
  image.set_pressure(3, x(1));
  EXPECT_EQ(fstar_ce(shifted), image);
}

TEST(FstarCpe, Examples) {
  EXPECT_TRUE(fstar_cpe(constant_chi01(Setting::CPE, 3)).is_zero());
  EXPECT_TRUE(dtilde1(constant_chi01(Setting::CPE, 3)).is_zero());

  ChiTuple chi1(Setting::CPE, 3);
  chi1.set_pressure(1, Expr(1));
  ChiTuple expected(Setting::CPE, 3);
  expected.set_chi01(Rational(2) * (u(2, {1, 1, 0}) + u(3, {1, 0, 1})));
  expected.set_alpha(0, 2, Rational(4) * (u(2, {0, 2, 0}) + u(3, {0, 1, 1})));
  expected.set_alpha(0, 3, Rational(4) * (u(2, {0, 1, 1}) + u(3, {0, 0, 2})));
  expected.set_alpha(1, 2, Rational(-2) * u(1, {0, 1, 0}));
  expected.set_alpha(1, 3, Rational(-2) * u(1, {0, 0, 1}));
  EXPECT_EQ(fstar_cpe(chi1), expected);

  ChiTuple chi0(Setting::CPE, 3);
  chi0.set_pressure(0, Expr(Rational(-7, 2)));
  ChiTuple moved(Setting::CPE, 3);
  moved.set_pressure(1, Expr(Rational(-7, 2)));
  EXPECT_EQ(fstar_cpe(chi0), moved);
}

TEST(Fstar, IsLinear) {
  for (Setting s : {Setting::CE, Setting::CPE}) {
    testkit::RandomExprGenerator gen(81, {.dim = 3, .max_u_order = 1, .max_p_order = 1, .max_terms = 3, .with_x = true});
    auto fstar = [s](const ChiTuple& c) { return s == Setting::CE ? fstar_ce(c) : fstar_cpe(c); };
    for (int k = 0; k < 8; ++k) {
      const ChiTuple a = random_chi(gen, s, 3);
      const ChiTuple b = random_chi(gen, s, 3);
      ChiTuple combo = a;
      combo *= Rational(3, 2);
      ChiTuple bb = b;
      bb *= Rational(-4);
      combo += bb;
      ChiTuple expected = fstar(a);
      expected *= Rational(3, 2);
      ChiTuple fb = fstar(b);
      fb *= Rational(-4);
      expected += fb;
      EXPECT_EQ(fstar(combo), expected);
    }
  }
}

TEST(Dtilde1, CeExamples) {
  EXPECT_TRUE(dtilde1(constant_chi01(Setting::CE, 3)).is_zero());
  ChiTuple chi(Setting::CE, 3);
  chi.set_chi01(x(1));
  EXPECT_EQ(dtilde1(chi), constant_chi01(Setting::CE, 3));
}

TEST(Dtilde1, CommutesWithThetaVariationalDerivative) {
  for (Setting s : {Setting::CE, Setting::CPE}) {
    const ReductionContext ctx(s, 3);
    testkit::RandomExprGenerator gen(82, {.dim = 3, .max_u_order = 1, .max_p_order = 1, .max_terms = 3, .with_x = true});
    for (int k = 0; k < 10; ++k) {
      const Expr l = ctx.reduce(gen.expr());
      EXPECT_EQ(theta_variational_derivative(s, 3, ctx.derivative(1, l)), dtilde1(theta_variational_derivative(s, 3, l)))
          << print_expr(l);
    }
  }
}

TEST(ThetaVariationalDerivative, Example) {
  const Expr l = Rational(1, 2) * pow(u(1, {0, 1, 0}), 2) + u(2, {1, 0, 0}) * u(2, {1, 0, 1});
  const ChiTuple d = theta_variational_derivative(Setting::CE, 3, l);
  EXPECT_EQ(d.chi01(), -u(1, {0, 2, 0}));
  // u^2_(1) u^2_(1)+(3): the (0,0,1) shift integrates by parts to zero.
  EXPECT_TRUE(d.alpha(1, 2).is_zero());
  EXPECT_TRUE(d.alpha(0, 2).is_zero());
}

TEST(Lemma2Residuals, Examples) {
  for (Rational c : {Rational(1), Rational(-3, 7)}) {
    EXPECT_TRUE(lemma2_residuals(constant_chi01(Setting::CPE, 3, c)).passed());
  }

  const ReductionContext cpe(Setting::CPE, 3);
  const Expr u1 = u(1, {0, 0, 0});
  ChiTuple chi(Setting::CPE, 3);
  chi.set_pressure(1, u1);
  chi.set_pressure(0, -cpe.derivative(1, u1));
  for (int a = 2; a <= 3; ++a) chi.set_alpha(0, a, Rational(2) * u(1, MultiIndex::unit(3, a)) * u1);
  const auto r = lemma2_residuals(chi);
  EXPECT_TRUE(r.find("chi0")->is_zero());
  EXPECT_TRUE(r.find("chi0_alpha[2]")->is_zero());
  EXPECT_EQ(*r.find("laplacian_chi1"), cpe.reduce(laplacian(3, u1)));
  EXPECT_FALSE(r.find("laplacian_chi1")->is_zero());

  ChiTuple wrong(Setting::CPE, 3);
  wrong.set_pressure(0, x(2));
  wrong.set_pressure(1, x(1) * x(2));
  EXPECT_EQ(*lemma2_residuals(wrong).find("chi0"), x(2) + x(2));

  ChiTuple tail(Setting::CPE, 3);
  tail.set_alpha(2, 3, x(3));
  EXPECT_EQ(*lemma2_residuals(tail).find("chi_alpha[3,2]"), x(3));
  EXPECT_THROW(lemma2_residuals(ChiTuple(Setting::CE, 3)), std::invalid_argument);
}

TEST(KernelSearch, CeConstants) {
  const auto basis = kernel_search(Setting::CE, 3, {});
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], constant_chi01(Setting::CE, 3));
}

TEST(KernelSearch, CeFirstOrderIsOneDimensional) {
  const auto basis = kernel_search(Setting::CE, 2, {.max_order = 1, .max_degree = 1, .max_x_degree = 1});
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], constant_chi01(Setting::CE, 2));
}

TEST(KernelSearch, CpeConstants) {
  const auto basis = kernel_search(Setting::CPE, 3, {});
  ASSERT_EQ(basis.size(), 1u);
  EXPECT_EQ(basis[0], constant_chi01(Setting::CPE, 3));
}

TEST(KernelSearch, CapIsCheckedFirst) {
  AnsatzSpec a;
  a.max_unknowns = 0;
  EXPECT_THROW(kernel_search(Setting::CE, 3, a), AnsatzTooLarge);
  a.max_unknowns = ansatz_unknowns(Setting::CPE, 3, a) - 1;
  try {
    kernel_search(Setting::CPE, 3, a);
    FAIL() << "expected AnsatzTooLarge";
  } catch (const AnsatzTooLarge& e) {
    EXPECT_EQ(e.required(), a.max_unknowns + 1);
  }
}

TEST(KernelSearch, AnsatzSize) {
  // CPE, m = 3, order <= 1: u^mu, p, eight u^mu_(nu), three p_(nu).
  const AnsatzSpec a{.max_order = 1, .max_degree = 1};
  EXPECT_EQ(ansatz_monomials(Setting::CPE, 3, a).size(), 16u);
  EXPECT_EQ(ansatz_components(Setting::CPE, 3, a).size(), 7u);
  EXPECT_EQ(ansatz_unknowns(Setting::CPE, 3, a), 112);
  const AnsatzSpec xt{.max_x_degree = 2, .include_t = true};
  EXPECT_EQ(ansatz_monomials(Setting::CE, 2, xt).size(), 12u);
}

TEST(KernelSearch, AgreesWithReducedSystemOnCpe) {
  const AnsatzSpec a{.max_order = 1, .max_degree = 1};
  const auto kernel = kernel_search(Setting::CPE, 3, a);
  const auto solutions = lemma2_solutions(3, a);
  EXPECT_EQ(kernel.size(), solutions.size());
  for (const auto& chi : kernel) EXPECT_TRUE(lemma2_residuals(chi).passed());
  for (const auto& chi : solutions) EXPECT_TRUE(dtilde1(chi).is_zero());
}
