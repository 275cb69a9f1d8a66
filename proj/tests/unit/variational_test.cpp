#include <gtest/gtest.h>

#include "support/print.hpp"
#include "nsjet/evolutionary.hpp"
#include "nsjet/ns_presets.hpp"
#include "nsjet/variational.hpp"
#include "support/random_expr.hpp"

using namespace nsjet;

namespace {

Expr u(int mu, MultiIndex i) { return JetVariable::u(mu, i); }
Expr p(MultiIndex i) { return JetVariable::p(i); }

// sum over |i| <= max_order of (-1)^|i| D_i d L / d p_i, enumerating every index.
Expr brute_force_pressure_euler(int m, const Expr& lagrangian, int max_order) {
  Expr r;
  for (int order = 0; order <= max_order; ++order) {
    for (const auto& i : indices_of_order(m, order)) {
      const Expr term = total_derivative(i, partial_derivative(JetVariable::p(i), lagrangian));
      r += order % 2 == 0 ? term : -term;
    }
  }
  return r;
}

Cotuple cotuple_of(int m, std::initializer_list<std::pair<int, Expr>> entries) {
  Cotuple c(m);
  for (const auto& [s, e] : entries) c.slot(s) = e;
  return c;
}

}  // namespace

TEST(EulerOperator, TotalDivergenceHasNoEulerExpression) {
  const Expr l = u(1, {0, 0, 0}) * u(1, {1, 0, 0});
  EXPECT_TRUE(euler_operator(3, l).is_zero());
}

TEST(EulerOperator, DirichletEnergyOfPressure) {
  Expr l;
  for (int mu = 1; mu <= 3; ++mu) l += Rational(1, 2) * pow(p(MultiIndex::unit(3, mu)), 2);
  const Cotuple e = euler_operator(3, l);
  EXPECT_EQ(e.pressure, -laplacian(3, p(MultiIndex(3))));
  EXPECT_EQ(e.pressure, brute_force_pressure_euler(3, l, 2));
}

TEST(EulerOperator, PressureTimesDivergence) {
  Expr l;
  for (int mu = 1; mu <= 3; ++mu) l += p(MultiIndex(3)) * u(mu, MultiIndex::unit(3, mu));
  const Cotuple e = euler_operator(3, l);
  for (int mu = 1; mu <= 3; ++mu) EXPECT_EQ(e.slot(mu), -p(MultiIndex::unit(3, mu)));
  EXPECT_EQ(e.pressure, ConstraintGenerators(3).ce(MultiIndex(3)));
}

TEST(EulerOperator, BruteForceAgreesOnRandomLagrangians) {
  testkit::RandomExprGenerator gen(51, {.dim = 2, .max_u_order = 2, .max_p_order = 2, .with_x = true});
  for (int k = 0; k < 20; ++k) {
    const Expr l = gen.expr();
    EXPECT_EQ(euler_operator(2, l).pressure, brute_force_pressure_euler(2, l, 2));
  }
}

TEST(EulerOperator, AnnihilatesDivergences) {
  testkit::RandomExprGenerator gen(52, {.dim = 3, .max_u_order = 2, .max_p_order = 2, .max_terms = 3});
  for (int k = 0; k < 15; ++k) {
    Expr div;
    for (int mu = 1; mu <= 3; ++mu) div += total_derivative(mu, gen.expr());
    EXPECT_TRUE(euler_operator(3, div).is_zero());
  }
}

TEST(FrechetLinearization, IdentityAndSingleDerivative) {
  const int m = 3;
  Cotuple id(m);
  for (int mu = 1; mu <= m; ++mu) id.slot(mu) = u(mu, MultiIndex(m));
  const auto lin = frechet_linearization(id);
  EXPECT_EQ(lin.entries().size(), 3u);
  for (int mu = 1; mu <= m; ++mu) EXPECT_EQ(lin.coefficient(mu, mu, MultiIndex(m)), Expr(1));
  EXPECT_EQ(formal_adjoint(id), lin);

  const auto d1 = frechet_linearization(cotuple_of(m, {{1, u(1, {1, 0, 0})}}));
  EXPECT_EQ(d1.entries().size(), 1u);
  EXPECT_EQ(d1.coefficient(1, 1, {1, 0, 0}), Expr(1));
  const auto adj = formal_adjoint(cotuple_of(m, {{1, u(1, {1, 0, 0})}}));
  EXPECT_EQ(adj.entries().size(), 1u);
  EXPECT_EQ(adj.coefficient(1, 1, {1, 0, 0}), Expr(-1));
}

TEST(FrechetLinearization, ReproducesEvolutionaryDerivative) {
  const int m = 3;
  Expr l;
  for (int mu = 1; mu <= m; ++mu) l += p(MultiIndex(m)) * u(mu, MultiIndex::unit(m, mu));
  const Cotuple chi = euler_operator(m, l);
  const ReductionContext free(Setting::Free, m);
  testkit::RandomExprGenerator gen(53, {.dim = 3, .max_u_order = 1, .max_p_order = 1, .with_x = true});
  for (int k = 0; k < 10; ++k) {
    Characteristic f(m);
    for (int s = 0; s <= m; ++s) f.slot(s) = gen.expr();
    const Cotuple applied = apply(free, frechet_linearization(chi), f);
    for (int s = 0; s <= m; ++s) EXPECT_EQ(applied.slot(s), ev_apply(free, f, chi.slot(s)));
  }
}

TEST(FormalAdjoint, IsAnInvolution) {
  testkit::RandomExprGenerator gen(54, {.dim = 3, .max_u_order = 2, .max_p_order = 2, .max_terms = 3, .with_x = true});
  for (int k = 0; k < 15; ++k) {
    Cotuple chi(3);
    for (int s = 0; s <= 3; ++s) chi.slot(s) = gen.expr();
    const auto lin = frechet_linearization(chi);
    EXPECT_EQ(adjoint(adjoint(lin)), lin);
  }
}

TEST(Helmholtz, VariationalCotuplesPass) {
  testkit::RandomExprGenerator gen(55, {.dim = 3, .max_u_order = 2, .max_p_order = 2, .max_terms = 3, .with_x = true});
  for (int k = 0; k < 15; ++k) EXPECT_TRUE(helmholtz_residual(euler_operator(3, gen.expr())).is_zero());
}

TEST(Helmholtz, NonVariationalCotuple) {
  const auto r = helmholtz_residual(cotuple_of(3, {{1, u(1, {1, 0, 0})}}));
  EXPECT_EQ(r.entries().size(), 1u);
  EXPECT_EQ(r.coefficient(1, 1, {1, 0, 0}), Expr(2));
}

TEST(Helmholtz, PressureMultiplicationIsSymmetric) {
  EXPECT_TRUE(helmholtz_residual(cotuple_of(3, {{kPressureSlot, p(MultiIndex(3))}})).is_zero());
}

TEST(CurrentDivergence, VelocityIsConservedOnCe) {
  CurrentTuple j;
  for (int mu = 1; mu <= 3; ++mu) j.components.push_back(u(mu, MultiIndex(3)));
  EXPECT_TRUE(current_divergence(ReductionContext(Setting::CE, 3), j).is_zero());
  EXPECT_FALSE(current_divergence(ReductionContext(Setting::Free, 3), j).is_zero());
}

TEST(CurrentDivergence, EvolutionCurrentIsConservedOnCpe) {
  const NsInstance ns = ns_build(3);
  EXPECT_TRUE(current_divergence(ns.context, ns.current).is_zero());
}

TEST(CurrentDivergence, NonConservedCurrent) {
  CurrentTuple j{{pow(u(1, MultiIndex(3)), 2), Expr(), Expr()}};
  // 2 u^1 u^1_(1), with u^1_(1) eliminated.
  const Expr expected = Rational(-2) * u(1, MultiIndex(3)) * (u(2, {0, 1, 0}) + u(3, {0, 0, 1}));
  EXPECT_EQ(current_divergence(ReductionContext(Setting::CPE, 3), j), expected);
}

TEST(VariationalDerivative, RestrictedDirections) {
  // Along directions 2..m only the u^2_(0,j) family contributes.
  const Expr l = u(2, {0, 1, 0}) * u(2, {1, 0, 0}) + pow(u(2, {0, 0, 1}), 2);
  const Expr base = variational_derivative(l, JetVariable::u(2, MultiIndex(3)), 2);
  EXPECT_EQ(base, -u(2, {1, 1, 0}) - Rational(2) * u(2, {0, 0, 2}));
  EXPECT_THROW(variational_derivative(l, JetVariable::x(1)), std::invalid_argument);
}
