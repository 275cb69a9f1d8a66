#include "nsjet/evolutionary.hpp"

#include "nsjet/variational.hpp"

namespace nsjet {

Expr ev_apply(const ReductionContext& ctx, const Characteristic& f, const Expr& g) {
  if (f.dim() != ctx.dim()) throw DimensionError("characteristic dimension does not match the context");
  const Expr reduced = ctx.reduce(g);
  Expr r;
  for (const auto& v : variables(reduced)) {
    if (!v.is_jet()) continue;
    const int s = v.kind() == VarKind::U ? v.component() : kPressureSlot;
    r += partial_derivative(v, reduced) * ctx.derivative(v.index(), f.slot(s));
  }
  return ctx.reduce(r);
}

Expr commutator_with_D(const ReductionContext& ctx, int mu, const Characteristic& f, const Expr& g) {
  const Expr reduced = ctx.reduce(g);
  return ctx.derivative(mu, ev_apply(ctx, f, reduced)) - ev_apply(ctx, f, ctx.derivative(mu, reduced));
}

ResidualReport symmetry_residuals(const ReductionContext& ctx, const Characteristic& f) {
  if (f.dim() != ctx.dim()) throw DimensionError("characteristic dimension does not match the context");
  ResidualReport report;
  if (ctx.setting() == Setting::Free) return report;

  const int m = ctx.dim();
  Expr divergence;
  for (int mu = 1; mu <= m; ++mu) divergence += ctx.derivative(mu, f.slot(mu));
  report.entries.push_back({"divergence", ctx.reduce(divergence)});
  if (ctx.setting() == Setting::CE) return report;

  // Laplacian f + ev_f(u^l_(mu) u^mu_(l)), the linearized pressure equation.
  Expr poisson = ctx.laplacian(f.pressure);
  for (int l = 1; l <= m; ++l) {
    for (int mu = 1; mu <= m; ++mu) {
      poisson += Rational(2) * Expr(JetVariable::u(l, MultiIndex::unit(m, mu))) * ctx.derivative(l, f.slot(mu));
    }
  }
  report.entries.push_back({"poisson", ctx.reduce(poisson)});
  return report;
}

EvolutionField::EvolutionField(ReductionContext ctx, Characteristic components)
    : ctx_(std::move(ctx)), components_(std::move(components)) {
  if (components_.dim() != ctx_.dim()) throw DimensionError("evolution components do not match the context");
}

ResidualReport EvolutionField::admissibility() const {
  return symmetry_residuals(ReductionContext(Setting::CPE, ctx_.dim()), components_);
}

Expr evolution_derivative(const EvolutionField& e, const Expr& g) {
  return e.context().reduce(partial_derivative(JetVariable::t(), g)) + ev_apply(e.context(), e.components(), g);
}

Characteristic linearize_evolution(const EvolutionField& e, const Characteristic& f) {
  const ReductionContext& ctx = e.context();
  Cotuple reduced(ctx.dim());
  for (int s = 0; s <= ctx.dim(); ++s) reduced.slot(s) = ctx.reduce(e.components().slot(s));
  return retag<CharacteristicTag>(apply(ctx, frechet_linearization(reduced), f));
}

Characteristic time_symmetry_residual(const EvolutionField& e, const Characteristic& f) {
  const Characteristic linear = linearize_evolution(e, f);
  Characteristic out(e.context().dim());
  for (int s = 0; s <= out.dim(); ++s) {
    out.slot(s) = evolution_derivative(e, f.slot(s)) - linear.slot(s);
  }
  return out;
}

}  // namespace nsjet
