#pragma once

#include "nsjet/constraints.hpp"
#include "nsjet/residuals.hpp"
#include "nsjet/tuples.hpp"

namespace nsjet {

// ev_f g = sum_v (dg/dv) D_{index v} f^{component v}, with the derivatives of
// ctx. g is reduced into ctx coordinates first; the result is reduced too.
Expr ev_apply(const ReductionContext& ctx, const Characteristic& f, const Expr& g);

// D_mu(ev_f g) - ev_f(D_mu g)
Expr commutator_with_D(const ReductionContext& ctx, int mu, const Characteristic& f, const Expr& g);

// Determining equations of ctx. Free: no residuals. CE: "divergence".
// CPE: "divergence" and "poisson".
ResidualReport symmetry_residuals(const ReductionContext& ctx, const Characteristic& f);

// The evolution D_t = d/dt + ev_E over a constraint setting.
class EvolutionField {
 public:
  EvolutionField(ReductionContext ctx, Characteristic components);

  const ReductionContext& context() const { return ctx_; }
  const Characteristic& components() const { return components_; }

  // The CPE determining equations for E itself.
  ResidualReport admissibility() const;

 private:
  ReductionContext ctx_;
  Characteristic components_;
};

Expr evolution_derivative(const EvolutionField& e, const Expr& g);

// E_* f, computed from the coefficient family of E.
Characteristic linearize_evolution(const EvolutionField& e, const Characteristic& f);

// D_t f - E_* f, componentwise.
Characteristic time_symmetry_residual(const EvolutionField& e, const Characteristic& f);

}  // namespace nsjet
