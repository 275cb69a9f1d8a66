#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsjet/constraints.hpp"
#include "nsjet/residuals.hpp"
#include "nsjet/tuples.hpp"

namespace nsjet {

// Either the symbol nu or a positive rational.
class Viscosity {
 public:
  static Viscosity symbolic() { return Viscosity(); }
  static Viscosity rational(const Rational& value);
  // "symbolic", "nu", or a positive rational such as "1/100".
  static Viscosity parse(const std::string& text);

  bool is_symbolic() const { return !value_; }
  Expr expr() const;
  std::string to_string() const;

 private:
  Viscosity() = default;
  std::optional<Rational> value_;
};

struct NsInstance {
  int dim = 3;
  Viscosity viscosity = Viscosity::symbolic();
  ReductionContext context{Setting::CPE, 3};

  Expr ce0;        // u^mu_(mu)
  Expr pe0;        // Laplacian p + u^l_(mu) u^mu_(l)
  Expr quadratic;  // u^l_(mu) u^mu_(l)
  Expr phi;        // reduced Phi of the context
  // E^mu = -u^l u^mu_(l) + nu Laplacian u^mu - p_(mu), unreduced.
  std::vector<Expr> evolution;
  // The conserved current F^mu; equal to E^mu with the -p_(mu) reading.
  CurrentTuple current;
};

NsInstance ns_build(int dim = 3, Viscosity viscosity = Viscosity::symbolic());

// Named checks:
//   div_E_cpe          sum of restricted CPE divergences of E, then CE-reduced
//   div_E_plus_PE_ce   reduce_ce(D_mu E^mu + PE_0)
//   current_identity   D_mu F^mu + PE_0 - (nu Laplacian - u^l D_l) CE_0, unreduced
//   div_F_cpe          reduce_cpe(D_mu F^mu)
//   poisson_E          reduce_cpe(Laplacian E + 2 u^l_(mu) D_l E^mu), informational
struct NsCheck {
  std::string name;
  Expr residual;
  bool informational = false;
};

struct NsReport {
  std::vector<NsCheck> checks;

  // True when every non-informational residual vanishes.
  bool passed() const;
};

NsReport ns_verify(const NsInstance& ns, const std::optional<Expr>& pressure_component = std::nullopt);

struct Prolongation {
  std::string name;
  Expr expression;
  Setting reduced_in;
  Expr reduced;
};

// D_t CE_0 = D_mu E^mu, the family D_(mu) CE_0, and PE_0, each with its
// reduction.
std::vector<Prolongation> ns_integrability_prolongations(const NsInstance& ns);

}  // namespace nsjet
