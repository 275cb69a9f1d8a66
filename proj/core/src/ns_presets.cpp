#include "nsjet/ns_presets.hpp"

#include <stdexcept>

namespace nsjet {

Viscosity Viscosity::rational(const Rational& value) {
  if (sgn(value) <= 0) throw std::invalid_argument("viscosity must be positive, got " + value.get_str());
  Viscosity v;
  v.value_ = value;
  return v;
}

Viscosity Viscosity::parse(const std::string& text) {
  if (text == "symbolic" || text == "nu") return symbolic();
  Rational q;
  const bool ok = !text.empty() && text.find_first_not_of("+-0123456789/") == std::string::npos &&
                  q.set_str(text, 10) == 0 && sgn(q.get_den()) != 0;
  if (!ok) throw std::invalid_argument("viscosity must be 'symbolic' or a rational, got '" + text + "'");
  q.canonicalize();
  return rational(q);
}

Expr Viscosity::expr() const { return value_ ? Expr(*value_) : Expr(JetVariable::nu()); }

std::string Viscosity::to_string() const { return value_ ? value_->get_str() : "symbolic"; }

NsInstance ns_build(int dim, Viscosity viscosity) {
  validate_dimension(dim);
  NsInstance ns;
  ns.dim = dim;
  ns.viscosity = viscosity;
  ns.context = ReductionContext(Setting::CPE, dim);

  const ConstraintGenerators gen(dim);
  const MultiIndex zero(dim);
  ns.ce0 = gen.ce(zero);
  ns.pe0 = gen.pe(zero);
  ns.quadratic = gen.quadratic();
  ns.phi = ns.context.phi();

  const Expr nu = viscosity.expr();
  for (int mu = 1; mu <= dim; ++mu) {
    Expr e = nu * laplacian(dim, JetVariable::u(mu, zero)) - Expr(JetVariable::p(MultiIndex::unit(dim, mu)));
    for (int l = 1; l <= dim; ++l) {
      e -= Expr(JetVariable::u(l, zero)) * Expr(JetVariable::u(mu, MultiIndex::unit(dim, l)));
    }
    ns.evolution.push_back(e);
  }
  ns.current.components = ns.evolution;
  return ns;
}

bool NsReport::passed() const {
  for (const auto& c : checks) {
    if (!c.informational && !c.residual.is_zero()) return false;
  }
  return true;
}

namespace {

Expr free_divergence(const std::vector<Expr>& components) {
  Expr r;
  for (std::size_t mu = 0; mu < components.size(); ++mu) {
    r += total_derivative(static_cast<int>(mu) + 1, components[mu]);
  }
  return r;
}

}  // namespace

NsReport ns_verify(const NsInstance& ns, const std::optional<Expr>& pressure_component) {
  const int m = ns.dim;
  const ReductionContext& cpe = ns.context;
  NsReport report;

  Expr restricted;
  for (int mu = 1; mu <= m; ++mu) restricted += cpe.derivative(mu, ns.evolution[mu - 1]);
  report.checks.push_back({"div_E_cpe", reduce_ce(m, restricted)});

  const Expr div_e = free_divergence(ns.evolution);
  report.checks.push_back({"div_E_plus_PE_ce", reduce_ce(m, div_e + ns.pe0)});

  const Expr div_f = free_divergence(ns.current.components);
  Expr transport = ns.viscosity.expr() * laplacian(m, ns.ce0);
  for (int l = 1; l <= m; ++l) {
    transport -= Expr(JetVariable::u(l, MultiIndex(m))) * total_derivative(l, ns.ce0);
  }
  report.checks.push_back({"current_identity", div_f + ns.pe0 - transport});
  report.checks.push_back({"div_F_cpe", cpe.reduce(div_f)});

  const Expr e = pressure_component.value_or(Expr());
  Expr poisson = cpe.laplacian(e);
  for (int l = 1; l <= m; ++l) {
    for (int mu = 1; mu <= m; ++mu) {
      poisson += Rational(2) * Expr(JetVariable::u(l, MultiIndex::unit(m, mu))) *
                 cpe.derivative(l, ns.evolution[mu - 1]);
    }
  }
  report.checks.push_back({"poisson_E", cpe.reduce(poisson), true});
  return report;
}

std::vector<Prolongation> ns_integrability_prolongations(const NsInstance& ns) {
  const int m = ns.dim;
  std::vector<Prolongation> out;
  const Expr div_e = free_divergence(ns.evolution);
  out.push_back({"D_t CE_0", div_e, Setting::CPE, ns.context.reduce(div_e)});
  for (int mu = 1; mu <= m; ++mu) {
    const Expr d = total_derivative(mu, ns.ce0);
    out.push_back({"D_(" + std::to_string(mu) + ") CE_0", d, Setting::CE, reduce_ce(m, d)});
  }
  out.push_back({"PE_0", ns.pe0, Setting::CPE, ns.context.reduce(ns.pe0)});
  return out;
}

}  // namespace nsjet
