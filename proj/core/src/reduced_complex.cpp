#include "nsjet/reduced_complex.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "nsjet/linsolve.hpp"
#include "nsjet/variational.hpp"

namespace nsjet {

namespace {

void require_reduced_setting(Setting s) {
  if (s == Setting::Free) throw std::invalid_argument("chi tuples live in the ce or cpe setting");
}

Expr u(int mu, const MultiIndex& i) { return JetVariable::u(mu, i); }

}  // namespace

// ---------------------------------------------------------------------------
// ChiTuple

ChiTuple::ChiTuple(Setting setting, int dim) : setting_(setting), dim_(dim) {
  require_reduced_setting(setting);
  validate_dimension(dim);
}

void ChiTuple::check(const Component& c) const {
  if (c.shift < 0) throw std::invalid_argument("negative shift in chi tuple");
  switch (c.kind) {
    case Component::Kind::Chi01:
      return;
    case Component::Kind::Alpha:
      if (c.alpha < 2 || c.alpha > dim_) {
        throw DimensionError("chi component alpha must lie in 2.." + std::to_string(dim_));
      }
      return;
    case Component::Kind::Pressure:
      if (setting_ == Setting::CPE && c.shift > 1) {
        throw std::invalid_argument("the cpe chi tuple has pressure components 0 and 1 only");
      }
      return;
  }
}

Expr ChiTuple::alpha(int shift, int a) const { return get({Component::Kind::Alpha, shift, a}); }

Expr ChiTuple::pressure(int shift) const { return get({Component::Kind::Pressure, shift, 0}); }

void ChiTuple::set_alpha(int shift, int a, Expr value) { set({Component::Kind::Alpha, shift, a}, std::move(value)); }

void ChiTuple::set_pressure(int shift, Expr value) {
  set({Component::Kind::Pressure, shift, 0}, std::move(value));
}

Expr ChiTuple::get(const Component& c) const {
  check(c);
  switch (c.kind) {
    case Component::Kind::Chi01:
      return chi01_;
    case Component::Kind::Alpha: {
      auto it = alpha_.find({c.shift, c.alpha});
      return it == alpha_.end() ? Expr() : it->second;
    }
    case Component::Kind::Pressure: {
      auto it = pressure_.find(c.shift);
      return it == pressure_.end() ? Expr() : it->second;
    }
  }
  return {};
}

void ChiTuple::set(const Component& c, Expr value) {
  check(c);
  switch (c.kind) {
    case Component::Kind::Chi01:
      chi01_ = std::move(value);
      return;
    case Component::Kind::Alpha:
      if (value.is_zero()) {
        alpha_.erase({c.shift, c.alpha});
      } else {
        alpha_[{c.shift, c.alpha}] = std::move(value);
      }
      return;
    case Component::Kind::Pressure:
      if (value.is_zero()) {
        pressure_.erase(c.shift);
      } else {
        pressure_[c.shift] = std::move(value);
      }
      return;
  }
}

std::vector<std::pair<ChiTuple::Component, Expr>> ChiTuple::components() const {
  std::vector<std::pair<Component, Expr>> out;
  if (!chi01_.is_zero()) out.emplace_back(Component{Component::Kind::Chi01, 0, 0}, chi01_);
  for (const auto& [k, v] : alpha_) out.emplace_back(Component{Component::Kind::Alpha, k.first, k.second}, v);
  for (const auto& [k, v] : pressure_) out.emplace_back(Component{Component::Kind::Pressure, k, 0}, v);
  return out;
}

bool ChiTuple::is_zero() const { return chi01_.is_zero() && alpha_.empty() && pressure_.empty(); }

ChiTuple& ChiTuple::operator+=(const ChiTuple& o) {
  if (o.setting_ != setting_ || o.dim_ != dim_) throw std::invalid_argument("chi tuple shapes differ");
  for (const auto& [c, v] : o.components()) set(c, get(c) + v);
  return *this;
}

ChiTuple& ChiTuple::operator*=(const Rational& c) {
  for (const auto& [comp, v] : components()) set(comp, v * c);
  return *this;
}

// ---------------------------------------------------------------------------
// f* and D~_1

namespace {

ChiTuple fstar_ce_in(const ReductionContext& ctx, const ChiTuple& chi) {
  ChiTuple out(Setting::CE, chi.dim());
  for (int a = 2; a <= chi.dim(); ++a) out.set_alpha(0, a, ctx.derivative(a, chi.chi01()));
  for (const auto& [c, v] : chi.components()) {
    if (c.kind == ChiTuple::Component::Kind::Alpha) {
      out.set_alpha(c.shift + 1, c.alpha, out.alpha(c.shift + 1, c.alpha) + v);
    } else if (c.kind == ChiTuple::Component::Kind::Pressure) {
      out.set_pressure(c.shift + 1, v);
    }
  }
  return out;
}

ChiTuple fstar_cpe_in(const ReductionContext& ctx, const ChiTuple& chi) {
  const int m = chi.dim();
  const MultiIndex e1 = MultiIndex::unit(m, 1);
  const Expr& chi1 = chi.pressure(1);
  ChiTuple out(Setting::CPE, m);

  Expr c01;
  for (int a = 2; a <= m; ++a) c01 += ctx.derivative(a, u(a, e1) * chi1);
  out.set_chi01(Rational(2) * c01);

  Expr trace;
  for (int b = 2; b <= m; ++b) trace += u(b, MultiIndex::unit(m, b));
  const Expr trace_chi1 = trace * chi1;

  for (int a = 2; a <= m; ++a) {
    const MultiIndex ea = MultiIndex::unit(m, a);
    Expr zero = ctx.derivative(a, chi.chi01()) + Rational(2) * ctx.derivative(a, trace_chi1);
    for (int b = 2; b <= m; ++b) zero += Rational(2) * ctx.derivative(b, u(b, ea) * chi1);
    out.set_alpha(0, a, ctx.reduce(zero));
    out.set_alpha(1, a, ctx.reduce(-Rational(2) * u(1, ea) * chi1));
  }
  for (const auto& [c, v] : chi.components()) {
    if (c.kind != ChiTuple::Component::Kind::Alpha) continue;
    out.set_alpha(c.shift + 1, c.alpha, out.alpha(c.shift + 1, c.alpha) + v);
  }
  out.set_pressure(0, -ctx.laplacian(chi1, LaplacianKind::Primed));
  out.set_pressure(1, chi.pressure(0));
  return out;
}

ChiTuple dtilde1_in(const ReductionContext& ctx, const ChiTuple& chi) {
  ChiTuple out = chi.setting() == Setting::CE ? fstar_ce_in(ctx, chi) : fstar_cpe_in(ctx, chi);
  for (const auto& [c, v] : chi.components()) out.set(c, out.get(c) + ctx.derivative(1, v));
  return out;
}

ResidualReport lemma2_in(const ReductionContext& ctx, const ChiTuple& chi) {
  const int m = chi.dim();
  const MultiIndex e1 = MultiIndex::unit(m, 1);
  const Expr& chi1 = chi.pressure(1);
  ResidualReport r;
  auto tag = [](int a) { return "[" + std::to_string(a) + "]"; };

  for (int a = 2; a <= m; ++a) {
    r.entries.push_back({"chi0_alpha" + tag(a),
                         ctx.reduce(chi.alpha(0, a) - Rational(2) * u(1, MultiIndex::unit(m, a)) * chi1)});
  }
  for (const auto& [c, v] : chi.components()) {
    if (c.kind != ChiTuple::Component::Kind::Alpha || c.shift < 1) continue;
    r.entries.push_back({"chi_alpha[" + std::to_string(c.alpha) + "," + std::to_string(c.shift) + "]", ctx.reduce(v)});
  }
  r.entries.push_back({"chi0", ctx.reduce(chi.pressure(0)) + ctx.derivative(1, chi1)});
  r.entries.push_back({"laplacian_chi1", ctx.laplacian(chi1)});

  std::vector<Expr> d_chi1(static_cast<std::size_t>(m) + 1);
  for (int mu = 1; mu <= m; ++mu) d_chi1[mu] = ctx.derivative(mu, chi1);
  for (int a = 2; a <= m; ++a) {
    const MultiIndex ea = MultiIndex::unit(m, a);
    Expr compat;
    for (int mu = 1; mu <= m; ++mu) {
      compat += u(mu, e1) * ctx.derivative(mu, d_chi1[a]) - u(mu, ea) * ctx.derivative(mu, d_chi1[1]);
    }
    r.entries.push_back({"compat" + tag(a), ctx.reduce(compat)});
  }

  Expr d1 = ctx.derivative(1, chi.chi01());
  for (int a = 2; a <= m; ++a) d1 += Rational(2) * ctx.derivative(a, u(a, e1) * chi1);
  r.entries.push_back({"d1_chi01", ctx.reduce(d1)});

  Expr trace;
  for (int b = 2; b <= m; ++b) trace += u(b, MultiIndex::unit(m, b));
  for (int a = 2; a <= m; ++a) {
    const MultiIndex ea = MultiIndex::unit(m, a);
    Expr inner = ctx.derivative(a, trace * chi1);
    for (int mu = 1; mu <= m; ++mu) inner += u(mu, ea) * d_chi1[mu];
    r.entries.push_back({"dalpha_chi01" + tag(a), ctx.reduce(ctx.derivative(a, chi.chi01()) + Rational(2) * inner)});
  }
  return r;
}

}  // namespace

ChiTuple fstar_ce(const ChiTuple& chi) {
  if (chi.setting() != Setting::CE) throw std::invalid_argument("fstar_ce needs a ce chi tuple");
  return fstar_ce_in(ReductionContext(Setting::CE, chi.dim()), chi);
}

ChiTuple fstar_cpe(const ChiTuple& chi) {
  if (chi.setting() != Setting::CPE) throw std::invalid_argument("fstar_cpe needs a cpe chi tuple");
  return fstar_cpe_in(ReductionContext(Setting::CPE, chi.dim()), chi);
}

ChiTuple dtilde1(const ChiTuple& chi) { return dtilde1_in(ReductionContext(chi.setting(), chi.dim()), chi); }

ResidualReport lemma2_residuals(const ChiTuple& chi) {
  if (chi.setting() != Setting::CPE) throw std::invalid_argument("the reduced system is stated for cpe chi tuples");
  return lemma2_in(ReductionContext(Setting::CPE, chi.dim()), chi);
}

ChiTuple theta_variational_derivative(Setting setting, int dim, const Expr& lagrangian) {
  ChiTuple out(setting, dim);
  const MultiIndex zero(dim);
  std::set<int> alpha_shifts;
  std::set<int> pressure_shifts;
  for (const auto& v : variables(lagrangian)) {
    if (v.kind() == VarKind::U && v.component() >= 2) alpha_shifts.insert(v.index().first());
    if (v.kind() == VarKind::P) pressure_shifts.insert(v.index().first());
  }
  out.set_chi01(variational_derivative(lagrangian, JetVariable::u(1, zero), 2));
  for (int shift : alpha_shifts) {
    for (int a = 2; a <= dim; ++a) {
      out.set_alpha(shift, a, variational_derivative(lagrangian, JetVariable::u(a, zero.plus_unit(1, shift)), 2));
    }
  }
  for (int shift : pressure_shifts) {
    out.set_pressure(shift, variational_derivative(lagrangian, JetVariable::p(zero.plus_unit(1, shift)), 2));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ansatz and kernel search

AnsatzTooLarge::AnsatzTooLarge(long required, long cap)
    : std::runtime_error("ansatz needs " + std::to_string(required) + " unknowns, cap is " + std::to_string(cap)),
      required_(required) {}

namespace {

void validate(const AnsatzSpec& a) {
  if (a.max_order < 0 || a.max_degree < 0 || a.max_x_degree < 0 || a.max_shift < 0 || a.max_unknowns < 0) {
    throw std::invalid_argument("ansatz bounds must be non-negative");
  }
}

// All monomials of total degree <= max_degree in the given variables.
void monomials_upto(const std::vector<JetVariable>& vars, std::size_t from, int max_degree,
                    std::vector<Monomial::Factor>& cur, std::vector<Monomial>& out) {
  out.emplace_back(cur);
  if (max_degree == 0) return;
  for (std::size_t k = from; k < vars.size(); ++k) {
    if (!cur.empty() && cur.back().first == vars[k]) {
      ++cur.back().second;
    } else {
      cur.emplace_back(vars[k], 1);
    }
    monomials_upto(vars, k, max_degree - 1, cur, out);
    if (--cur.back().second == 0) cur.pop_back();
  }
}

}  // namespace

std::vector<Monomial> ansatz_monomials(Setting setting, int dim, const AnsatzSpec& ansatz) {
  require_reduced_setting(setting);
  validate_dimension(dim);
  validate(ansatz);
  const ReductionContext ctx(setting, dim);

  std::vector<JetVariable> jets;
  for (int order = 0; order <= ansatz.max_order; ++order) {
    for (const auto& i : indices_of_order(dim, order)) {
      for (int mu = 1; mu <= dim; ++mu) {
        const JetVariable v = JetVariable::u(mu, i);
        if (ctx.is_coordinate(v)) jets.push_back(v);
      }
      const JetVariable p = JetVariable::p(i);
      if (ctx.is_coordinate(p)) jets.push_back(p);
    }
  }
  std::sort(jets.begin(), jets.end());
  std::vector<JetVariable> xs;
  for (int mu = 1; mu <= dim; ++mu) xs.push_back(JetVariable::x(mu));

  std::vector<Monomial> jet_part;
  std::vector<Monomial> x_part;
  std::vector<Monomial::Factor> cur;
  monomials_upto(jets, 0, ansatz.max_degree, cur, jet_part);
  monomials_upto(xs, 0, ansatz.max_x_degree, cur, x_part);

  std::set<Monomial> all;
  for (const auto& a : jet_part) {
    for (const auto& b : x_part) {
      all.insert(a * b);
      if (ansatz.include_t) all.insert(a * b * Monomial(JetVariable::t()));
    }
  }
  return {all.begin(), all.end()};
}

std::vector<ChiTuple::Component> ansatz_components(Setting setting, int dim, const AnsatzSpec& ansatz) {
  require_reduced_setting(setting);
  validate_dimension(dim);
  validate(ansatz);
  using Kind = ChiTuple::Component::Kind;
  std::vector<ChiTuple::Component> out{{Kind::Chi01, 0, 0}};
  for (int s = 0; s <= ansatz.max_shift; ++s) {
    for (int a = 2; a <= dim; ++a) out.push_back({Kind::Alpha, s, a});
  }
  const int pressure_top = setting == Setting::CPE ? 1 : ansatz.max_shift;
  for (int s = 0; s <= pressure_top; ++s) out.push_back({Kind::Pressure, s, 0});
  return out;
}

long ansatz_unknowns(Setting setting, int dim, const AnsatzSpec& ansatz) {
  return static_cast<long>(ansatz_components(setting, dim, ansatz).size()) *
         static_cast<long>(ansatz_monomials(setting, dim, ansatz).size());
}

namespace {

using RowKey = std::pair<std::string, Monomial>;
using LinearMap = std::function<std::vector<std::pair<std::string, Expr>>(const ChiTuple&)>;

std::string component_label(const ChiTuple::Component& c) {
  return std::to_string(static_cast<int>(c.kind)) + ":" + std::to_string(c.shift) + ":" + std::to_string(c.alpha);
}

// Basis of {chi in the ansatz span : map(chi) = 0}.
std::vector<ChiTuple> solve_in_ansatz(Setting setting, int dim, const AnsatzSpec& ansatz, const LinearMap& map) {
  const auto components = ansatz_components(setting, dim, ansatz);
  const auto monomials = ansatz_monomials(setting, dim, ansatz);
  const long unknowns = static_cast<long>(components.size()) * static_cast<long>(monomials.size());
  if (unknowns > ansatz.max_unknowns) throw AnsatzTooLarge(unknowns, ansatz.max_unknowns);

  std::vector<ChiTuple> columns;
  columns.reserve(static_cast<std::size_t>(unknowns));
  std::map<RowKey, SparseRow> rows;
  for (const auto& c : components) {
    for (const auto& mono : monomials) {
      ChiTuple chi(setting, dim);
      chi.set(c, Expr(mono, Rational(1)));
      const int col = static_cast<int>(columns.size());
      for (const auto& [label, value] : map(chi)) {
        for (const auto& [m, coeff] : value.terms()) rows[{label, m}].emplace(col, coeff);
      }
      columns.push_back(std::move(chi));
    }
  }

  SparseEliminator elim(static_cast<int>(columns.size()));
  for (const auto& [key, row] : rows) elim.add_row(row);

  std::vector<ChiTuple> basis;
  for (const auto& v : elim.nullspace()) {
    ChiTuple chi(setting, dim);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (sgn(v[k]) == 0) continue;
      ChiTuple term = columns[k];
      term *= v[k];
      chi += term;
    }
    basis.push_back(std::move(chi));
  }
  return basis;
}

}  // namespace

std::vector<ChiTuple> kernel_search(Setting setting, int dim, const AnsatzSpec& ansatz) {
  require_reduced_setting(setting);
  const ReductionContext ctx(setting, dim);
  return solve_in_ansatz(setting, dim, ansatz, [&](const ChiTuple& chi) {
    std::vector<std::pair<std::string, Expr>> out;
    for (const auto& [c, v] : dtilde1_in(ctx, chi).components()) out.emplace_back(component_label(c), v);
    return out;
  });
}

std::vector<ChiTuple> lemma2_solutions(int dim, const AnsatzSpec& ansatz) {
  const ReductionContext ctx(Setting::CPE, dim);
  return solve_in_ansatz(Setting::CPE, dim, ansatz, [&](const ChiTuple& chi) {
    std::vector<std::pair<std::string, Expr>> out;
    for (auto& e : lemma2_in(ctx, chi).entries) out.emplace_back(e.name, std::move(e.value));
    return out;
  });
}

}  // namespace nsjet
