#include "nsjet/variational.hpp"

namespace nsjet {

Expr OperatorCoefficients::coefficient(int target, int source, const MultiIndex& k) const {
  auto it = entries_.find(Key{target, source, k});
  return it == entries_.end() ? Expr() : it->second;
}

void OperatorCoefficients::add(int target, int source, const MultiIndex& k, const Expr& value) {
  if (value.is_zero()) return;
  Key key{target, source, k};
  auto [it, inserted] = entries_.try_emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

OperatorCoefficients& OperatorCoefficients::operator-=(const OperatorCoefficients& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [k, v] : o.entries_) add(k.target, k.source, k.order, -v);
  return *this;
}

Expr variational_derivative(const Expr& lagrangian, const JetVariable& base, int first_direction) {
  if (!base.is_jet()) throw std::invalid_argument("variational derivative needs a u or p variable");
  Expr r;
  for (const auto& v : variables(lagrangian)) {
    if (v.kind() != base.kind() || v.component() != base.component()) continue;
    auto j = subtract(v.index(), base.index());
    if (!j) continue;
    bool admissible = true;
    for (int mu = 1; mu < first_direction; ++mu) admissible = admissible && j->get(mu) == 0;
    if (!admissible) continue;
    Expr term = total_derivative(*j, partial_derivative(v, lagrangian));
    if (j->order() % 2 == 1) {
      r -= term;
    } else {
      r += term;
    }
  }
  return r;
}

Cotuple euler_operator(int dim, const Expr& lagrangian) {
  validate_dimension(dim);
  const MultiIndex zero(dim);
  Cotuple out(dim);
  for (int mu = 1; mu <= dim; ++mu) out.slot(mu) = variational_derivative(lagrangian, JetVariable::u(mu, zero));
  out.pressure = variational_derivative(lagrangian, JetVariable::p(zero));
  return out;
}

namespace {

int source_slot(const JetVariable& v) { return v.kind() == VarKind::U ? v.component() : kPressureSlot; }

}  // namespace

OperatorCoefficients frechet_linearization(const Cotuple& chi) {
  OperatorCoefficients op(chi.dim());
  for (int s = 0; s <= chi.dim(); ++s) {
    const Expr& component = chi.slot(s);
    for (const auto& v : variables(component)) {
      if (!v.is_jet()) continue;
      op.add(s, source_slot(v), v.index(), partial_derivative(v, component));
    }
  }
  return op;
}

OperatorCoefficients adjoint(const OperatorCoefficients& op) {
  OperatorCoefficients out(op.dim());
  for (const auto& [key, c] : op.entries()) {
    const int sign = key.order.order() % 2 == 0 ? 1 : -1;
    for (const auto& k : lower_set(key.order)) {
      const MultiIndex rest = *subtract(key.order, k);
      Expr term = total_derivative(rest, c) * Rational(binomial(key.order, k) * sign);
      out.add(key.source, key.target, k, term);
    }
  }
  return out;
}

OperatorCoefficients formal_adjoint(const Cotuple& chi) { return adjoint(frechet_linearization(chi)); }

OperatorCoefficients helmholtz_residual(const Cotuple& chi) {
  return frechet_linearization(chi) - formal_adjoint(chi);
}

Cotuple apply(const ReductionContext& ctx, const OperatorCoefficients& op, const Characteristic& f) {
  if (f.dim() != ctx.dim()) throw DimensionError("characteristic dimension does not match the context");
  std::map<std::pair<int, MultiIndex>, Expr> derivatives;
  Cotuple out(ctx.dim());
  for (const auto& [key, c] : op.entries()) {
    auto it = derivatives.find({key.source, key.order});
    if (it == derivatives.end()) {
      it = derivatives.emplace(std::pair{key.source, key.order}, ctx.derivative(key.order, f.slot(key.source))).first;
    }
    out.slot(key.target) += ctx.reduce(c) * it->second;
  }
  for (int s = 0; s <= out.dim(); ++s) out.slot(s) = ctx.reduce(out.slot(s));
  return out;
}

Expr current_divergence(const ReductionContext& ctx, const CurrentTuple& current) {
  if (current.dim() != ctx.dim()) throw DimensionError("current dimension does not match the context");
  Expr r;
  for (int mu = 1; mu <= current.dim(); ++mu) r += total_derivative(mu, current.components[mu - 1]);
  return ctx.reduce(r);
}

}  // namespace nsjet
