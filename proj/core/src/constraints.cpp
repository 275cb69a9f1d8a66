#include "nsjet/constraints.hpp"

#include <mutex>
#include <stdexcept>

namespace nsjet {

std::string to_string(Setting s) {
  switch (s) {
    case Setting::Free: return "free";
    case Setting::CE: return "ce";
    case Setting::CPE: return "cpe";
  }
  return {};
}

Setting parse_setting(const std::string& name) {
  if (name == "free") return Setting::Free;
  if (name == "ce") return Setting::CE;
  if (name == "cpe") return Setting::CPE;
  throw std::invalid_argument("unknown constraint setting '" + name + "' (expected free, ce or cpe)");
}

namespace {

// u^1_i = -u^b_{i-(1)+(b)} for i^1 > 0. The image never contains u^1, so one
// application reaches canonical coordinates.
std::optional<Expr> eliminate_ce(int dim, const JetVariable& v) {
  if (v.kind() != VarKind::U || v.component() != 1 || v.index().first() == 0) return std::nullopt;
  const MultiIndex base = v.index().plus_unit(1, -1);
  Expr r;
  for (int beta = 2; beta <= dim; ++beta) r -= JetVariable::u(beta, base.plus_unit(beta));
  return r;
}

Expr p0(int dim) { return JetVariable::p(MultiIndex(dim)); }

}  // namespace

// ---------------------------------------------------------------------------

ConstraintGenerators::ConstraintGenerators(int dim) : dim_(dim) { validate_dimension(dim); }

Expr ConstraintGenerators::ce(const MultiIndex& i) const {
  Expr r;
  for (int mu = 1; mu <= dim_; ++mu) r += JetVariable::u(mu, i.plus_unit(mu));
  return r;
}

Expr ConstraintGenerators::quadratic() const {
  Expr r;
  for (int l = 1; l <= dim_; ++l) {
    for (int mu = 1; mu <= dim_; ++mu) {
      r += Expr(JetVariable::u(l, MultiIndex::unit(dim_, mu))) *
           Expr(JetVariable::u(mu, MultiIndex::unit(dim_, l)));
    }
  }
  return r;
}

Expr ConstraintGenerators::pe(const MultiIndex& i) const {
  return laplacian(dim_, JetVariable::p(i)) + total_derivative(i, quadratic());
}

Expr ConstraintGenerators::phi() const {
  return laplacian(dim_, p0(dim_), LaplacianKind::Primed) + reduce_ce(dim_, quadratic());
}

// ---------------------------------------------------------------------------

struct ReductionContext::State {
  Expr phi;
  std::mutex mutex;
  std::map<MultiIndex, Expr> pressure;
};

ReductionContext::ReductionContext(Setting setting, int dim)
    : setting_(setting), dim_(dim), state_(std::make_shared<State>()) {
  validate_dimension(dim);
  state_->phi = ConstraintGenerators(dim).phi();
}

const Expr& ReductionContext::phi() const { return state_->phi; }

bool ReductionContext::is_coordinate(const JetVariable& v) const {
  switch (setting_) {
    case Setting::Free:
      return true;
    case Setting::CE:
      return !(v.kind() == VarKind::U && v.component() == 1 && v.index().first() > 0);
    case Setting::CPE:
      if (v.kind() == VarKind::U) return !(v.component() == 1 && v.index().first() > 0);
      if (v.kind() == VarKind::P) return v.index().first() <= 1;
      return true;
  }
  return true;
}

std::optional<Expr> ReductionContext::eliminate(const JetVariable& v) const {
  if (setting_ == Setting::Free) return std::nullopt;
  if (v.kind() == VarKind::U) return eliminate_ce(dim_, v);
  if (setting_ == Setting::CPE && v.kind() == VarKind::P && v.index().first() > 1) {
    return pressure_image(v.index());
  }
  return std::nullopt;
}

// p_i for i^1 >= 2: p_{(2,j)} = -D_j Phi, and p_{i+(1)} = D_1 p_i beyond that.
Expr ReductionContext::pressure_image(const MultiIndex& i) const {
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->pressure.find(i);
    if (it != state_->pressure.end()) return it->second;
  }
  Expr image;
  if (i.first() == 2) {
    // Directions 2..m keep CE coordinates in place, so the free derivative is
    // already canonical.
    image = -total_derivative(i.plus_unit(1, -2), state_->phi);
  } else {
    image = derivative(1, pressure_image(i.plus_unit(1, -1)));
  }
  std::lock_guard lock(state_->mutex);
  return state_->pressure.emplace(i, std::move(image)).first->second;
}

Expr ReductionContext::reduce(const Expr& f) const {
  if (setting_ == Setting::Free) return f;
  return substitute(f, [this](const JetVariable& v) { return eliminate(v); });
}

Expr ReductionContext::derivative(int mu, const Expr& f) const {
  if (mu < 1 || mu > dim_) throw DimensionError("direction out of range: " + std::to_string(mu));
  bool canonical = true;
  Expr r = apply_derivation(f, [&](const JetVariable& v) -> std::optional<Expr> {
    switch (v.kind()) {
      case VarKind::X:
        if (v.component() == mu) return Expr(1);
        return std::nullopt;
      case VarKind::U:
      case VarKind::P: {
        if (!is_coordinate(v)) canonical = false;
        const JetVariable shifted = v.with_index(v.index().plus_unit(mu));
        if (auto image = eliminate(shifted)) return image;
        return Expr(shifted);
      }
      default:
        return std::nullopt;
    }
  });
  return canonical ? r : reduce(r);
}

Expr ReductionContext::derivative(const MultiIndex& i, const Expr& f) const {
  Expr r = reduce(f);
  for (int mu = 1; mu <= i.dim(); ++mu) {
    for (int k = 0; k < i.get(mu) && !r.is_zero(); ++k) r = derivative(mu, r);
  }
  return r;
}

Expr ReductionContext::laplacian(const Expr& f, LaplacianKind kind) const {
  Expr r;
  for (int mu = kind == LaplacianKind::Full ? 1 : 2; mu <= dim_; ++mu) {
    r += derivative(mu, derivative(mu, f));
  }
  return r;
}

Membership ideal_member(const ReductionContext& ctx, const Expr& f) {
  Membership m;
  m.residual = ctx.reduce(f);
  m.member = m.residual.is_zero();
  return m;
}

Expr reduce_ce(int dim, const Expr& f) {
  validate_dimension(dim);
  return substitute(f, [dim](const JetVariable& v) { return eliminate_ce(dim, v); });
}

Expr reduce_cpe(int dim, const Expr& f) { return ReductionContext(Setting::CPE, dim).reduce(f); }

}  // namespace nsjet
