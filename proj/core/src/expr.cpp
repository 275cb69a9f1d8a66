#include "nsjet/expr.hpp"

#include <algorithm>

namespace nsjet {

// ---------------------------------------------------------------------------
// JetVariable

JetVariable::JetVariable(VarKind kind, int component, MultiIndex index)
    : kind_(kind), component_(static_cast<std::uint8_t>(component)), index_(std::move(index)) {}

JetVariable JetVariable::nu() { return {VarKind::Nu, 0, MultiIndex()}; }

JetVariable JetVariable::t() { return {VarKind::T, 0, MultiIndex()}; }

JetVariable JetVariable::x(int mu) {
  if (mu < 1 || mu > kMaxDim) throw DimensionError("x component out of range: " + std::to_string(mu));
  return {VarKind::X, mu, MultiIndex()};
}

JetVariable JetVariable::u(int mu, const MultiIndex& i) {
  if (mu < 1 || mu > i.dim()) {
    throw DimensionError("u component " + std::to_string(mu) + " outside 1.." + std::to_string(i.dim()));
  }
  return {VarKind::U, mu, i};
}

JetVariable JetVariable::p(const MultiIndex& i) {
  if (i.dim() == 0) throw DimensionError("p index must have positive dimension");
  return {VarKind::P, 0, i};
}

JetVariable JetVariable::with_index(const MultiIndex& i) const {
  if (!is_jet()) throw std::logic_error("only u and p variables carry an index");
  if (i.dim() != index_.dim()) throw DimensionError("index dimension mismatch");
  return {kind_, component_, i};
}

std::string JetVariable::to_string() const {
  switch (kind_) {
    case VarKind::Nu: return "nu";
    case VarKind::T: return "t";
    case VarKind::X: return "x" + std::to_string(component_);
    case VarKind::U: return "u" + std::to_string(component_) + "_" + index_.to_string();
    case VarKind::P: return "p_" + index_.to_string();
  }
  return {};
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const JetVariable& v, int exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  if (exponent > 0) factors_.emplace_back(v, exponent);
}

Monomial::Monomial(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end(),
            [](const Factor& a, const Factor& b) { return a.first < b.first; });
  std::vector<Factor> merged;
  for (auto& f : factors_) {
    if (f.second < 0) throw std::invalid_argument("negative exponent");
    if (f.second == 0) continue;
    if (!merged.empty() && merged.back().first == f.first) {
      merged.back().second += f.second;
    } else {
      merged.push_back(std::move(f));
    }
  }
  factors_ = std::move(merged);
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

int Monomial::exponent(const JetVariable& v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const Factor& f, const JetVariable& w) { return f.first < w; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

Monomial Monomial::without_one(const JetVariable& v) const {
  Monomial r = *this;
  auto it = std::lower_bound(r.factors_.begin(), r.factors_.end(), v,
                             [](const Factor& f, const JetVariable& w) { return f.first < w; });
  if (it == r.factors_.end() || !(it->first == v)) {
    throw std::logic_error("variable does not divide monomial");
  }
  if (--it->second == 0) r.factors_.erase(it);
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() && ib != b.factors_.end()) {
    if (ia->first < ib->first) {
      r.factors_.push_back(*ia++);
    } else if (ib->first < ia->first) {
      r.factors_.push_back(*ib++);
    } else {
      r.factors_.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  r.factors_.insert(r.factors_.end(), ia, a.factors_.end());
  r.factors_.insert(r.factors_.end(), ib, b.factors_.end());
  return r;
}

// ---------------------------------------------------------------------------
// Expr

Expr::Expr(int c) : Expr(Rational(c)) {}

Expr::Expr(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial(), c);
}

Expr::Expr(const JetVariable& v) { terms_.emplace(Monomial(v), Rational(1)); }

Expr::Expr(const Monomial& m, const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(m, c);
}

bool Expr::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Expr::constant_term() const { return coefficient(Monomial()); }

Rational Expr::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Expr::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Expr& Expr::operator+=(const Expr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Expr& Expr::operator*=(const Expr& o) {
  *this = *this * o;
  return *this;
}

Expr& Expr::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      r.add_term(ma * mb, ca * cb);
    }
  }
  return r;
}

Expr operator-(Expr a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

Expr pow(const Expr& base, unsigned exponent) {
  Expr result(1);
  Expr square = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= square;
    exponent >>= 1;
    if (exponent > 0) square *= square;
  }
  return result;
}

Expr partial_derivative(const JetVariable& v, const Expr& f) {
  Expr r;
  for (const auto& [m, c] : f.terms()) {
    const int e = m.exponent(v);
    if (e == 0) continue;
    r.add_term(m.without_one(v), c * e);
  }
  return r;
}

Expr substitute(const JetVariable& v, const Expr& replacement, const Expr& f) {
  return substitute(f, [&](const JetVariable& w) -> std::optional<Expr> {
    if (w == v) return replacement;
    return std::nullopt;
  });
}

Expr substitute(const Expr& f, const Substitution& image) {
  std::map<JetVariable, std::optional<Expr>> cache;
  auto lookup = [&](const JetVariable& v) -> const std::optional<Expr>& {
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, image(v)).first;
    return it->second;
  };

  Expr r;
  for (const auto& [m, c] : f.terms()) {
    std::vector<Monomial::Factor> kept;
    Expr product(c);
    bool replaced = false;
    for (const auto& factor : m.factors()) {
      const auto& img = lookup(factor.first);
      if (!img) {
        kept.push_back(factor);
        continue;
      }
      replaced = true;
      product *= pow(*img, static_cast<unsigned>(factor.second));
      if (product.is_zero()) break;
    }
    if (!replaced) {
      r.add_term(m, c);
      continue;
    }
    const Monomial rest(std::move(kept));
    for (const auto& [pm, pc] : product.terms()) r.add_term(pm * rest, pc);
  }
  return r;
}

Expr apply_derivation(const Expr& f, const DerivationImage& image) {
  std::map<JetVariable, std::optional<Expr>> cache;
  Expr r;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& [v, e] : m.factors()) {
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, image(v)).first;
      if (!it->second || it->second->is_zero()) continue;
      const Monomial rest = m.without_one(v);
      const Rational scale = c * e;
      for (const auto& [im, ic] : it->second->terms()) r.add_term(im * rest, ic * scale);
    }
  }
  return r;
}

std::set<JetVariable> variables(const Expr& f) {
  std::set<JetVariable> out;
  for (const auto& [m, c] : f.terms()) {
    for (const auto& factor : m.factors()) out.insert(factor.first);
  }
  return out;
}

Orders orders(const Expr& f) {
  Orders o;
  for (const auto& v : variables(f)) {
    if (v.kind() == VarKind::U) {
      o.u = std::max(o.u.value_or(0), v.index().order());
    } else if (v.kind() == VarKind::P) {
      o.p = std::max(o.p.value_or(0), v.index().order());
    }
  }
  return o;
}

MissingVariableError::MissingVariableError(const JetVariable& v)
    : std::out_of_range("no value assigned to " + v.to_string()), variable_(v) {}

Rational evaluate(const Assignment& point, const Expr& f) {
  for (const auto& v : variables(f)) {
    if (!point.contains(v)) throw MissingVariableError(v);
  }
  Rational total = 0;
  for (const auto& [m, c] : f.terms()) {
    Rational term = c;
    for (const auto& [v, e] : m.factors()) {
      mpq_class power;
      const mpq_class& base = point.at(v);
      mpz_pow_ui(power.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(power.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
      term *= power;
    }
    total += term;
  }
  return total;
}

}  // namespace nsjet
