#include "nsjet/total_derivative.hpp"

#include <algorithm>

namespace nsjet {

Expr total_derivative(int mu, const Expr& f) {
  if (mu < 1 || mu > kMaxDim) throw DimensionError("direction out of range: " + std::to_string(mu));
  return apply_derivation(f, [mu](const JetVariable& v) -> std::optional<Expr> {
    switch (v.kind()) {
      case VarKind::X:
        if (v.component() == mu) return Expr(1);
        return std::nullopt;
      case VarKind::U:
      case VarKind::P:
        return Expr(v.with_index(v.index().plus_unit(mu)));
      default:
        return std::nullopt;
    }
  });
}

Expr total_derivative(const MultiIndex& i, const Expr& f) {
  Expr r = f;
  for (int mu = 1; mu <= i.dim(); ++mu) {
    for (int k = 0; k < i.get(mu) && !r.is_zero(); ++k) r = total_derivative(mu, r);
  }
  return r;
}

Expr laplacian(int dim, const Expr& f, LaplacianKind kind) {
  validate_dimension(dim);
  Expr r;
  for (int mu = kind == LaplacianKind::Full ? 1 : 2; mu <= dim; ++mu) {
    r += total_derivative(mu, total_derivative(mu, f));
  }
  return r;
}

HForm::HForm(int dim, int degree) : dim_(dim), degree_(degree) {
  validate_dimension(dim);
  if (degree < 0) throw std::invalid_argument("negative form degree");
}

HForm HForm::function(int dim, const Expr& f) {
  HForm w(dim, 0);
  w.set({}, f);
  return w;
}

HForm HForm::current(std::span<const Expr> components) {
  const int dim = static_cast<int>(components.size());
  HForm w(dim, dim - 1);
  for (int mu = 1; mu <= dim; ++mu) {
    Key key;
    for (int nu = 1; nu <= dim; ++nu) {
      if (nu != mu) key.push_back(nu);
    }
    w.set(key, (mu % 2 == 1) ? components[mu - 1] : -components[mu - 1]);
  }
  return w;
}

Expr HForm::component(const Key& indices) const {
  if (static_cast<int>(indices.size()) != degree_) throw std::invalid_argument("wrong number of form indices");
  Key sorted = indices;
  int sign = 1;
  // Bubble sort keeps track of the permutation parity.
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = 0; b + 1 < sorted.size() - a; ++b) {
      if (sorted[b] == sorted[b + 1]) return Expr();
      if (sorted[b] > sorted[b + 1]) {
        std::swap(sorted[b], sorted[b + 1]);
        sign = -sign;
      }
    }
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return Expr();
  auto it = components_.find(sorted);
  if (it == components_.end()) return Expr();
  return sign > 0 ? it->second : -it->second;
}

void HForm::set(const Key& increasing, Expr value) {
  if (static_cast<int>(increasing.size()) != degree_) throw std::invalid_argument("wrong number of form indices");
  for (std::size_t k = 0; k < increasing.size(); ++k) {
    if (increasing[k] < 1 || increasing[k] > dim_) throw DimensionError("form index out of range");
    if (k > 0 && increasing[k - 1] >= increasing[k]) {
      throw std::invalid_argument("form indices must be strictly increasing");
    }
  }
  if (value.is_zero()) {
    components_.erase(increasing);
  } else {
    components_[increasing] = std::move(value);
  }
}

bool HForm::is_zero() const { return components_.empty(); }

namespace {

void increasing_tuples(int dim, int size, int start, HForm::Key& cur, std::vector<HForm::Key>& out) {
  if (static_cast<int>(cur.size()) == size) {
    out.push_back(cur);
    return;
  }
  for (int mu = start; mu <= dim; ++mu) {
    cur.push_back(mu);
    increasing_tuples(dim, size, mu + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

HForm horizontal_differential(const HForm& form) {
  const int q = form.degree();
  HForm out(form.dim(), q + 1);
  if (q >= form.dim()) return out;

  std::vector<HForm::Key> keys;
  HForm::Key cur;
  increasing_tuples(form.dim(), q + 1, 1, cur, keys);
  for (const auto& key : keys) {
    Expr value;
    for (int k = 0; k <= q; ++k) {
      HForm::Key rest;
      for (int l = 0; l <= q; ++l) {
        if (l != k) rest.push_back(key[l]);
      }
      auto it = form.components().find(rest);
      if (it == form.components().end()) continue;
      Expr d = total_derivative(key[k], it->second);
      value += (k % 2 == 0) ? d : -d;
    }
    out.set(key, std::move(value));
  }
  return out;
}

}  // namespace nsjet
