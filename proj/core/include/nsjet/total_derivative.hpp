#pragma once

#include <map>
#include <span>
#include <vector>

#include "nsjet/expr.hpp"

namespace nsjet {

// D_mu = d/dx^mu + u^l_{i+(mu)} d/du^l_i + p_{i+(mu)} d/dp_i on the free
// algebra. nu and t are constants for D_mu.
Expr total_derivative(int mu, const Expr& f);

// D_i = (D_1)^{i^1} o ... o (D_m)^{i^m}.
Expr total_derivative(const MultiIndex& i, const Expr& f);

enum class LaplacianKind {
  Full,    // sum over all directions 1..m
  Primed,  // sum over directions 2..m only
};

Expr laplacian(int dim, const Expr& f, LaplacianKind kind = LaplacianKind::Full);

// Horizontal q-form stored by its components on strictly increasing index
// tuples (mu_1 < ... < mu_q). Degree 0 stores one component under the empty
// tuple; a degree above dim has no components.
class HForm {
 public:
  using Key = std::vector<int>;

  HForm(int dim, int degree);

  static HForm function(int dim, const Expr& f);

  // The (m-1)-form J^mu d_mu x, where d_mu x = (-1)^(mu-1) dx^1 ^ .. ^ dx^m
  // with dx^mu omitted.
  static HForm current(std::span<const Expr> components);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<Key, Expr>& components() const { return components_; }

  // Component for an arbitrary index tuple, with the sign of the sorting
  // permutation; zero for repeated indices.
  Expr component(const Key& indices) const;
  void set(const Key& increasing, Expr value);
  bool is_zero() const;

  friend bool operator==(const HForm&, const HForm&) = default;

 private:
  int dim_;
  int degree_;
  std::map<Key, Expr> components_;
};

// d_H on horizontal forms: (d w)_{m0..mq} = sum_k (-1)^k D_{mk} w_{m0..^mk..mq}.
// A degree-m form maps to the zero (m+1)-form.
HForm horizontal_differential(const HForm& form);

}  // namespace nsjet
