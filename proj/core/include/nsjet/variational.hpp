#pragma once

#include <compare>
#include <map>

#include "nsjet/constraints.hpp"
#include "nsjet/tuples.hpp"

namespace nsjet {

// Linear differential operator sum c[target][source][k] * D_k acting on a
// characteristic and producing a cotuple. Zero coefficients are not stored.
class OperatorCoefficients {
 public:
  struct Key {
    int target = 0;
    int source = 0;
    MultiIndex order;

    friend bool operator==(const Key&, const Key&) = default;
    friend std::strong_ordering operator<=>(const Key&, const Key&) = default;
  };

  OperatorCoefficients() = default;
  explicit OperatorCoefficients(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::map<Key, Expr>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Expr coefficient(int target, int source, const MultiIndex& k) const;
  void add(int target, int source, const MultiIndex& k, const Expr& value);

  OperatorCoefficients& operator-=(const OperatorCoefficients& o);
  friend OperatorCoefficients operator-(OperatorCoefficients a, const OperatorCoefficients& b) {
    return a -= b;
  }
  friend bool operator==(const OperatorCoefficients&, const OperatorCoefficients&) = default;

 private:
  int dim_ = 0;
  std::map<Key, Expr> entries_;
};

// sum_j (-1)^|j| D_j d L / d v_{base+j}, j running over indices supported on
// directions first_direction..m. base must be a u or p variable.
Expr variational_derivative(const Expr& lagrangian, const JetVariable& base, int first_direction = 1);

// (delta_{u^1} L, .., delta_{u^m} L; delta_p L)
Cotuple euler_operator(int dim, const Expr& lagrangian);

// chi_*: coefficient of D_k f^nu in slot mu is d chi_mu / d u^nu_k.
OperatorCoefficients frechet_linearization(const Cotuple& chi);

// Formal adjoint of an operator, via the higher Leibniz rule on the free
// algebra.
OperatorCoefficients adjoint(const OperatorCoefficients& op);

// chi^* = adjoint(chi_*)
OperatorCoefficients formal_adjoint(const Cotuple& chi);

// chi_* - chi^*; empty exactly for variational cotuples.
OperatorCoefficients helmholtz_residual(const Cotuple& chi);

// Applies the operator to f with the derivatives of ctx; output reduced.
Cotuple apply(const ReductionContext& ctx, const OperatorCoefficients& op, const Characteristic& f);

// reduce(D_mu J^mu)
Expr current_divergence(const ReductionContext& ctx, const CurrentTuple& current);

}  // namespace nsjet
