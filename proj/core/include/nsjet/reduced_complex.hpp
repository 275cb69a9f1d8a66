#pragma once

#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "nsjet/constraints.hpp"
#include "nsjet/residuals.hpp"

namespace nsjet {

// Finite-support tuple (chi^0_1, chi^{i1}_alpha, chi^{i1}) on which the
// reduced operator acts. alpha runs over 2..m. In the CE setting the pressure
// part is a sequence over i1 >= 0; in the CPE setting only chi^0 and chi^1
// exist. Zero entries are never stored.
class ChiTuple {
 public:
  // Components in canonical order: chi01, then (i1, alpha), then pressure i1.
  struct Component {
    enum class Kind { Chi01, Alpha, Pressure } kind = Kind::Chi01;
    int shift = 0;  // i1
    int alpha = 0;

    friend bool operator==(const Component&, const Component&) = default;
    friend auto operator<=>(const Component&, const Component&) = default;
  };

  ChiTuple(Setting setting, int dim);

  Setting setting() const { return setting_; }
  int dim() const { return dim_; }

  const Expr& chi01() const { return chi01_; }
  Expr alpha(int shift, int alpha) const;
  Expr pressure(int shift) const;

  void set_chi01(Expr value) { chi01_ = std::move(value); }
  void set_alpha(int shift, int alpha, Expr value);
  void set_pressure(int shift, Expr value);

  Expr get(const Component& c) const;
  void set(const Component& c, Expr value);

  // Nonzero components in canonical order.
  std::vector<std::pair<Component, Expr>> components() const;
  bool is_zero() const;

  ChiTuple& operator+=(const ChiTuple& o);
  ChiTuple& operator*=(const Rational& c);

  friend bool operator==(const ChiTuple&, const ChiTuple&) = default;

 private:
  void check(const Component& c) const;

  Setting setting_;
  int dim_;
  Expr chi01_;
  std::map<std::pair<int, int>, Expr> alpha_;
  std::map<int, Expr> pressure_;
};

ChiTuple fstar_ce(const ChiTuple& chi);
ChiTuple fstar_cpe(const ChiTuple& chi);

// D_1 + f*, with D_1 the restricted x^1-derivative applied componentwise.
ChiTuple dtilde1(const ChiTuple& chi);

// Residuals of the reduced CPE system, named
//   chi0_alpha[a], chi_alpha[a,i1] (i1 >= 1), chi0, laplacian_chi1,
//   compat[a], d1_chi01, dalpha_chi01[a].
ResidualReport lemma2_residuals(const ChiTuple& chi);

// Variational derivatives of a Theta-Lagrangian along directions 2..m:
// chi01 from u^1, chi^{i1}_alpha from u^alpha_{(i1,0)}, chi^{i1} from p_{(i1,0)}.
ChiTuple theta_variational_derivative(Setting setting, int dim, const Expr& lagrangian);

struct AnsatzSpec {
  int max_order = 0;     // jet order of u and p variables
  int max_degree = 0;    // total degree in u and p variables
  int max_x_degree = 0;  // total degree in x^1..x^m
  bool include_t = false;
  int max_shift = 1;     // largest i1 carried by chi^{i1}_alpha (and chi^{i1} for CE)
  long max_unknowns = 20000;
};

class AnsatzTooLarge : public std::runtime_error {
 public:
  AnsatzTooLarge(long required, long cap);
  long required() const { return required_; }

 private:
  long required_;
};

// Monomials spanned by an ansatz in the coordinates of the setting.
std::vector<Monomial> ansatz_monomials(Setting setting, int dim, const AnsatzSpec& ansatz);

// The tuple components an ansatz assigns unknowns to.
std::vector<ChiTuple::Component> ansatz_components(Setting setting, int dim, const AnsatzSpec& ansatz);

long ansatz_unknowns(Setting setting, int dim, const AnsatzSpec& ansatz);

// Exact basis of ker D~_1 restricted to the ansatz, ordered by free unknown.
std::vector<ChiTuple> kernel_search(Setting setting, int dim, const AnsatzSpec& ansatz);

// Exact basis of the solutions of the reduced CPE system within the ansatz.
std::vector<ChiTuple> lemma2_solutions(int dim, const AnsatzSpec& ansatz);

}  // namespace nsjet
