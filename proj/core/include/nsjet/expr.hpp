#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "nsjet/multiindex.hpp"

namespace nsjet {

using Rational = mpq_class;

// Kinds are listed in print order.
enum class VarKind : std::uint8_t { Nu, T, X, U, P };

// A coordinate of the base space: x^mu, u^mu_i, p_i, the viscosity nu or the
// time t. Indices are only carried by U and P.
class JetVariable {
 public:
  static JetVariable nu();
  static JetVariable t();
  static JetVariable x(int mu);
  static JetVariable u(int mu, const MultiIndex& i);
  static JetVariable p(const MultiIndex& i);

  VarKind kind() const { return kind_; }
  int component() const { return component_; }
  const MultiIndex& index() const { return index_; }
  bool is_jet() const { return kind_ == VarKind::U || kind_ == VarKind::P; }

  JetVariable with_index(const MultiIndex& i) const;

  // Grammar form, e.g. "u1_[1,0,0]", "p_[0,0,0]", "x2", "nu".
  std::string to_string() const;

  friend bool operator==(const JetVariable&, const JetVariable&) = default;
  friend std::strong_ordering operator<=>(const JetVariable&, const JetVariable&) = default;

 private:
  JetVariable(VarKind kind, int component, MultiIndex index);

  VarKind kind_ = VarKind::Nu;
  std::uint8_t component_ = 0;
  MultiIndex index_;
};

// Power product of jet variables, factors sorted by variable.
class Monomial {
 public:
  using Factor = std::pair<JetVariable, int>;

  Monomial() = default;
  explicit Monomial(const JetVariable& v, int exponent = 1);
  explicit Monomial(std::vector<Factor> factors);

  std::span<const Factor> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  int exponent(const JetVariable& v) const;

  // This monomial with one power of v removed; v must occur.
  Monomial without_one(const JetVariable& v) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

// Polynomial in jet variables with exact rational coefficients. Zero
// coefficients are never stored, so structural equality is equality of
// polynomials.
class Expr {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Expr() = default;
  Expr(int c);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& c);  // NOLINT(google-explicit-constructor)
  Expr(const JetVariable& v);  // NOLINT(google-explicit-constructor)
  Expr(const Monomial& m, const Rational& c);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator*=(const Rational& c);

  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator*(Expr a, const Rational& c) { return a *= c; }
  friend Expr operator*(const Rational& c, Expr a) { return a *= c; }
  friend Expr operator-(Expr a);

  friend bool operator==(const Expr&, const Expr&) = default;

 private:
  TermMap terms_;
};

Expr pow(const Expr& base, unsigned exponent);

// d f / d v treating every jet variable as an independent coordinate.
Expr partial_derivative(const JetVariable& v, const Expr& f);

// Replaces every occurrence of v by replacement in a single pass.
Expr substitute(const JetVariable& v, const Expr& replacement, const Expr& f);

// Simultaneous single-pass substitution. The callback returns the image of a
// variable or nullopt to keep it.
using Substitution = std::function<std::optional<Expr>(const JetVariable&)>;
Expr substitute(const Expr& f, const Substitution& image);

// The derivation sum_v (df/dv) * image(v). The callback returns nullopt for
// variables the derivation annihilates. Each image is requested at most once.
using DerivationImage = std::function<std::optional<Expr>(const JetVariable&)>;
Expr apply_derivation(const Expr& f, const DerivationImage& image);

std::set<JetVariable> variables(const Expr& f);

// Largest |i| over u- and p-variables occurring; nullopt when none occur.
struct Orders {
  std::optional<int> u;
  std::optional<int> p;
};
Orders orders(const Expr& f);

class MissingVariableError : public std::out_of_range {
 public:
  explicit MissingVariableError(const JetVariable& v);
  const JetVariable& variable() const { return variable_; }

 private:
  JetVariable variable_;
};

using Assignment = std::map<JetVariable, Rational>;

// Exact value of f at the given point. Throws MissingVariableError naming the
// first variable (in canonical order) without a value.
Rational evaluate(const Assignment& point, const Expr& f);

}  // namespace nsjet
