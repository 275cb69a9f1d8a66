#pragma once

#include <memory>
#include <optional>
#include <string>

#include "nsjet/expr.hpp"
#include "nsjet/total_derivative.hpp"

namespace nsjet {

// Which solution manifold expressions live on.
//   Free: the whole base space, no relations.
//   CE:   divergence-free, u^1_i with i^1 > 0 eliminated.
//   CPE:  CE plus the pressure Poisson constraint, p_i with i^1 > 1 eliminated.
enum class Setting { Free, CE, CPE };

std::string to_string(Setting s);
Setting parse_setting(const std::string& name);

// The defining expressions of the constraint ideals, on the free algebra.
class ConstraintGenerators {
 public:
  explicit ConstraintGenerators(int dim);

  int dim() const { return dim_; }

  // CE_i = u^mu_{i+(mu)}
  Expr ce(const MultiIndex& i) const;
  // PE_i = Laplacian p_i + D_i(u^l_(mu) u^mu_(l))
  Expr pe(const MultiIndex& i) const;
  // u^l_(mu) u^mu_(l)
  Expr quadratic() const;
  // Phi = Laplacian' p + u^l_(mu) u^mu_(l) restricted to CE
  Expr phi() const;

 private:
  int dim_;
};

// Canonical coordinates of a setting and the derivations restricted to them.
// Values are cheap to copy and safe to share between threads: Phi is built
// eagerly, eliminated pressure derivatives are memoized behind a mutex.
class ReductionContext {
 public:
  ReductionContext(Setting setting, int dim);

  Setting setting() const { return setting_; }
  int dim() const { return dim_; }

  bool is_coordinate(const JetVariable& v) const;

  // Image of a non-coordinate variable in canonical coordinates; nullopt for
  // coordinates.
  std::optional<Expr> eliminate(const JetVariable& v) const;

  // Rewrites f into canonical coordinates.
  Expr reduce(const Expr& f) const;

  // Restricted total derivatives; the result is always in coordinates.
  Expr derivative(int mu, const Expr& f) const;
  Expr derivative(const MultiIndex& i, const Expr& f) const;
  Expr laplacian(const Expr& f, LaplacianKind kind = LaplacianKind::Full) const;

  // The reduced Phi (meaningful for CE and CPE; returned for Free as well).
  const Expr& phi() const;

 private:
  struct State;

  Expr pressure_image(const MultiIndex& i) const;

  Setting setting_;
  int dim_;
  std::shared_ptr<State> state_;
};

// Membership of f in the ideal of the setting; the residual is reduce(f).
struct Membership {
  bool member = false;
  Expr residual;
};

Membership ideal_member(const ReductionContext& ctx, const Expr& f);

Expr reduce_ce(int dim, const Expr& f);
Expr reduce_cpe(int dim, const Expr& f);

}  // namespace nsjet
