#pragma once

#include <random>
#include <vector>

#include "nsjet/expr.hpp"

namespace nsjet::testkit {

struct RandomExprOptions {
  int dim = 3;
  int max_u_order = 2;
  int max_p_order = 2;
  int max_terms = 4;
  int max_degree = 3;
  bool with_x = false;
  bool with_nu = false;
  bool with_t = false;
};

class RandomExprGenerator {
 public:
  RandomExprGenerator(unsigned seed, RandomExprOptions options) : rng_(seed), opt_(options) {
    for (int order = 0; order <= opt_.max_u_order; ++order) {
      for (const auto& i : indices_of_order(opt_.dim, order)) {
        for (int mu = 1; mu <= opt_.dim; ++mu) pool_.push_back(JetVariable::u(mu, i));
      }
    }
    for (int order = 0; order <= opt_.max_p_order; ++order) {
      for (const auto& i : indices_of_order(opt_.dim, order)) pool_.push_back(JetVariable::p(i));
    }
    if (opt_.with_x) {
      for (int mu = 1; mu <= opt_.dim; ++mu) pool_.push_back(JetVariable::x(mu));
    }
    if (opt_.with_nu) pool_.push_back(JetVariable::nu());
    if (opt_.with_t) pool_.push_back(JetVariable::t());
  }

  std::mt19937& rng() { return rng_; }

  Rational coefficient() {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    int n = 0;
    while (n == 0) n = num(rng_);
    Rational q(n, den(rng_));
    q.canonicalize();
    return q;
  }

  Monomial monomial() {
    std::uniform_int_distribution<int> deg(0, opt_.max_degree);
    std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
    std::vector<Monomial::Factor> factors;
    const int d = deg(rng_);
    for (int k = 0; k < d; ++k) factors.emplace_back(pool_[pick(rng_)], 1);
    return Monomial(std::move(factors));
  }

  Expr expr() {
    std::uniform_int_distribution<int> terms(1, opt_.max_terms);
    Expr e;
    const int n = terms(rng_);
    for (int k = 0; k < n; ++k) e.add_term(monomial(), coefficient());
    return e;
  }

  // Nonzero expression.
  Expr nonzero_expr() {
    Expr e;
    while (e.is_zero()) e = expr();
    return e;
  }

 private:
  std::mt19937 rng_;
  RandomExprOptions opt_;
  std::vector<JetVariable> pool_;
};

}  // namespace nsjet::testkit
