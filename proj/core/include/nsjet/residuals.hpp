#pragma once

#include <string>
#include <vector>

#include "nsjet/expr.hpp"

namespace nsjet {

struct NamedResidual {
  std::string name;
  Expr value;
};

// Residuals by name; passes when every residual is the zero expression.
struct ResidualReport {
  std::vector<NamedResidual> entries;

  bool passed() const {
    for (const auto& e : entries) {
      if (!e.value.is_zero()) return false;
    }
    return true;
  }

  const Expr* find(const std::string& name) const {
    for (const auto& e : entries) {
      if (e.name == name) return &e.value;
    }
    return nullptr;
  }
};

}  // namespace nsjet
